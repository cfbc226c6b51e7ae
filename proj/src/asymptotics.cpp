#include "bdh/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bdh/errors.hpp"

namespace bdh {
namespace {

constexpr double kBracketEps = 1e-15;
constexpr double kResidualTol = 1e-13;
constexpr double kIntegerGuard = 1e-9;

double xlogx(double x) { return (x == 0.0) ? 0.0 : x * std::log(x); }

void require_subcritical(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) {
        throw ParameterError("rho must lie in (0, 1), got " + std::to_string(rho));
    }
}

void require_positive(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw ParameterError("rho must be finite and > 0, got " + std::to_string(rho));
    }
}

std::vector<State> ceil_candidates(double x) {
    std::vector<State> c = integer_part_candidates(-x);
    for (auto& v : c) v = -v;
    std::reverse(c.begin(), c.end());
    return c;
}

std::vector<State> offset_candidates(double x, OffsetRounding rounding) {
    return rounding == OffsetRounding::floor ? integer_part_candidates(x) : ceil_candidates(x);
}

BoundReport inapplicable(std::string id, State n, double rho, std::string note) {
    BoundReport r;
    r.id = std::move(id);
    r.n = n;
    r.rho = rho;
    r.lhs = r.rhs = r.margin = std::numeric_limits<double>::quiet_NaN();
    r.status = BoundStatus::not_applicable;
    r.note = std::move(note);
    return r;
}

}  // namespace

double alpha_equation(double x, double rho) { return xlogx(x) + xlogx(1.0 - x) - x * std::log(rho); }

AlphaSolution solve_alpha(double rho) {
    require_subcritical(rho);
    AlphaSolution s;
    s.rho = rho;
    double lo = rho + kBracketEps;
    double hi = 1.0 - kBracketEps;
    double mid = lo;
    double g_mid = alpha_equation(lo, rho);
    // g(rho) = (1 - rho) log(1 - rho) < 0 and g(1) = -log rho > 0; g is convex.
    for (int it = 1; it <= 200; ++it) {
        mid = lo + 0.5 * (hi - lo);
        g_mid = alpha_equation(mid, rho);
        s.iterations = it;
        if (g_mid < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (std::fabs(g_mid) <= kResidualTol) break;
        if (std::nextafter(lo, 1.0) >= hi) break;
    }
    s.alpha = mid;
    s.residual = g_mid;
    s.bracket_lo = lo;
    s.bracket_hi = hi;
    return s;
}

double f_rho(double rho) {
    require_positive(rho);
    return rho >= 1.0 ? 1.0 : solve_alpha(rho).alpha;
}

double variance_limit(double rho) {
    const double f = f_rho(rho);
    return f * f / rho;
}

State BoundConstants::h(State n) const {
    return static_cast<State>(std::floor(alpha * static_cast<double>(n - 1)));
}

BoundConstants bound_constants(double rho) {
    const AlphaSolution s = solve_alpha(rho);
    BoundConstants c;
    c.rho = rho;
    c.alpha = s.alpha;
    c.C1 = 2.0 / (std::log(s.alpha) - std::log(rho * (1.0 - s.alpha)));
    c.C2 = 3.0 / (std::log(s.alpha) - std::log(rho));
    c.C3 = s.alpha * (3.0 + rho) / (rho * rho);
    return c;
}

std::vector<State> integer_part_candidates(double x) {
    const double f = std::floor(x);
    const auto base = static_cast<State>(f);
    if (x - f < kIntegerGuard) return {base - 1, base};
    if ((f + 1.0) - x < kIntegerGuard) return {base, base + 1};
    return {base};
}

std::string to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::pass:
            return "pass";
        case BoundStatus::fail:
            return "fail";
        case BoundStatus::not_applicable:
            return "not_applicable";
    }
    return "unknown";
}

Lemma2Report check_lemma2(State n, const BoundConstants& c, OffsetRounding rounding) {
    const double rho = c.rho;
    const double log_n = std::log(static_cast<double>(n));
    const char* suffix = rounding == OffsetRounding::floor ? "" : "(ceil)";
    Lemma2Report out;
    out.upper = inapplicable(std::string("lemma2.upper") + suffix, n, rho, "shifted index outside [0, n-1]");
    out.lower = inapplicable(std::string("lemma2.lower") + suffix, n, rho, "shifted index outside [0, n-1]");
    if (n < 2) return out;

    const auto hs = integer_part_candidates(c.alpha * static_cast<double>(n - 1));
    const auto ups = offset_candidates(c.C1 * log_n, rounding);
    const auto downs = offset_candidates(c.C2 * log_n, rounding);

    auto in_range = [n](State i) { return i >= 0 && i <= n - 1; };
    for (State h : hs) {
        if (!in_range(h)) continue;
        const double log_rh = log_r_term(n, rho, h);
        for (State off : ups) {
            if (!in_range(h + off)) continue;
            const double lhs = log_r_term(n, rho, h + off);
            const double rhs = log_rh + 2.0 * log_n;
            const double margin = lhs - rhs;
            if (out.upper.status == BoundStatus::not_applicable || margin > out.upper.margin) {
                out.upper.lhs = lhs;
                out.upper.rhs = rhs;
                out.upper.margin = margin;
                out.upper.status = margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
                out.upper.note = "h=" + std::to_string(h) + " offset=" + std::to_string(off);
            }
        }
        for (State off : downs) {
            if (!in_range(h - off)) continue;
            const double lhs = log_r_term(n, rho, h - off);
            const double rhs = log_rh - 3.0 * log_n;
            const double margin = rhs - lhs;
            if (out.lower.status == BoundStatus::not_applicable || margin > out.lower.margin) {
                out.lower.lhs = lhs;
                out.lower.rhs = rhs;
                out.lower.margin = margin;
                out.lower.status = margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
                out.lower.note = "h=" + std::to_string(h) + " offset=" + std::to_string(off);
            }
        }
    }
    return out;
}

Lemma2Report check_lemma2(State n, double rho, OffsetRounding rounding) {
    return check_lemma2(n, bound_constants(rho), rounding);
}

BoundReport check_lemma3(State N, double rho, double mean, const Lemma3Options& opts) {
    require_positive(rho);
    BoundReport r;
    r.id = "lemma3";
    r.n = N;
    r.rho = rho;
    r.lhs = mean;
    r.asserted = opts.strict || N >= kLargeEnoughN;
    if (!r.asserted) r.note = "N below large-N threshold; reported only";

    if (rho >= 1.0) {
        const double lo = static_cast<double>(N) - 4.0;
        const double hi = static_cast<double>(N);
        const double to_lo = mean - lo;
        const double to_hi = hi - mean;
        r.margin = std::min(to_lo, to_hi);
        r.rhs = to_lo <= to_hi ? lo : hi;
        r.status = r.margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
        return r;
    }

    const BoundConstants c = opts.constants ? *opts.constants : bound_constants(rho);
    const double log_N = std::log(static_cast<double>(N));
    bool first = true;
    for (State a : integer_part_candidates(c.alpha * static_cast<double>(N))) {
        for (State off : integer_part_candidates(c.C2 * log_N)) {
            const double lo = static_cast<double>(a) - static_cast<double>(off) - c.C3;
            const double hi = static_cast<double>(a) + 1.0;
            const double to_lo = mean - lo;
            const double to_hi = hi - mean;
            const double margin = std::min(to_lo, to_hi);
            if (first || margin > r.margin) {
                first = false;
                r.margin = margin;
                r.rhs = to_lo <= to_hi ? lo : hi;
            }
        }
    }
    r.status = r.margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
    return r;
}

BoundReport check_tail_bound(const HeightDistribution& d, const BoundConstants& c, State k) {
    const State h = c.h(d.N);
    const std::string id = "tail.k" + std::to_string(k);
    if (k < 1 || h < 0 || h + k > d.N) return inapplicable(id, d.N, d.rho, "h_N + k outside [1, N]");
    BoundReport r;
    r.id = id;
    r.n = d.N;
    r.rho = d.rho;
    r.lhs = d.log_survival[static_cast<std::size_t>(h + k - 1)];
    r.rhs = -std::log(static_cast<double>(k)) - log_r_term(d.N, d.rho, h);
    r.margin = r.rhs - r.lhs;
    r.status = r.margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
    return r;
}

ConcentrationWindow concentration_window(const HeightDistribution& d, const BoundConstants& c) {
    const State N = d.N;
    const double log_N = std::log(static_cast<double>(N));
    const State h = c.h(N);
    ConcentrationWindow w;
    w.lo = std::max<State>(1, h - static_cast<State>(std::ceil(c.C2 * log_N)) - static_cast<State>(std::ceil(c.C3)));
    w.hi = std::min<State>(N, h + static_cast<State>(std::ceil(c.C1 * log_N)));
    if (w.lo > w.hi) {
        w.mass = 0.0;
    } else {
        const double upper = w.hi < N ? d.survival(w.hi + 1) : 0.0;
        w.mass = d.survival(w.lo) - upper;
    }
    const double rho = d.rho;
    w.bound = 1.0 - 2.0 * (3.0 + rho) / (static_cast<double>(N - 1) * rho * rho) -
              2.0 * std::exp(-log_r_term(N, rho, std::clamp<State>(h, 0, N - 1)));
    return w;
}

BoundReport check_concentration(const HeightDistribution& d, const BoundConstants& c) {
    if (d.N < 2) return inapplicable("concentration", d.N, d.rho, "N < 2");
    const ConcentrationWindow w = concentration_window(d, c);
    BoundReport r;
    r.id = "concentration";
    r.n = d.N;
    r.rho = d.rho;
    r.lhs = w.mass;
    r.rhs = w.bound;
    r.margin = w.mass - w.bound;
    r.status = r.margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
    r.note = "window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]";
    return r;
}

double stirling_ratio(State n, double rho) {
    if (n < 2) throw ParameterError("stirling_ratio needs n >= 2");
    const BoundConstants c = bound_constants(rho);
    const State h = std::clamp<State>(c.h(n), 0, n - 1);
    return std::exp(log_r_term(n, rho, h) - 0.5 * std::log(static_cast<double>(n)));
}

std::vector<ConvergenceRow> convergence_table(double rho, std::span<const State> Ns) {
    require_positive(rho);
    if (Ns.empty()) throw ParameterError("convergence table needs at least one N");
    for (std::size_t i = 1; i < Ns.size(); ++i) {
        if (Ns[i] <= Ns[i - 1]) throw ParameterError("N list must be strictly ascending");
    }
    const double f = f_rho(rho);
    const double lim = f * f / rho;
    std::vector<ConvergenceRow> rows;
    rows.reserve(Ns.size());
    for (State N : Ns) {
        const HeightDistribution d = height_distribution(ModelParams::from_rho(N, rho));
        ConvergenceRow row;
        row.N = N;
        row.mean_over_n = d.mean / static_cast<double>(N);
        row.var_over_n = d.variance / static_cast<double>(N);
        row.f = f;
        row.var_limit = lim;
        row.mean_gap = std::fabs(row.mean_over_n - f);
        row.var_gap = std::fabs(row.var_over_n - lim);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bdh
