#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bdh/kernels.hpp"
#include "bdh/oracle.hpp"

namespace bdh::cli {
namespace {

BoundReport oracle_check(const HeightDistribution& d, const ModelParams& p, const VerifyOptions& opts) {
    BoundReport r;
    r.id = "oracle";
    r.n = d.N;
    r.rho = d.rho;
    r.rhs = opts.oracle_tolerance;
    if (d.N > opts.oracle_cap) {
        r.lhs = r.margin = std::numeric_limits<double>::quiet_NaN();
        r.status = BoundStatus::not_applicable;
        r.note = "N above oracle cap";
        return r;
    }
    const auto fp = height_dist_oracle(p, OracleOptions{opts.oracle_cap});
    r.lhs = kernels::active().max_abs_diff(fp, d.survival_values());
    r.margin = r.rhs - r.lhs;
    r.status = r.margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
    r.note = "sup |first passage - closed form|";
    return r;
}

BoundReport stirling_band(double rho, const VerifyOptions& opts) {
    BoundReport r;
    r.id = "stirling.band";
    r.rho = rho;
    r.rhs = opts.stirling_band;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    int used = 0;
    for (State n : opts.Ns) {
        if (n < 2 || (!opts.strict && n < kLargeEnoughN)) continue;
        const double s = stirling_ratio(n, rho);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        r.n = std::max(r.n, n);
        ++used;
    }
    if (used < 2) {
        r.lhs = r.margin = std::numeric_limits<double>::quiet_NaN();
        r.status = BoundStatus::not_applicable;
        r.note = "fewer than two grid points";
        return r;
    }
    r.lhs = hi / lo;
    r.margin = r.rhs - r.lhs;
    r.status = r.margin >= 0.0 ? BoundStatus::pass : BoundStatus::fail;
    r.note = "max/min of r(h_n)/sqrt(n)";
    return r;
}

}  // namespace

bool VerifyResult::pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const BoundReport& r) { return r.failed(); });
}

std::vector<BoundReport> VerifyResult::failures() const {
    std::vector<BoundReport> out;
    for (const auto& r : checks) {
        if (r.failed()) out.push_back(r);
    }
    return out;
}

VerifyResult run_verify(const VerifyOptions& opts) {
    VerifyResult res;
    for (double rho : opts.rhos) {
        std::optional<BoundConstants> constants;
        if (rho < 1.0) {
            constants = bound_constants(rho);
            if (opts.override_c3) constants->C3 = *opts.override_c3;
        }
        for (State N : opts.Ns) {
            const ModelParams p = ModelParams::from_rho(N, rho);
            const HeightDistribution d = height_distribution(p);
            const bool large = opts.strict || N >= kLargeEnoughN;

            if (constants) {
                const Lemma2Report l2 = check_lemma2(N, *constants, opts.lemma2_rounding);
                res.checks.push_back(l2.upper);
                res.checks.push_back(l2.lower);
            }

            Lemma3Options l3;
            l3.strict = opts.strict;
            l3.constants = constants;
            res.checks.push_back(check_lemma3(N, rho, d.mean, l3));

            if (constants) {
                for (State k : {1, 2, 5, 10}) res.checks.push_back(check_tail_bound(d, *constants, k));
                BoundReport conc = check_concentration(d, *constants);
                conc.asserted = large;
                res.checks.push_back(conc);
            }
            res.checks.push_back(oracle_check(d, p, opts));
        }
        if (rho < 1.0) res.checks.push_back(stirling_band(rho, opts));
    }
    return res;
}

}  // namespace bdh::cli
