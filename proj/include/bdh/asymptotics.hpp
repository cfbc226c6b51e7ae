#pragma once

// Large-N behaviour of the excursion height: the growth constant alpha(rho),
// the limits of E(H_N)/N and Var(H_N)/N, and numerical checks of the finite-N
// inequalities that pin H_N near h_N = [alpha (N - 1)].

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bdh/exactdist.hpp"
#include "bdh/model.hpp"

namespace bdh {

struct AlphaSolution {
    double rho = 0.0;
    double alpha = 0.0;
    double residual = 0.0;  // alpha_equation(alpha, rho)
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// g(x) = x log x + (1 - x) log(1 - x) - x log rho, with 0 log 0 = 0.
double alpha_equation(double x, double rho);

/// Root of g in (rho, 1) by bisection until |g| <= 1e-13. Requires 0 < rho < 1.
AlphaSolution solve_alpha(double rho);

/// alpha(rho) for rho < 1, exactly 1 for rho >= 1.
double f_rho(double rho);

/// f(rho)^2 / rho, the limit of Var(H_N) / N.
double variance_limit(double rho);

struct BoundConstants {
    double rho = 0.0;
    double alpha = 0.0;
    double C1 = 0.0;  // 2 / (log alpha - log(rho (1 - alpha)))
    double C2 = 0.0;  // 3 / (log alpha - log rho)
    double C3 = 0.0;  // alpha (3 + rho) / rho^2

    /// h(n) = [alpha (n - 1)].
    State h(State n) const;
};

/// Requires 0 < rho < 1.
BoundConstants bound_constants(double rho);

/// Integer part [x] with a guard band: when x lies within 1e-9 of an integer
/// both neighbouring candidates are returned (smallest first).
std::vector<State> integer_part_candidates(double x);

enum class BoundStatus { pass, fail, not_applicable };

std::string to_string(BoundStatus s);

struct BoundReport {
    std::string id;
    State n = 0;
    double rho = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // >= 0 exactly when the stated direction holds
    BoundStatus status = BoundStatus::not_applicable;
    bool asserted = true;  // false: reported for information only
    std::string note;

    bool failed() const { return asserted && status == BoundStatus::fail; }
};

/// How the logarithmic offsets [C1 log n], [C2 log n] are rounded.
/// `floor` is the integer part as stated; `ceil` is offered as a diagnostic.
enum class OffsetRounding { floor, ceil };

struct Lemma2Report {
    BoundReport upper;  // r(h_n + [C1 log n]) >= r(h_n) n^2
    BoundReport lower;  // r(h_n - [C2 log n]) <= r(h_n) n^-3
};

/// Both inequalities in the log domain; inapplicable when the shifted index
/// leaves [0, n - 1]. lhs = log r(shifted), rhs = log r(h_n) +/- k log n.
Lemma2Report check_lemma2(State n, const BoundConstants& c, OffsetRounding rounding = OffsetRounding::floor);
Lemma2Report check_lemma2(State n, double rho, OffsetRounding rounding = OffsetRounding::floor);

/// Threshold from which "N large enough" statements are asserted.
inline constexpr State kLargeEnoughN = 1000;

struct Lemma3Options {
    bool strict = false;                       // assert below kLargeEnoughN too
    std::optional<BoundConstants> constants;   // override (rho < 1 only)
};

/// Mean sandwich: [alpha N] - [C2 log N] - C3 <= mean <= [alpha N] + 1 for
/// rho < 1, N - 4 <= mean <= N for rho >= 1. lhs = mean, rhs = the nearer
/// bound, margin = distance to the nearer bound (negative outside).
BoundReport check_lemma3(State N, double rho, double mean, const Lemma3Options& opts = {});

/// P(H_N >= h_N + k) <= 1 / (k r(h_N)), compared in logs. rho < 1.
BoundReport check_tail_bound(const HeightDistribution& d, const BoundConstants& c, State k);

/// Mass of [h_N - ceil(C2 log N) - ceil(C3), h_N + ceil(C1 log N)] against
/// 1 - 2 (3 + rho) / ((N - 1) rho^2) - 2 / r(h_N). rho < 1.
struct ConcentrationWindow {
    State lo = 0;
    State hi = 0;
    double mass = 0.0;
    double bound = 0.0;
};
ConcentrationWindow concentration_window(const HeightDistribution& d, const BoundConstants& c);
BoundReport check_concentration(const HeightDistribution& d, const BoundConstants& c);

/// r(h_n) / sqrt(n), evaluated in logs.
double stirling_ratio(State n, double rho);

struct ConvergenceRow {
    State N = 0;
    double mean_over_n = 0.0;
    double var_over_n = 0.0;
    double f = 0.0;
    double var_limit = 0.0;
    double mean_gap = 0.0;  // |mean/N - f|
    double var_gap = 0.0;   // |Var/N - f^2/rho|
};

/// Ns must be nonempty and strictly ascending.
std::vector<ConvergenceRow> convergence_table(double rho, std::span<const State> Ns);

}  // namespace bdh
