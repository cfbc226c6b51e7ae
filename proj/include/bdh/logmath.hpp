#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace bdh {

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
inline double log_add_exp(double a, double b) noexcept {
    if (a < b) {
        const double t = a;
        a = b;
        b = t;
    }
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

/// log C(n, k) for 0 <= k <= n.
///
/// Exact integer binomials are used while they fit in 64 bits (n <= 66).
/// Beyond that the three log-factorials are expanded as Stirling's series
/// with the remainder terms kept explicitly, so the large n log n parts
/// cancel analytically instead of in floating point.
double log_choose(std::int64_t n, std::int64_t k);

/// lgamma(n + 1) - [(n + 1/2) log n - n + log sqrt(2 pi)], n >= 1.
double stirling_remainder(std::int64_t n);

}  // namespace bdh
