#pragma once

// Exact-arithmetic twin of the closed-form height law, for rational rho.
// Serves as ground truth for the floating-point path at small N.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace bdh {

struct RationalHeightDistribution {
    std::vector<mpq_class> survival;  // [k-1] = P(H_N >= k)
    std::vector<mpq_class> pmf;       // [k-1] = P(H_N = k)
    mpq_class mean;
    mpq_class variance;
};

struct RationalOptions {
    std::int64_t max_n = 500;
    /// Abort once any partial-sum numerator or denominator exceeds this size.
    std::size_t max_bits = 4'000'000;
};

/// Throws ParameterError for N < 1 or nonpositive rho parts, CapacityError
/// when N exceeds the cap or the operands outgrow max_bits.
RationalHeightDistribution exact_rational_distribution(std::int64_t N, std::int64_t rho_num,
                                                       std::int64_t rho_den,
                                                       const RationalOptions& opts = {});

}  // namespace bdh
