#pragma once

// Closed-form law of the excursion height H_N.
//
//   P(H_N >= k) = 1 / sum_{i=0}^{k-1} r(i),   r(i) = rho^{-i} / C(N-1, i)
//
// Vectors are indexed by height value minus one: entry [k-1] describes
// height k, for k = 1..N.

#include <vector>

#include "bdh/model.hpp"

namespace bdh {

struct HeightDistribution {
    State N = 0;
    double rho = 0.0;
    std::vector<double> log_survival;  // [k-1] = log P(H_N >= k)
    std::vector<double> pmf;           // [k-1] = P(H_N = k)
    double mean = 0.0;
    double variance = 0.0;

    double survival(State k) const;
    /// P(H_N <= k); 0 for k < 1, 1 for k >= N.
    double cdf(State k) const;
    std::vector<double> survival_values() const;
    std::vector<double> cdf_values() const;
};

/// log r_{rho,n}(i) = -i log rho - log C(n-1, i), for 0 <= i <= n-1.
double log_r_term(State n, double rho, State i);

/// P(H_N >= k) by a running log-sum-exp over r(0..k-1). O(k).
double survival(const ModelParams& p, State k);

/// Full distribution in one forward sweep, O(N).
HeightDistribution height_distribution(const ModelParams& p);

struct Moments {
    double mean;
    double variance;
};

/// mean = sum_k P(H >= k); variance = sum_k (k - mean)^2 P(H = k).
Moments moments(const HeightDistribution& d);

}  // namespace bdh
