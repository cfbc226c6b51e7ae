#pragma once

// First-passage ground truth for the height law.
//
// H_N >= k exactly when the jump chain started at 1 reaches k before 0, so
// P(H_N >= k) is the solution at state 1 of the hitting system
//
//   h[0] = 0,  h[k] = 1,  h[i] = p_i h[i+1] + q_i h[i-1]  (0 < i < k),
//
// with p_i, q_i the jump-chain step probabilities. This module depends only
// on the model and never on the closed-form distribution.

#include <cstdint>
#include <vector>

#include "bdh/model.hpp"

namespace bdh {

struct FirstPassageSystem {
    State k = 0;
    std::vector<double> up;    // [i] = p_i for i = 0..k (entries 0 and k unused)
    std::vector<double> down;  // [i] = q_i
    std::vector<double> h;     // [i] = P(hit k before 0 | start i), i = 0..k

    /// max over interior i of |h[i] - p_i h[i+1] - q_i h[i-1]|.
    double max_residual() const;
    bool strictly_increasing() const;
};

/// Forward elimination from state 1 upward, then back substitution.
FirstPassageSystem solve_first_passage(const ModelParams& p, State k);

/// h[1] of the system above; throws ParameterError unless 1 <= k <= N.
double first_passage_prob(const ModelParams& p, State k);

/// a[i] = P(reach i + 1 before 0 | start i) for i = 1..N-1 (a[0] unused, 0).
/// These are the forward-elimination coefficients of the hitting system;
/// P(H_N >= k) = a[1] a[2] ... a[k-1].
std::vector<double> ladder_probabilities(const ModelParams& p);

struct OracleOptions {
    State max_n = 2000;
};

/// survival[k-1] = first_passage_prob(p, k), k = 1..N; CapacityError above the cap.
std::vector<double> height_dist_oracle(const ModelParams& p, const OracleOptions& opts = {});

}  // namespace bdh
