#pragma once

// Monte Carlo excursion heights.
//
// Three samplers share one law:
//  - jump_chain: walk the embedded chain from state 1 until it hits 0 and
//    record the maximum (the definition of the height);
//  - full_ctmc: the same walk with exponential holding times, which also
//    yields the busy-period duration;
//  - ladder: climb level by level, continuing from m to m + 1 with the
//    probability a[m] of reaching m + 1 before 0 (see ladder_probabilities).
//
// The trajectory samplers need on the order of 2 (1 + rho)^(N - 1) jumps per
// excursion, so they are only usable for small N; the ladder sampler costs
// O(height) per sample for any N.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bdh/exactdist.hpp"
#include "bdh/model.hpp"
#include "bdh/philox.hpp"

namespace bdh {

enum class SampleMode { jump_chain, full_ctmc, ladder };

std::string to_string(SampleMode m);
/// Accepts "jump-chain", "full-ctmc", "ladder".
std::optional<SampleMode> parse_sample_mode(const std::string& s);

inline constexpr std::uint64_t kDefaultStepLimit = 10'000'000'000ULL;

/// Up-probabilities of the jump chain, table[i] for i = 0..N.
std::vector<double> jump_up_table(const ModelParams& p);

struct Excursion {
    State height = 0;
    double duration = 0.0;  // in units of 1 / mu; 0 for the jump-chain sampler
    std::uint64_t steps = 0;
};

/// Jump-chain walk from state 1 to 0. Throws CircuitBreakerError after
/// step_limit jumps.
Excursion sample_height(std::span<const double> up_table, SampleStream& rng,
                        std::uint64_t step_limit = kDefaultStepLimit);
State sample_height(const ModelParams& p, SampleStream& rng);

/// Walk with holding times; the rate out of state i is i + (N - i) rho in
/// units of mu.
Excursion sample_excursion_ctmc(const ModelParams& p, std::span<const double> up_table, SampleStream& rng,
                                std::uint64_t step_limit = kDefaultStepLimit);
Excursion sample_excursion_ctmc(const ModelParams& p, SampleStream& rng);

/// Level-by-level sampler over ladder probabilities a[1..N-1].
State sample_height_ladder(std::span<const double> ladder, SampleStream& rng);

/// Expected jumps per excursion of the embedded chain, as a natural log:
/// sum_j pi_j q_j / (pi_0 q_0) with q_j the exit rate.
double log_expected_excursion_steps(const ModelParams& p);

struct SimulationConfig {
    ModelParams params = ModelParams::from_rho(1, 1.0);
    std::uint64_t n_samples = 1;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::jump_chain;
    unsigned worker_count = 1;
    double delta = 0.01;
    std::uint64_t step_limit = kDefaultStepLimit;
};

struct SimulationSummary {
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::jump_chain;
    std::vector<std::uint64_t> counts;  // [k-1] = number of samples with height k
    std::vector<double> empirical_pmf;
    double mean = 0.0;
    double variance = 0.0;  // unbiased, 0 when n_samples == 1
    double sup_distance = 0.0;
    double delta = 0.01;
    double dkw_epsilon = 0.0;
    std::optional<double> mean_busy_duration;
    std::uint64_t total_steps = 0;

    bool dkw_pass() const { return sup_distance <= dkw_epsilon; }
};

/// sqrt(log(2 / delta) / (2 n)).
double dkw_epsilon(std::uint64_t n, double delta);

/// Empirical CDF from counts.
std::vector<double> empirical_cdf(std::span<const std::uint64_t> counts, std::uint64_t n);

/// sup_k |ecdf(k) - cdf(k)| over k = 1..N.
double sup_distance(std::span<const std::uint64_t> counts, std::uint64_t n, std::span<const double> cdf);

/// Sample i uses SampleStream(seed, mode tag, 0, i) regardless of which
/// worker draws it, so the output does not depend on worker_count. Workers
/// take contiguous index ranges and results merge in worker order.
SimulationSummary run_batch(const SimulationConfig& cfg);

/// As above with a precomputed exact distribution for the comparison.
SimulationSummary run_batch(const SimulationConfig& cfg, const HeightDistribution& exact);

}  // namespace bdh
