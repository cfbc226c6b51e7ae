#include "bdh/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "bdh/errors.hpp"
#include "bdh/kernels.hpp"
#include "bdh/logmath.hpp"
#include "bdh/oracle.hpp"

namespace bdh {
namespace {

std::uint64_t mode_tag(SampleMode m) {
    switch (m) {
        case SampleMode::jump_chain:
            return 1;
        case SampleMode::full_ctmc:
            return 2;
        case SampleMode::ladder:
            return 3;
    }
    return 0;
}

struct WorkerResult {
    std::vector<std::uint64_t> counts;
    std::uint64_t completed = 0;
    std::uint64_t steps = 0;
    std::exception_ptr error;
};

void validate(const SimulationConfig& cfg) {
    if (cfg.n_samples < 1) throw ParameterError("n_samples must be >= 1");
    if (cfg.worker_count < 1) throw ParameterError("worker_count must be >= 1");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
}

}  // namespace

std::string to_string(SampleMode m) {
    switch (m) {
        case SampleMode::jump_chain:
            return "jump-chain";
        case SampleMode::full_ctmc:
            return "full-ctmc";
        case SampleMode::ladder:
            return "ladder";
    }
    return "unknown";
}

std::optional<SampleMode> parse_sample_mode(const std::string& s) {
    if (s == "jump-chain") return SampleMode::jump_chain;
    if (s == "full-ctmc") return SampleMode::full_ctmc;
    if (s == "ladder") return SampleMode::ladder;
    return std::nullopt;
}

std::vector<double> jump_up_table(const ModelParams& p) {
    std::vector<double> t(static_cast<std::size_t>(p.N()) + 1);
    for (State i = 0; i <= p.N(); ++i) t[static_cast<std::size_t>(i)] = jump_up_prob(p, i);
    return t;
}

Excursion sample_height(std::span<const double> up_table, SampleStream& rng, std::uint64_t step_limit) {
    Excursion e;
    State state = 1;
    State top = 1;
    while (state != 0) {
        if (++e.steps > step_limit) {
            throw CircuitBreakerError("excursion exceeded " + std::to_string(step_limit) + " jumps", 0);
        }
        if (rng.uniform() < up_table[static_cast<std::size_t>(state)]) {
            ++state;
            top = std::max(top, state);
        } else {
            --state;
        }
    }
    e.height = top;
    return e;
}

State sample_height(const ModelParams& p, SampleStream& rng) {
    const std::vector<double> table = jump_up_table(p);
    return sample_height(table, rng).height;
}

Excursion sample_excursion_ctmc(const ModelParams& p, std::span<const double> up_table, SampleStream& rng,
                                std::uint64_t step_limit) {
    Excursion e;
    const double N = static_cast<double>(p.N());
    State state = 1;
    State top = 1;
    while (state != 0) {
        if (++e.steps > step_limit) {
            throw CircuitBreakerError("excursion exceeded " + std::to_string(step_limit) + " jumps", 0);
        }
        const double i = static_cast<double>(state);
        const double rate = i + (N - i) * p.rho();
        e.duration += -std::log1p(-rng.uniform()) / rate;
        if (rng.uniform() < up_table[static_cast<std::size_t>(state)]) {
            ++state;
            top = std::max(top, state);
        } else {
            --state;
        }
    }
    e.height = top;
    return e;
}

Excursion sample_excursion_ctmc(const ModelParams& p, SampleStream& rng) {
    const std::vector<double> table = jump_up_table(p);
    return sample_excursion_ctmc(p, table, rng);
}

State sample_height_ladder(std::span<const double> ladder, SampleStream& rng) {
    const auto top = static_cast<State>(ladder.size());  // ladder holds a[0..N-1]
    State m = 1;
    while (m < top && rng.uniform() < ladder[static_cast<std::size_t>(m)]) ++m;
    return m;
}

double log_expected_excursion_steps(const ModelParams& p) {
    const StationaryLaw law = stationary_pmf(p);
    double log_flow = -std::numeric_limits<double>::infinity();
    for (State j = 0; j <= p.N(); ++j) {
        log_flow = log_add_exp(log_flow, law.log_probs[static_cast<std::size_t>(j)] + std::log(exit_rate(p, j)));
    }
    return log_flow - (law.log_probs[0] + std::log(exit_rate(p, 0)));
}

double dkw_epsilon(std::uint64_t n, double delta) {
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

std::vector<double> empirical_cdf(std::span<const std::uint64_t> counts, std::uint64_t n) {
    std::vector<double> out(counts.size());
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        running += counts[i];
        out[i] = static_cast<double>(running) / static_cast<double>(n);
    }
    return out;
}

double sup_distance(std::span<const std::uint64_t> counts, std::uint64_t n, std::span<const double> cdf) {
    const std::vector<double> ecdf = empirical_cdf(counts, n);
    return kernels::active().max_abs_diff(ecdf, cdf.first(ecdf.size()));
}

SimulationSummary run_batch(const SimulationConfig& cfg) {
    validate(cfg);
    return run_batch(cfg, height_distribution(cfg.params));
}

SimulationSummary run_batch(const SimulationConfig& cfg, const HeightDistribution& exact) {
    validate(cfg);
    const ModelParams& p = cfg.params;
    const auto N = static_cast<std::size_t>(p.N());
    const std::uint64_t tag = mode_tag(cfg.mode);
    const bool want_duration = cfg.mode == SampleMode::full_ctmc;

    std::vector<double> table;
    if (cfg.mode == SampleMode::ladder) {
        table = ladder_probabilities(p);
    } else {
        table = jump_up_table(p);
    }
    std::vector<double> durations(want_duration ? cfg.n_samples : 0, 0.0);

    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(cfg.worker_count, cfg.n_samples));
    std::vector<WorkerResult> results(workers);

    auto work = [&](unsigned w) {
        WorkerResult& out = results[w];
        out.counts.assign(N, 0);
        const std::uint64_t begin = cfg.n_samples * w / workers;
        const std::uint64_t end = cfg.n_samples * (w + 1) / workers;
        try {
            for (std::uint64_t s = begin; s < end; ++s) {
                SampleStream rng(cfg.seed, tag, 0, s);
                State height = 0;
                switch (cfg.mode) {
                    case SampleMode::jump_chain: {
                        const Excursion e = sample_height(table, rng, cfg.step_limit);
                        height = e.height;
                        out.steps += e.steps;
                        break;
                    }
                    case SampleMode::full_ctmc: {
                        const Excursion e = sample_excursion_ctmc(p, table, rng, cfg.step_limit);
                        height = e.height;
                        out.steps += e.steps;
                        durations[s] = e.duration;
                        break;
                    }
                    case SampleMode::ladder:
                        height = sample_height_ladder(table, rng);
                        out.steps += static_cast<std::uint64_t>(height);
                        break;
                }
                ++out.counts[static_cast<std::size_t>(height - 1)];
                ++out.completed;
            }
        } catch (...) {
            out.error = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    std::uint64_t completed = 0;
    for (const auto& r : results) completed += r.completed;
    for (const auto& r : results) {
        if (!r.error) continue;
        try {
            std::rethrow_exception(r.error);
        } catch (const CircuitBreakerError& e) {
            throw CircuitBreakerError(std::string(e.what()) + "; " + std::to_string(completed) + " of " +
                                          std::to_string(cfg.n_samples) + " samples completed",
                                      completed);
        }
    }

    SimulationSummary sum;
    sum.n_samples = cfg.n_samples;
    sum.seed = cfg.seed;
    sum.mode = cfg.mode;
    sum.delta = cfg.delta;
    sum.counts.assign(N, 0);
    for (const auto& r : results) {
        for (std::size_t k = 0; k < N; ++k) sum.counts[k] += r.counts[k];
        sum.total_steps += r.steps;
    }

    const double n = static_cast<double>(cfg.n_samples);
    sum.empirical_pmf.resize(N);
    unsigned __int128 s1 = 0;
    unsigned __int128 s2 = 0;
    for (std::size_t k = 0; k < N; ++k) {
        sum.empirical_pmf[k] = static_cast<double>(sum.counts[k]) / n;
        const unsigned __int128 h = k + 1;
        s1 += h * sum.counts[k];
        s2 += h * h * sum.counts[k];
    }
    sum.mean = static_cast<double>(static_cast<long double>(s1) / static_cast<long double>(cfg.n_samples));
    if (cfg.n_samples > 1) {
        const unsigned __int128 nn = cfg.n_samples;
        const unsigned __int128 num = nn * s2 - s1 * s1;  // n^2 times the population variance
        sum.variance = static_cast<double>(static_cast<long double>(num) /
                                           (static_cast<long double>(cfg.n_samples) *
                                            static_cast<long double>(cfg.n_samples - 1)));
    }
    const std::vector<double> cdf = exact.cdf_values();
    sum.sup_distance = sup_distance(sum.counts, cfg.n_samples, cdf);
    sum.dkw_epsilon = dkw_epsilon(cfg.n_samples, cfg.delta);
    if (want_duration) sum.mean_busy_duration = kernels::active().sum(durations) / n;
    return sum;
}

}  // namespace bdh
