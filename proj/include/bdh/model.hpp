#pragma once

// Birth-and-death chain on {0, ..., N} with birth rate (N - i) * nu and
// death rate i * mu at state i. States are 0-based everywhere.

#include <cstdint>
#include <vector>

namespace bdh {

using State = std::int64_t;

class ModelParams {
public:
    /// Rates given explicitly. rho = nu / mu is computed in long double and
    /// rounded once to double.
    static ModelParams from_rates(State N, double nu, double mu);

    /// Load ratio given directly; sets nu = rho, mu = 1 so rho is exact.
    static ModelParams from_rho(State N, double rho);

    State N() const noexcept { return N_; }
    double nu() const noexcept { return nu_; }
    double mu() const noexcept { return mu_; }
    double rho() const noexcept { return rho_; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    ModelParams(State N, double nu, double mu, double rho)
        : N_(N), nu_(nu), mu_(mu), rho_(rho) {}

    State N_;
    double nu_;
    double mu_;
    double rho_;
};

/// Validating constructor; throws ParameterError on N < 1 or a rate that is
/// not finite and positive.
ModelParams make_params(State N, double nu, double mu);

struct StationaryLaw {
    std::vector<double> probs;      // probs[k], k = 0..N
    std::vector<double> log_probs;  // finite even where probs[k] underflows
};

/// Binomial(N, rho / (1 + rho)) law, evaluated through log-binomials.
StationaryLaw stationary_pmf(const ModelParams& p);

/// Row i of the jump-chain matrix: probability of stepping to i + 1.
double jump_up_prob(const ModelParams& p, State i);

/// Probability of stepping to i - 1; computed directly, not as 1 - up.
double jump_down_prob(const ModelParams& p, State i);

/// Total jump rate out of state i, i * mu + (N - i) * nu.
double exit_rate(const ModelParams& p, State i);

}  // namespace bdh
