#include "bdh/model.hpp"

#include <cmath>
#include <string>

#include "bdh/errors.hpp"
#include "bdh/logmath.hpp"

namespace bdh {
namespace {

void require_positive_rate(double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw ParameterError(std::string(name) + " must be finite and > 0, got " +
                             std::to_string(v));
    }
}

void require_states(State N) {
    if (N < 1) throw ParameterError("N must be >= 1, got " + std::to_string(N));
}

void require_state(const ModelParams& p, State i) {
    if (i < 0 || i > p.N()) {
        throw ParameterError("state " + std::to_string(i) + " outside [0, " +
                             std::to_string(p.N()) + "]");
    }
}

}  // namespace

ModelParams ModelParams::from_rates(State N, double nu, double mu) {
    require_states(N);
    require_positive_rate(nu, "nu");
    require_positive_rate(mu, "mu");
    const long double ratio = static_cast<long double>(nu) / static_cast<long double>(mu);
    const double rho = static_cast<double>(ratio);
    require_positive_rate(rho, "rho");
    return ModelParams(N, nu, mu, rho);
}

ModelParams ModelParams::from_rho(State N, double rho) {
    require_states(N);
    require_positive_rate(rho, "rho");
    return ModelParams(N, rho, 1.0, rho);
}

ModelParams make_params(State N, double nu, double mu) { return ModelParams::from_rates(N, nu, mu); }

StationaryLaw stationary_pmf(const ModelParams& p) {
    const State N = p.N();
    const double log_rho = std::log(p.rho());
    const double log_norm = static_cast<double>(N) * std::log1p(p.rho());
    StationaryLaw law;
    law.probs.resize(static_cast<std::size_t>(N) + 1);
    law.log_probs.resize(static_cast<std::size_t>(N) + 1);
    for (State k = 0; k <= N; ++k) {
        const double lp = log_choose(N, k) + static_cast<double>(k) * log_rho - log_norm;
        law.log_probs[static_cast<std::size_t>(k)] = lp;
        law.probs[static_cast<std::size_t>(k)] = std::exp(lp);
    }
    return law;
}

double jump_up_prob(const ModelParams& p, State i) {
    require_state(p, i);
    if (i == 0) return 1.0;
    if (i == p.N()) return 0.0;
    const double births = static_cast<double>(p.N() - i) * p.rho();
    return births / (static_cast<double>(i) + births);
}

double jump_down_prob(const ModelParams& p, State i) {
    require_state(p, i);
    if (i == 0) return 0.0;
    if (i == p.N()) return 1.0;
    const double births = static_cast<double>(p.N() - i) * p.rho();
    const double deaths = static_cast<double>(i);
    return deaths / (deaths + births);
}

double exit_rate(const ModelParams& p, State i) {
    require_state(p, i);
    return static_cast<double>(i) * p.mu() + static_cast<double>(p.N() - i) * p.nu();
}

}  // namespace bdh
