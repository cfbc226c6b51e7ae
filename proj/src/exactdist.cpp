#include "bdh/exactdist.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bdh/errors.hpp"
#include "bdh/kernels.hpp"
#include "bdh/logmath.hpp"

namespace bdh {
namespace {

void require_level(State N, State k) {
    if (k < 1 || k > N) {
        throw ParameterError("height level " + std::to_string(k) + " outside [1, " + std::to_string(N) + "]");
    }
}

}  // namespace

double HeightDistribution::survival(State k) const {
    require_level(N, k);
    return std::exp(log_survival[static_cast<std::size_t>(k - 1)]);
}

double HeightDistribution::cdf(State k) const {
    if (k < 1) return 0.0;
    if (k >= N) return 1.0;
    // P(H <= k) = 1 - P(H >= k+1); written via expm1 to keep the tail digits.
    return -std::expm1(log_survival[static_cast<std::size_t>(k)]);
}

std::vector<double> HeightDistribution::survival_values() const {
    std::vector<double> out(log_survival.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(log_survival[i]);
    return out;
}

std::vector<double> HeightDistribution::cdf_values() const {
    std::vector<double> out(static_cast<std::size_t>(N));
    for (State k = 1; k <= N; ++k) out[static_cast<std::size_t>(k - 1)] = cdf(k);
    return out;
}

double log_r_term(State n, double rho, State i) {
    if (n < 1) throw ParameterError("n must be >= 1, got " + std::to_string(n));
    if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("rho must be finite and > 0");
    if (i < 0 || i > n - 1) {
        throw ParameterError("r-term index " + std::to_string(i) + " outside [0, " + std::to_string(n - 1) + "]");
    }
    if (i == 0) return 0.0;
    return -static_cast<double>(i) * std::log(rho) - log_choose(n - 1, i);
}

double survival(const ModelParams& p, State k) {
    require_level(p.N(), k);
    double log_partial = 0.0;  // log r(0)
    for (State i = 1; i < k; ++i) log_partial = log_add_exp(log_partial, log_r_term(p.N(), p.rho(), i));
    return std::exp(-log_partial);
}

HeightDistribution height_distribution(const ModelParams& p) {
    const State N = p.N();
    const auto n = static_cast<std::size_t>(N);
    HeightDistribution d;
    d.N = N;
    d.rho = p.rho();
    d.log_survival.resize(n);
    d.pmf.resize(n);

    // log_r[i] for i = 0..N-1; log_partial after step i is log sum_{j<=i} r(j).
    std::vector<double> log_r(n);
    double log_partial = 0.0;
    log_r[0] = 0.0;
    d.log_survival[0] = 0.0;
    for (State i = 1; i < N; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        log_r[idx] = log_r_term(N, p.rho(), i);
        log_partial = log_add_exp(log_partial, log_r[idx]);
        d.log_survival[idx] = -log_partial;
    }

    // P(H = k) = S(k) - S(k+1) = r(k) S(k) S(k+1), free of cancellation.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        d.pmf[k] = std::exp(log_r[k + 1] + d.log_survival[k] + d.log_survival[k + 1]);
    }
    d.pmf[n - 1] = std::exp(d.log_survival[n - 1]);

    const Moments m = moments(d);
    d.mean = m.mean;
    d.variance = m.variance;
    return d;
}

Moments moments(const HeightDistribution& d) {
    const auto& k = kernels::active();
    const std::vector<double> surv = d.survival_values();
    const double mean = k.sum(surv);
    const double variance = k.centered_square_moment(d.pmf, 1.0, mean);
    return {mean, variance};
}

}  // namespace bdh
