#include "bdh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bdh/errors.hpp"

namespace bdh {
namespace {

void require_level(const ModelParams& p, State k) {
    if (k < 1 || k > p.N()) {
        throw ParameterError("target level " + std::to_string(k) + " outside [1, " + std::to_string(p.N()) + "]");
    }
}

// Eliminating h[i-1] = a[i-1] h[i] from equation i gives h[i] = a[i] h[i+1]
// with a[i] = p_i / (1 - q_i a[i-1]). The complement d[i] = 1 - a[i] obeys
// d[i] = q_i d[i-1] / (p_i + q_i d[i-1]), which avoids forming 1 - q a.
void eliminate(const ModelParams& p, State top, std::vector<double>& a) {
    a.assign(static_cast<std::size_t>(top) + 1, 0.0);
    double d_prev = 1.0;  // h[0] = 0 means a[0] = 0
    for (State i = 1; i <= top; ++i) {
        const double up = jump_up_prob(p, i);
        const double down = jump_down_prob(p, i);
        const double denom = up + down * d_prev;
        a[static_cast<std::size_t>(i)] = up / denom;
        d_prev = down * d_prev / denom;
    }
}

}  // namespace

double FirstPassageSystem::max_residual() const {
    double worst = 0.0;
    for (State i = 1; i < k; ++i) {
        const auto j = static_cast<std::size_t>(i);
        const double r = h[j] - up[j] * h[j + 1] - down[j] * h[j - 1];
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

bool FirstPassageSystem::strictly_increasing() const {
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (!(h[i] > h[i - 1])) return false;
    }
    return true;
}

FirstPassageSystem solve_first_passage(const ModelParams& p, State k) {
    require_level(p, k);
    FirstPassageSystem sys;
    sys.k = k;
    const auto n = static_cast<std::size_t>(k) + 1;
    sys.up.assign(n, 0.0);
    sys.down.assign(n, 0.0);
    for (State i = 1; i < k; ++i) {
        sys.up[static_cast<std::size_t>(i)] = jump_up_prob(p, i);
        sys.down[static_cast<std::size_t>(i)] = jump_down_prob(p, i);
    }
    std::vector<double> a;
    if (k > 1) eliminate(p, k - 1, a);
    sys.h.assign(n, 0.0);
    sys.h[n - 1] = 1.0;
    for (State i = k - 1; i >= 1; --i) {
        const auto j = static_cast<std::size_t>(i);
        sys.h[j] = a[j] * sys.h[j + 1];
    }
    return sys;
}

double first_passage_prob(const ModelParams& p, State k) {
    const FirstPassageSystem sys = solve_first_passage(p, k);
    return sys.h[1];
}

std::vector<double> ladder_probabilities(const ModelParams& p) {
    std::vector<double> a;
    if (p.N() > 1) {
        eliminate(p, p.N() - 1, a);
    } else {
        a.assign(1, 0.0);
    }
    return a;
}

std::vector<double> height_dist_oracle(const ModelParams& p, const OracleOptions& opts) {
    if (p.N() > opts.max_n) {
        throw CapacityError("first-passage oracle capped at N = " + std::to_string(opts.max_n) + ", requested " +
                            std::to_string(p.N()));
    }
    // One elimination sweep serves every target level: the coefficients a[i]
    // do not depend on k, and h[1] for target k is their product up to k - 1.
    const std::vector<double> a = ladder_probabilities(p);
    std::vector<double> surv(static_cast<std::size_t>(p.N()));
    double prod = 1.0;
    for (State k = 1; k <= p.N(); ++k) {
        if (k > 1) prod *= a[static_cast<std::size_t>(k - 1)];
        surv[static_cast<std::size_t>(k - 1)] = prod;
    }
    return surv;
}

}  // namespace bdh
