#pragma once

#include <optional>
#include <vector>

#include "bdh/asymptotics.hpp"

namespace bdh::cli {

struct VerifyOptions {
    std::vector<double> rhos{0.25, 0.5, 0.75, 1.0, 2.0};
    std::vector<State> Ns{1000, 10000, 100000, 1000000};
    OffsetRounding lemma2_rounding = OffsetRounding::floor;
    bool strict = false;
    std::optional<double> override_c3;  // test hook: replaces C3 in every check
    State oracle_cap = 2000;
    double oracle_tolerance = 1e-10;
    double stirling_band = 10.0;
};

struct VerifyResult {
    std::vector<BoundReport> checks;

    bool pass() const;
    std::vector<BoundReport> failures() const;
};

/// Per (rho, N): Lemma 2 pair and tail/concentration checks (rho < 1), the
/// mean sandwich, and the first-passage comparison up to the oracle cap.
/// Per rho < 1: the r(h_n)/sqrt(n) band over the large-N grid points.
VerifyResult run_verify(const VerifyOptions& opts);

}  // namespace bdh::cli
