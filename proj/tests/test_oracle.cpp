#include <doctest.h>

#include <cmath>
#include <random>

#include "bdh/errors.hpp"
#include "bdh/exactdist.hpp"
#include "bdh/kernels.hpp"
#include "bdh/oracle.hpp"
#include "test_support.hpp"

using namespace bdh;

TEST_CASE("first-passage examples") {
    const auto p = ModelParams::from_rho(6, 0.4);
    CHECK(first_passage_prob(p, 1) == 1.0);
    CHECK(first_passage_prob(ModelParams::from_rho(2, 1.0), 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(first_passage_prob(p, 0), ParameterError);
    CHECK_THROWS_AS(first_passage_prob(p, 7), ParameterError);
}

TEST_CASE("oracle survival vectors") {
    const auto one = height_dist_oracle(ModelParams::from_rho(1, 2.0));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 1.0);
    const auto three = height_dist_oracle(ModelParams::from_rho(3, 1.0));
    CHECK(std::fabs(three[0] - 1.0) <= 1e-12);
    CHECK(std::fabs(three[1] - 2.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(three[2] - 2.0 / 5.0) <= 1e-12);
    CHECK_THROWS_AS(height_dist_oracle(ModelParams::from_rho(2001, 1.0)), CapacityError);
    CHECK_NOTHROW(height_dist_oracle(ModelParams::from_rho(3000, 1.0), OracleOptions{3000}));
}

TEST_CASE("solved systems satisfy the hitting equations and increase") {
    for (double rho : {0.1, 0.5, 1.0, 3.0}) {
        for (State N : {2, 10, 60}) {
            const auto p = ModelParams::from_rho(N, rho);
            for (State k = 1; k <= N; ++k) {
                const auto sys = solve_first_passage(p, k);
                CHECK(sys.h[0] == 0.0);
                CHECK(sys.h[static_cast<std::size_t>(k)] == 1.0);
                CHECK(sys.max_residual() <= 1e-12);
                // Near level k the values round to 1, so strictness is only visible for small N.
                if (N <= 10) CHECK(sys.strictly_increasing());
                for (std::size_t i = 1; i < sys.h.size(); ++i) CHECK(sys.h[i] >= sys.h[i - 1]);
                CHECK(first_passage_prob(p, k) == sys.h[1]);
            }
        }
    }
}

TEST_CASE("batched oracle equals per-level solves") {
    const auto p = ModelParams::from_rho(80, 0.7);
    const auto batch = height_dist_oracle(p);
    for (State k = 1; k <= 80; ++k) {
        CHECK(testing::rel_err(batch[static_cast<std::size_t>(k - 1)], first_passage_prob(p, k)) <= 1e-13);
    }
}

TEST_CASE("ladder probabilities match exact hitting probabilities") {
    // a[i] = S(i+1) / S(i) for the exact law.
    for (long N : {2L, 5L, 8L}) {
        const auto fp = testing::exact_first_passage(N, 2, 3);
        const auto a = ladder_probabilities(ModelParams::from_rho(N, 2.0 / 3.0));
        for (long i = 1; i < N; ++i) {
            const mpq_class ratio = fp[i] / fp[i - 1];
            CHECK(testing::rel_err(a[i], ratio.get_d()) <= 1e-14);
        }
    }
}

TEST_CASE("randomized cross-check against the closed form") {
    std::mt19937_64 gen(31);
    std::uniform_int_distribution<State> n_dist(1, 100);
    std::uniform_real_distribution<double> rho_dist(1e-3, 3.0);
    for (int t = 0; t < 300; ++t) {
        const auto p = ModelParams::from_rho(n_dist(gen), rho_dist(gen));
        const auto fp = height_dist_oracle(p);
        const auto d = height_distribution(p);
        CHECK(kernels::active().max_abs_diff(fp, d.survival_values()) <= 1e-10);
    }
}

TEST_CASE("oracle and closed form agree for all N <= 200 on the rho grid") {
    for (double rho : {0.1, 0.25, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0}) {
        double worst = 0.0;
        for (State N = 1; N <= 200; ++N) {
            const auto p = ModelParams::from_rho(N, rho);
            worst = std::max(worst, kernels::active().max_abs_diff(height_dist_oracle(p),
                                                                   height_distribution(p).survival_values()));
        }
        CHECK(worst <= 1e-10);
    }
}
