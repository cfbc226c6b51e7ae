#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bdh/errors.hpp"
#include "bdh/model.hpp"
#include "test_support.hpp"

using namespace bdh;

TEST_CASE("make_params validates and derives rho") {
    CHECK(make_params(2, 1.0, 1.0).rho() == 1.0);
    CHECK(make_params(10, 1.0, 2.0).rho() == 0.5);
    CHECK_THROWS_AS(make_params(0, 1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(make_params(3, 0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(make_params(3, 1.0, -2.0), ParameterError);
    CHECK_THROWS_AS(make_params(3, NAN, 1.0), ParameterError);
    CHECK_THROWS_AS(make_params(3, 1.0, INFINITY), ParameterError);
    CHECK_THROWS_AS(ModelParams::from_rho(5, 0.0), ParameterError);
}

TEST_CASE("from_rho stores rho exactly with unit death rate") {
    const auto p = ModelParams::from_rho(7, 0.3);
    CHECK(p.rho() == 0.3);
    CHECK(p.nu() == 0.3);
    CHECK(p.mu() == 1.0);
}

TEST_CASE("rates given as nu, mu round rho once") {
    const auto p = make_params(4, 1.0, 3.0);
    CHECK(p.rho() == static_cast<double>(1.0L / 3.0L));
}

TEST_CASE("stationary law small cases") {
    auto one = stationary_pmf(ModelParams::from_rho(1, 1.0));
    CHECK(one.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(one.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
    auto two = stationary_pmf(ModelParams::from_rho(2, 1.0));
    CHECK(two.probs[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(two.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(two.probs[2] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("stationary law matches exact binomial for N <= 30") {
    const long fracs[][2] = {{1, 10}, {1, 4}, {1, 2}, {4, 5}, {1, 1}, {3, 2}, {3, 1}};
    for (const auto& f : fracs) {
        mpq_class rho(f[0], f[1]);
        rho.canonicalize();
        const double rho_d = rho.get_d();
        for (long N = 1; N <= 30; ++N) {
            const auto law = stationary_pmf(ModelParams::from_rho(N, rho_d));
            double total = 0.0;
            mpq_class norm = 1;
            for (long j = 0; j < N; ++j) norm *= (1 + rho);
            mpq_class rho_pow = 1;
            for (long k = 0; k <= N; ++k) {
                const mpq_class exact = mpq_class(testing::binomial(N, k)) * rho_pow / norm;
                CHECK(testing::rel_err(law.probs[k], exact.get_d()) < 1e-12);
                CHECK(law.probs[k] > 0.0);
                total += law.probs[k];
                rho_pow *= rho;
            }
            CHECK(std::fabs(total - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("detailed balance pi_i (N-i) nu = pi_{i+1} (i+1) mu") {
    for (double rho : {0.2, 0.9, 1.0, 2.5}) {
        for (State N : {5, 40, 300}) {
            const auto p = make_params(N, rho * 1.7, 1.7);
            const auto law = stationary_pmf(p);
            for (State i = 0; i < N; ++i) {
                const double lhs = law.log_probs[i] + std::log((N - i) * p.nu());
                const double rhs = law.log_probs[i + 1] + std::log((i + 1) * p.mu());
                CHECK(std::fabs(lhs - rhs) < 1e-12 * std::max(1.0, std::fabs(lhs)));
            }
        }
    }
}

TEST_CASE("stationary law supports very large N through logs") {
    const auto law = stationary_pmf(ModelParams::from_rho(10'000'000, 0.5));
    double total = 0.0;
    for (double v : law.probs) total += v;
    CHECK(std::fabs(total - 1.0) < 1e-9);
    CHECK(std::isfinite(law.log_probs.front()));
}

TEST_CASE("jump chain rows") {
    const auto p = ModelParams::from_rho(2, 1.0);
    CHECK(jump_up_prob(p, 0) == 1.0);
    CHECK(jump_up_prob(p, 2) == 0.0);
    CHECK(jump_down_prob(p, 2) == 1.0);
    CHECK(jump_up_prob(p, 1) == 0.5);
    CHECK_THROWS_AS(jump_up_prob(p, 3), ParameterError);
    CHECK_THROWS_AS(jump_up_prob(p, -1), ParameterError);
}

TEST_CASE("jump probabilities: complement and strict decrease") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> rho_dist(0.01, 5.0);
    std::uniform_int_distribution<State> n_dist(1, 500);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = ModelParams::from_rho(n_dist(gen), rho_dist(gen));
        for (State i = 1; i < p.N(); ++i) {
            CHECK(std::fabs(jump_up_prob(p, i) + jump_down_prob(p, i) - 1.0) <= 1e-15);
        }
        for (State i = 0; i < p.N(); ++i) CHECK(jump_up_prob(p, i) > jump_up_prob(p, i + 1));
    }
}

TEST_CASE("exit rate") {
    const auto p = make_params(4, 2.0, 3.0);
    CHECK(exit_rate(p, 0) == 8.0);
    CHECK(exit_rate(p, 4) == 12.0);
    CHECK(exit_rate(p, 1) == 3.0 + 6.0);
}
