#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "bdh/kernels.hpp"

using namespace bdh::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::mt19937_64& gen, bool wide) {
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> ex(-40, 40);
    std::vector<double> v(n);
    for (auto& x : v) x = wide ? std::ldexp(mant(gen), ex(gen)) : std::fabs(mant(gen));
    return v;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

TEST_CASE("scalar reference values") {
    const auto& s = table_for(Isa::scalar);
    const std::vector<double> w{0.5, 0.25, 0.25};
    CHECK(s.sum(w) == 1.0);
    CHECK(s.index_moment(w, 1.0) == 0.5 + 0.5 + 0.75);
    CHECK(s.centered_square_moment(w, 1.0, 2.0) == 0.5 + 0.0 + 0.25);
    const std::vector<double> a{1.0, -2.0, 3.0, 4.0, 5.0};
    const std::vector<double> b{1.5, 2.0, 3.0, 4.0, 5.25};
    CHECK(s.max_abs_diff(a, b) == 4.0);
    CHECK(s.sum(std::span<const double>{}) == 0.0);
    CHECK(s.max_abs_diff(std::span<const double>{}, std::span<const double>{}) == 0.0);
}

TEST_CASE("active table is a supported ISA") {
    CHECK(supported(active().isa));
    CHECK(supported(Isa::scalar));
}

TEST_CASE("SIMD variants are bitwise equivalent to the scalar reference") {
    if (!supported(Isa::avx2)) {
        MESSAGE("AVX2 not available; equivalence test skipped");
        return;
    }
    const auto& s = table_for(Isa::scalar);
    const auto& v = table_for(Isa::avx2);
    std::mt19937_64 gen(2024);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1000u, 4099u}) {
        for (bool wide : {false, true}) {
            const auto a = random_values(n, gen, wide);
            const auto b = random_values(n, gen, wide);
            CHECK(same_bits(s.sum(a), v.sum(a)));
            CHECK(same_bits(s.index_moment(a, 1.0), v.index_moment(a, 1.0)));
            CHECK(same_bits(s.index_moment(a, 17.0), v.index_moment(a, 17.0)));
            CHECK(same_bits(s.centered_square_moment(a, 1.0, 3.3), v.centered_square_moment(a, 1.0, 3.3)));
            CHECK(same_bits(s.max_abs_diff(a, b), v.max_abs_diff(a, b)));
        }
    }
}

TEST_CASE("blocked summation stays close to a long double reference") {
    std::mt19937_64 gen(9);
    const auto x = random_values(100003, gen, false);
    long double ref = 0.0L;
    for (double v : x) ref += v;
    CHECK(std::fabs(active().sum(x) - static_cast<double>(ref)) < 1e-10);
}
