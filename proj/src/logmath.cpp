#include "bdh/logmath.hpp"

#include <algorithm>
#include <array>
#include <numbers>

namespace bdh {
namespace {

constexpr long double kLogSqrtTwoPiL = 0.918938533204672741780329736405617639861L;

// Remainders for 1 <= n <= 15 from exact factorials in long double.
const std::array<double, 16>& small_remainders() {
    static const std::array<double, 16> table = [] {
        std::array<double, 16> t{};
        long double fact = 1.0L;
        for (int n = 1; n < 16; ++n) {
            fact *= static_cast<long double>(n);
            const long double ln = std::log(static_cast<long double>(n));
            t[n] = static_cast<double>(std::log(fact) - (n + 0.5L) * ln + n - kLogSqrtTwoPiL);
        }
        return t;
    }();
    return table;
}

}  // namespace

double stirling_remainder(std::int64_t n) {
    if (n < 16) return small_remainders()[static_cast<std::size_t>(n)];
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    const double x = static_cast<double>(n);
    const double xx = x * x;
    if (n > 500) return (s0 - s1 / xx) / x;
    if (n > 80) return (s0 - (s1 - s2 / xx) / xx) / x;
    if (n > 35) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
    return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

double log_choose(std::int64_t n, std::int64_t k) {
    const std::int64_t small = std::min(k, n - k);
    if (small == 0) return 0.0;
    if (n <= 66) {
        unsigned __int128 c = 1;
        for (std::int64_t j = 1; j <= small; ++j) {
            c = c * static_cast<unsigned __int128>(n - small + j) / static_cast<unsigned __int128>(j);
        }
        return static_cast<double>(std::log(static_cast<long double>(c)));
    }
    const std::int64_t large = n - small;
    const double nd = static_cast<double>(n);
    const double sd = static_cast<double>(small);
    const double ld = static_cast<double>(large);
    const double head = sd * std::log(nd / sd) - ld * std::log1p(-sd / nd);
    const double half = 0.5 * std::log(nd / (2.0 * std::numbers::pi * sd * ld));
    return head + half + stirling_remainder(n) - stirling_remainder(small) -
           stirling_remainder(large);
}

}  // namespace bdh
