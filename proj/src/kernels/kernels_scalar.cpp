#include <cmath>
#include <cstddef>

#include "kernels_impl.hpp"

namespace bdh::kernels::detail {
namespace {

inline double fold(const double (&lane)[4]) { return (lane[0] + lane[1]) + (lane[2] + lane[3]); }

double sum_scalar(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t blocked = n - n % 4;
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < blocked; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) lane[l] += x[i + l];
    }
    double acc = fold(lane);
    for (std::size_t i = blocked; i < n; ++i) acc += x[i];
    return acc;
}

double index_moment_scalar(std::span<const double> w, double first) {
    const std::size_t n = w.size();
    const std::size_t blocked = n - n % 4;
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < blocked; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double value = first + static_cast<double>(i + l);
            lane[l] += value * w[i + l];
        }
    }
    double acc = fold(lane);
    for (std::size_t i = blocked; i < n; ++i) acc += (first + static_cast<double>(i)) * w[i];
    return acc;
}

double centered_square_moment_scalar(std::span<const double> w, double first, double center) {
    const std::size_t n = w.size();
    const std::size_t blocked = n - n % 4;
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < blocked; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double d = (first + static_cast<double>(i + l)) - center;
            lane[l] += (d * d) * w[i + l];
        }
    }
    double acc = fold(lane);
    for (std::size_t i = blocked; i < n; ++i) {
        const double d = (first + static_cast<double>(i)) - center;
        acc += (d * d) * w[i];
    }
    return acc;
}

double max_abs_diff_scalar(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t blocked = n - n % 4;
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < blocked; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double d = std::fabs(a[i + l] - b[i + l]);
            lane[l] = d > lane[l] ? d : lane[l];
        }
    }
    double acc = lane[0];
    for (std::size_t l = 1; l < 4; ++l) acc = lane[l] > acc ? lane[l] : acc;
    for (std::size_t i = blocked; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        acc = d > acc ? d : acc;
    }
    return acc;
}

}  // namespace

const KernelTable scalar_table{Isa::scalar, sum_scalar, index_moment_scalar,
                               centered_square_moment_scalar, max_abs_diff_scalar};

}  // namespace bdh::kernels::detail
