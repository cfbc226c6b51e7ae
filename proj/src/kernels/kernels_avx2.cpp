#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "kernels_impl.hpp"

namespace bdh::kernels::detail {
namespace {

inline double fold(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

const __m256d kLaneOffsets = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);

double sum_avx2(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t blocked = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < blocked; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
    }
    double total = fold(acc);
    for (std::size_t i = blocked; i < n; ++i) total += x[i];
    return total;
}

double index_moment_avx2(std::span<const double> w, double first) {
    const std::size_t n = w.size();
    const std::size_t blocked = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    const __m256d base = _mm256_set1_pd(first);
    for (std::size_t i = 0; i < blocked; i += 4) {
        // first + (i + l), rounded exactly like the scalar loop.
        const __m256d offs = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), kLaneOffsets);
        const __m256d value = _mm256_add_pd(base, offs);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(value, _mm256_loadu_pd(w.data() + i)));
    }
    double total = fold(acc);
    for (std::size_t i = blocked; i < n; ++i) total += (first + static_cast<double>(i)) * w[i];
    return total;
}

double centered_square_moment_avx2(std::span<const double> w, double first, double center) {
    const std::size_t n = w.size();
    const std::size_t blocked = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    const __m256d base = _mm256_set1_pd(first);
    const __m256d mid = _mm256_set1_pd(center);
    for (std::size_t i = 0; i < blocked; i += 4) {
        const __m256d offs = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), kLaneOffsets);
        const __m256d d = _mm256_sub_pd(_mm256_add_pd(base, offs), mid);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(d, d), _mm256_loadu_pd(w.data() + i)));
    }
    double total = fold(acc);
    for (std::size_t i = blocked; i < n; ++i) {
        const double d = (first + static_cast<double>(i)) - center;
        total += (d * d) * w[i];
    }
    return total;
}

double max_abs_diff_avx2(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t blocked = n - n % 4;
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < blocked; i += 4) {
        const __m256d d =
            _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
        // Operand order matches `d > acc ? d : acc` for NaN handling.
        acc = _mm256_max_pd(d, acc);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = lane[0];
    for (int l = 1; l < 4; ++l) total = lane[l] > total ? lane[l] : total;
    for (std::size_t i = blocked; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        total = d > total ? d : total;
    }
    return total;
}

}  // namespace

const KernelTable avx2_table{Isa::avx2, sum_avx2, index_moment_avx2, centered_square_moment_avx2,
                             max_abs_diff_avx2};

}  // namespace bdh::kernels::detail
