#include "bdh/rational_dist.hpp"

#include <string>

#include "bdh/errors.hpp"

namespace bdh {
namespace {

std::size_t bit_size(const mpq_class& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace

RationalHeightDistribution exact_rational_distribution(std::int64_t N, std::int64_t rho_num,
                                                       std::int64_t rho_den,
                                                       const RationalOptions& opts) {
    if (N < 1) throw ParameterError("N must be >= 1, got " + std::to_string(N));
    if (rho_num <= 0 || rho_den <= 0) throw ParameterError("rho numerator and denominator must be > 0");
    if (N > opts.max_n) {
        throw CapacityError("exact rational path capped at N = " + std::to_string(opts.max_n) +
                            ", requested " + std::to_string(N));
    }

    mpq_class rho(static_cast<long>(rho_num), static_cast<long>(rho_den));
    rho.canonicalize();
    const mpq_class inv_rho = 1 / rho;

    const auto n = static_cast<std::size_t>(N);
    RationalHeightDistribution out;
    out.survival.resize(n);
    out.pmf.resize(n);

    // r(i) = rho^{-i} / C(N-1, i), built incrementally:
    // r(i) = r(i-1) * i / (rho * (N - i)).
    mpq_class r_term = 1;
    mpq_class partial = 1;
    out.survival[0] = 1;
    for (std::int64_t i = 1; i < N; ++i) {
        mpq_class step(static_cast<long>(i), static_cast<long>(N - i));
        step.canonicalize();
        r_term *= inv_rho * step;
        partial += r_term;
        if (bit_size(partial) > opts.max_bits) {
            throw CapacityError("rational operands exceeded " + std::to_string(opts.max_bits) + " bits at i = " +
                                std::to_string(i));
        }
        out.survival[static_cast<std::size_t>(i)] = 1 / partial;
    }

    mpq_class second = 0;  // E[H^2] = sum_k (2k - 1) P(H >= k)
    out.mean = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const mpq_class next = (j + 1 < n) ? out.survival[j + 1] : mpq_class(0);
        out.pmf[j] = out.survival[j] - next;
        out.mean += out.survival[j];
        second += mpq_class(static_cast<long>(2 * j + 1)) * out.survival[j];
    }
    out.variance = second - out.mean * out.mean;
    return out;
}

}  // namespace bdh
