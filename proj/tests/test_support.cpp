#include "test_support.hpp"

namespace bdh::testing {

std::vector<mpq_class> exact_first_passage(long N, long rho_num, long rho_den) {
    mpq_class rho(rho_num, rho_den);
    rho.canonicalize();
    std::vector<mpq_class> out(static_cast<std::size_t>(N));
    out[0] = 1;
    for (long k = 2; k <= N; ++k) {
        // Unknowns h[1..k-1]; row i: h[i] - p_i h[i+1] - q_i h[i-1] = 0, h[0]=0, h[k]=1.
        const long m = k - 1;
        std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(m + 1, mpq_class(0)));
        for (long i = 1; i <= m; ++i) {
            const mpq_class births = mpq_class(N - i) * rho;
            const mpq_class p = births / (births + i);
            const mpq_class q = mpq_class(i) / (births + i);
            auto& row = a[i - 1];
            row[i - 1] = 1;
            if (i + 1 <= m) {
                row[i] = -p;
            } else {
                row[m] = p;  // h[k] = 1 moves to the right-hand side
            }
            if (i - 1 >= 1) row[i - 2] = -q;
        }
        for (long c = 0; c < m; ++c) {
            long piv = c;
            while (a[piv][c] == 0) ++piv;
            std::swap(a[piv], a[c]);
            for (long r = 0; r < m; ++r) {
                if (r == c || a[r][c] == 0) continue;
                const mpq_class f = a[r][c] / a[c][c];
                for (long j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
            }
        }
        out[static_cast<std::size_t>(k - 1)] = a[0][m] / a[0][0];
    }
    return out;
}

}  // namespace bdh::testing
