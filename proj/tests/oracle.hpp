#pragma once

// Small independent reference arithmetic used to cross-check the library.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using IntMat = std::vector<std::vector<std::int64_t>>;

inline IntMat mul_mod(const IntMat& a, const IntMat& b, std::int64_t p) {
    const std::size_t n = a.size();
    IntMat c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < n; ++k) s += a[i][k] * b[k][j];
            c[i][j] = ((s % p) + p) % p;
        }
    return c;
}

// |GL(n, q)| = prod_{i<n} (q^n - q^i).
inline std::uint64_t gl_order(unsigned n, std::uint64_t q) {
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= q;
    std::uint64_t out = 1, qi = 1;
    for (unsigned i = 0; i < n; ++i) {
        out *= (qn - qi);
        qi *= q;
    }
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t c = 0;
    for (std::uint64_t x = 0; x < m; ++x)
        if (std::gcd(x, m) == 1) ++c;
    return c;
}

// Determinant mod p by cofactor expansion (tiny n).
inline std::int64_t det_mod(const IntMat& a, std::int64_t p) {
    const std::size_t n = a.size();
    if (n == 1) return ((a[0][0] % p) + p) % p;
    std::int64_t s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntMat m;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::int64_t> r;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) r.push_back(a[i][j]);
            m.push_back(r);
        }
        std::int64_t term = a[0][c] * det_mod(m, p) % p;
        s += (c % 2 == 0) ? term : -term;
    }
    return ((s % p) + p) % p;
}

inline std::uint64_t fib(int k) {  // f(0) = f(1) = 1
    std::vector<std::uint64_t> f{1, 1};
    for (int i = 2; i <= k; ++i) f.push_back(f[static_cast<std::size_t>(i - 1)] + f[static_cast<std::size_t>(i - 2)]);
    return f[static_cast<std::size_t>(k)];
}

}  // namespace oracle
