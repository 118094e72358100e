#include "wedder/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace wedder::gf2 {

namespace {

struct Rows {
    std::uint64_t r[kMaxCodeDim];
};

Rows unpack(Code a, unsigned n) {
    Rows out{};
    for (unsigned i = 0; i < n; ++i) out.r[i] = row(a, n, i);
    return out;
}

Code pack(const Rows& rs, unsigned n) {
    Code c = 0;
    for (unsigned i = 0; i < n; ++i) c |= rs.r[i] << (i * n);
    return c;
}

void check_dim(unsigned n) {
    if (n == 0 || n > kMaxCodeDim) throw std::invalid_argument("gf2 code dimension out of range");
}

}  // namespace

Code identity(unsigned n) {
    check_dim(n);
    Code c = 0;
    for (unsigned i = 0; i < n; ++i) c |= 1ull << (i * n + i);
    return c;
}

Code mul(Code a, Code b, unsigned n) {
    Rows rb = unpack(b, n);
    Code c = 0;
    for (unsigned i = 0; i < n; ++i) {
        std::uint64_t ra = row(a, n, i);
        std::uint64_t acc = 0;
        while (ra) {
            unsigned j = static_cast<unsigned>(__builtin_ctzll(ra));
            acc ^= rb.r[j];
            ra &= ra - 1;
        }
        c |= acc << (i * n);
    }
    return c;
}

Code transpose(Code a, unsigned n) {
    Code c = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if ((a >> (i * n + j)) & 1u) c |= 1ull << (j * n + i);
    return c;
}

unsigned rank(Code a, unsigned n) {
    Rows rs = unpack(a, n);
    unsigned rk = 0;
    for (unsigned col = 0; col < n && rk < n; ++col) {
        std::uint64_t bit = 1ull << col;
        unsigned piv = rk;
        while (piv < n && !(rs.r[piv] & bit)) ++piv;
        if (piv == n) continue;
        std::swap(rs.r[rk], rs.r[piv]);
        for (unsigned i = rk + 1; i < n; ++i)
            if (rs.r[i] & bit) rs.r[i] ^= rs.r[rk];
        ++rk;
    }
    return rk;
}

bool invertible(Code a, unsigned n) { return rank(a, n) == n; }

std::optional<Code> inverse(Code a, unsigned n) {
    Rows rs = unpack(a, n);
    Rows inv = unpack(identity(n), n);
    for (unsigned col = 0; col < n; ++col) {
        std::uint64_t bit = 1ull << col;
        unsigned piv = col;
        while (piv < n && !(rs.r[piv] & bit)) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(rs.r[col], rs.r[piv]);
        std::swap(inv.r[col], inv.r[piv]);
        for (unsigned i = 0; i < n; ++i) {
            if (i != col && (rs.r[i] & bit)) {
                rs.r[i] ^= rs.r[col];
                inv.r[i] ^= inv.r[col];
            }
        }
    }
    return pack(inv, n);
}

std::uint64_t left_kernel_vector(Code a, unsigned n) {
    // Eliminate on rows while tracking combinations; a zero row gives w.
    Rows rs = unpack(a, n);
    Rows comb{};
    for (unsigned i = 0; i < n; ++i) comb.r[i] = 1ull << i;
    unsigned rk = 0;
    for (unsigned col = 0; col < n && rk < n; ++col) {
        std::uint64_t bit = 1ull << col;
        unsigned piv = rk;
        while (piv < n && !(rs.r[piv] & bit)) ++piv;
        if (piv == n) continue;
        std::swap(rs.r[rk], rs.r[piv]);
        std::swap(comb.r[rk], comb.r[piv]);
        for (unsigned i = rk + 1; i < n; ++i) {
            if (rs.r[i] & bit) {
                rs.r[i] ^= rs.r[rk];
                comb.r[i] ^= comb.r[rk];
            }
        }
        ++rk;
    }
    if (rk == n) throw std::invalid_argument("left_kernel_vector: matrix is invertible");
    return comb.r[rk];
}

Matrix Matrix::identity(unsigned n) {
    Matrix m(n);
    for (unsigned i = 0; i < n; ++i) m.rows_[i] = 1ull << i;
    return m;
}

Matrix Matrix::from_code(Code c, unsigned n) {
    check_dim(n);
    Matrix m(n);
    for (unsigned i = 0; i < n; ++i) m.rows_[i] = gf2::row(c, n, i);
    return m;
}

Code Matrix::to_code() const {
    check_dim(n_);
    Code c = 0;
    for (unsigned i = 0; i < n_; ++i) c |= rows_[i] << (i * n_);
    return c;
}

void Matrix::set(unsigned i, unsigned j, bool v) {
    if (v)
        rows_[i] |= 1ull << j;
    else
        rows_[i] &= ~(1ull << j);
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix m(n_);
    for (unsigned i = 0; i < n_; ++i) m.rows_[i] = rows_[i] ^ o.rows_[i];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix m(n_);
    for (unsigned i = 0; i < n_; ++i) {
        std::uint64_t ra = rows_[i];
        std::uint64_t acc = 0;
        while (ra) {
            unsigned j = static_cast<unsigned>(__builtin_ctzll(ra));
            acc ^= o.rows_[j];
            ra &= ra - 1;
        }
        m.rows_[i] = acc;
    }
    return m;
}

unsigned Matrix::rank() const {
    std::vector<std::uint64_t> rs = rows_;
    unsigned rk = 0;
    for (unsigned col = 0; col < n_ && rk < n_; ++col) {
        std::uint64_t bit = 1ull << col;
        unsigned piv = rk;
        while (piv < n_ && !(rs[piv] & bit)) ++piv;
        if (piv == n_) continue;
        std::swap(rs[rk], rs[piv]);
        for (unsigned i = rk + 1; i < n_; ++i)
            if (rs[i] & bit) rs[i] ^= rs[rk];
        ++rk;
    }
    return rk;
}

std::optional<Matrix> Matrix::inverse() const {
    std::vector<std::uint64_t> rs = rows_;
    Matrix inv = identity(n_);
    for (unsigned col = 0; col < n_; ++col) {
        std::uint64_t bit = 1ull << col;
        unsigned piv = col;
        while (piv < n_ && !(rs[piv] & bit)) ++piv;
        if (piv == n_) return std::nullopt;
        std::swap(rs[col], rs[piv]);
        std::swap(inv.rows_[col], inv.rows_[piv]);
        for (unsigned i = 0; i < n_; ++i) {
            if (i != col && (rs[i] & bit)) {
                rs[i] ^= rs[col];
                inv.rows_[i] ^= inv.rows_[col];
            }
        }
    }
    return inv;
}

InvertibleTable::InvertibleTable(unsigned n) : n_(n) {
    if (n == 0 || n > 5) throw std::invalid_argument("InvertibleTable supports n <= 5");
    const std::uint64_t total = 1ull << (n * n);
    bits_.assign((total + 63) / 64, 0);
    for (Code c = 0; c < total; ++c)
        if (invertible(c, n)) bits_[c >> 6] |= 1ull << (c & 63);
}

std::vector<Code> InvertibleTable::units() const {
    std::vector<Code> out;
    const std::uint64_t total = 1ull << (n_ * n_);
    for (Code c = 0; c < total; ++c)
        if ((*this)(c)) out.push_back(c);
    return out;
}

}  // namespace wedder::gf2
