#pragma once

// Bit-packed matrices over GF(2). A code stores entry (i,j) at bit i*n+j,
// the same layout MatrixRing uses for mat(n,gf(2)).

#include <cstdint>
#include <optional>
#include <vector>

namespace wedder::gf2 {

using Code = std::uint64_t;

constexpr unsigned kMaxCodeDim = 7;

inline std::uint64_t row_mask(unsigned n) { return (n >= 64) ? ~0ull : ((1ull << n) - 1); }
inline std::uint64_t row(Code a, unsigned n, unsigned i) { return (a >> (i * n)) & row_mask(n); }

Code identity(unsigned n);
Code mul(Code a, Code b, unsigned n);
Code transpose(Code a, unsigned n);
unsigned rank(Code a, unsigned n);
bool invertible(Code a, unsigned n);
std::optional<Code> inverse(Code a, unsigned n);
// Nonzero row vector w with w*a = 0, as a bit mask; requires rank < n.
std::uint64_t left_kernel_vector(Code a, unsigned n);

// One row per machine word, any n <= 64.
class Matrix {
public:
    explicit Matrix(unsigned n = 0) : n_(n), rows_(n, 0) {}
    static Matrix identity(unsigned n);
    static Matrix from_code(Code c, unsigned n);
    Code to_code() const;

    unsigned n() const { return n_; }
    bool get(unsigned i, unsigned j) const { return (rows_[i] >> j) & 1u; }
    void set(unsigned i, unsigned j, bool v);
    std::uint64_t& row(unsigned i) { return rows_[i]; }
    std::uint64_t row(unsigned i) const { return rows_[i]; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const = default;

    unsigned rank() const;
    std::optional<Matrix> inverse() const;

private:
    unsigned n_;
    std::vector<std::uint64_t> rows_;
};

// Invertibility bitmap over all 2^(n*n) codes, n <= 5.
class InvertibleTable {
public:
    explicit InvertibleTable(unsigned n);
    bool operator()(Code c) const { return (bits_[c >> 6] >> (c & 63)) & 1u; }
    unsigned n() const { return n_; }
    // Ascending list of invertible codes.
    std::vector<Code> units() const;

private:
    unsigned n_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace wedder::gf2
