#pragma once

// Canonical matrices and field linear algebra on MatrixRing codes.

#include <memory>
#include <utility>
#include <vector>

#include "wedder/ring.hpp"

namespace wedder {

using MatrixRingPtr = std::shared_ptr<const MatrixRing>;

MatrixRingPtr matrix_ring(unsigned n, const FiniteRingPtr& inner);

// Polynomials over a finite ring, coefficients low degree first.
using RingPoly = std::vector<Elem>;

namespace canon {

Elem identity(const MatrixRing& M);
Elem zero(const MatrixRing& M);
// I_r in the top-left corner, zero elsewhere.
Elem rank_form(const MatrixRing& M, unsigned r);
// Unipotent Jordan block JNF(k): ones on the diagonal and superdiagonal.
Elem jordan(const MatrixRing& M);
// Nilpotent Jordan block JNF_0(k).
Elem jordan0(const MatrixRing& M);
// Companion of x^k + c_{k-1} x^{k-1} + ... + c_0: subdiagonal ones, last column -c.
Elem companion(const MatrixRing& M, const std::vector<Elem>& c);
// N_k with parameters (a, b, c, ...): last column (1, ..., c, b, a) top to bottom.
Elem n_matrix(const MatrixRing& M, const std::vector<Elem>& params);
// W with parameters (a, b, ...): first column (a, b, ..., 1), superdiagonal ones.
Elem w_matrix(const MatrixRing& M, const std::vector<Elem>& params);
// Block diagonal sum; blocks are (ring, code) pairs and sizes must add up.
Elem direct_sum(const MatrixRing& M, const std::vector<std::pair<const MatrixRing*, Elem>>& blocks);
// Submatrix rows [r0, r0+size) and columns [c0, c0+size).
Elem block(const MatrixRing& M, Elem x, unsigned r0, unsigned c0, const MatrixRing& B);
// Writes block b at (r0, c0) into x.
Elem place_block(const MatrixRing& M, Elem x, unsigned r0, unsigned c0, const MatrixRing& B, Elem b);
// Matrix from nested integer rows, each entry mapped through from_int.
Elem from_rows(const MatrixRing& M, const std::vector<std::vector<int>>& rows);

}  // namespace canon

// P * x * Q = diag(I_r, 0) with P, Q invertible (field inner ring).
struct RankNormalForm {
    Elem P;
    Elem Q;
    unsigned rank;
};
RankNormalForm rank_normal_form(const MatrixRing& M, Elem x);

// Basis of the right kernel {v : x v = 0}, each vector as a coefficient list.
std::vector<std::vector<Elem>> kernel_basis(const MatrixRing& M, Elem x);

// det(t I - x) expanded over the polynomial ring (small n only).
RingPoly characteristic_polynomial(const MatrixRing& M, Elem x);

bool poly_is_irreducible(const FiniteRing& F, const RingPoly& monic);
// Smallest irreducible monic of degree n over F, ordered by the base-|F| value of c_0..c_{n-1}.
RingPoly smallest_irreducible(const FiniteRing& F, unsigned n);

struct MaximalSubfield {
    MatrixRingPtr ring;
    RingPoly modulus;          // monic, degree n
    Elem generator;            // companion matrix D
    std::vector<Elem> nonzero; // every nonzero F_q-combination of I, D, ..., D^{n-1}
};
MaximalSubfield maximal_subfield(unsigned n, const FiniteRingPtr& field);

}  // namespace wedder
