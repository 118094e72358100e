#include "wedder/matrix_tools.hpp"

#include <algorithm>

namespace wedder {

MatrixRingPtr matrix_ring(unsigned n, const FiniteRingPtr& inner) {
    auto r = std::dynamic_pointer_cast<const MatrixRing>(
        make_finite_ring("mat(" + std::to_string(n) + "," + inner->descriptor() + ")"));
    if (!r) throw RingError("matrix ring construction failed");
    return r;
}

namespace canon {

Elem identity(const MatrixRing& M) { return M.one(); }
Elem zero(const MatrixRing&) { return 0; }

Elem rank_form(const MatrixRing& M, unsigned r) {
    Elem x = 0;
    for (unsigned i = 0; i < r && i < M.n(); ++i) x = M.with_entry(x, i, i, M.inner().one());
    return x;
}

Elem jordan(const MatrixRing& M) {
    Elem x = M.one();
    for (unsigned i = 0; i + 1 < M.n(); ++i) x = M.with_entry(x, i, i + 1, M.inner().one());
    return x;
}

Elem jordan0(const MatrixRing& M) {
    Elem x = 0;
    for (unsigned i = 0; i + 1 < M.n(); ++i) x = M.with_entry(x, i, i + 1, M.inner().one());
    return x;
}

Elem companion(const MatrixRing& M, const std::vector<Elem>& c) {
    const unsigned n = M.n();
    if (c.size() != n) throw RingError("companion: need n coefficients");
    Elem x = 0;
    for (unsigned i = 1; i < n; ++i) x = M.with_entry(x, i, i - 1, M.inner().one());
    for (unsigned i = 0; i < n; ++i) x = M.with_entry(x, i, n - 1, M.inner().neg(c[i]));
    return x;
}

Elem n_matrix(const MatrixRing& M, const std::vector<Elem>& params) {
    const unsigned n = M.n();
    if (params.size() + 1 != n) throw RingError("n_matrix: need n-1 parameters");
    Elem x = 0;
    for (unsigned i = 1; i < n; ++i) x = M.with_entry(x, i, i - 1, M.inner().one());
    x = M.with_entry(x, 0, n - 1, M.inner().one());
    for (unsigned i = 1; i < n; ++i) x = M.with_entry(x, i, n - 1, params[n - 1 - i]);
    return x;
}

Elem w_matrix(const MatrixRing& M, const std::vector<Elem>& params) {
    const unsigned n = M.n();
    if (params.size() + 1 != n) throw RingError("w_matrix: need n-1 parameters");
    Elem x = 0;
    for (unsigned i = 0; i + 1 < n; ++i) {
        x = M.with_entry(x, i, 0, params[i]);
        x = M.with_entry(x, i, i + 1, M.inner().one());
    }
    x = M.with_entry(x, n - 1, 0, M.inner().one());
    return x;
}

Elem direct_sum(const MatrixRing& M, const std::vector<std::pair<const MatrixRing*, Elem>>& blocks) {
    Elem x = 0;
    unsigned off = 0;
    for (const auto& [B, b] : blocks) {
        if (off + B->n() > M.n()) throw RingError("direct_sum: blocks exceed size");
        x = place_block(M, x, off, off, *B, b);
        off += B->n();
    }
    if (off != M.n()) throw RingError("direct_sum: block sizes do not add up");
    return x;
}

Elem block(const MatrixRing& M, Elem x, unsigned r0, unsigned c0, const MatrixRing& B) {
    std::vector<Elem> e(std::size_t(B.n()) * B.n());
    for (unsigned i = 0; i < B.n(); ++i)
        for (unsigned j = 0; j < B.n(); ++j) e[i * B.n() + j] = M.entry(x, r0 + i, c0 + j);
    return B.from_entries(e);
}

Elem place_block(const MatrixRing& M, Elem x, unsigned r0, unsigned c0, const MatrixRing& B, Elem b) {
    for (unsigned i = 0; i < B.n(); ++i)
        for (unsigned j = 0; j < B.n(); ++j) x = M.with_entry(x, r0 + i, c0 + j, B.entry(b, i, j));
    return x;
}

Elem from_rows(const MatrixRing& M, const std::vector<std::vector<int>>& rows) {
    if (rows.size() != M.n()) throw RingError("from_rows: wrong row count");
    Elem x = 0;
    for (unsigned i = 0; i < M.n(); ++i) {
        if (rows[i].size() != M.n()) throw RingError("from_rows: wrong row length");
        for (unsigned j = 0; j < M.n(); ++j) x = M.with_entry(x, i, j, M.inner().from_int(rows[i][j]));
    }
    return x;
}

}  // namespace canon

namespace {

struct Dense {
    unsigned n;
    std::vector<Elem> a;
    Elem& at(unsigned i, unsigned j) { return a[i * n + j]; }
};

void row_swap(Dense& d, unsigned r, unsigned s) {
    for (unsigned j = 0; j < d.n; ++j) std::swap(d.at(r, j), d.at(s, j));
}
void col_swap(Dense& d, unsigned c, unsigned e) {
    for (unsigned i = 0; i < d.n; ++i) std::swap(d.at(i, c), d.at(i, e));
}

}  // namespace

RankNormalForm rank_normal_form(const MatrixRing& M, Elem x) {
    const FiniteRing& F = M.inner();
    if (!F.is_field()) throw RingError("rank normal form needs a field inner ring");
    const unsigned n = M.n();
    Dense a{n, M.entries(x)}, P{n, M.entries(M.one())}, Q{n, M.entries(M.one())};
    unsigned r = 0;
    std::vector<unsigned> pivots;
    for (unsigned col = 0; col < n && r < n; ++col) {
        unsigned piv = r;
        while (piv < n && a.at(piv, col) == F.zero()) ++piv;
        if (piv == n) continue;
        row_swap(a, r, piv);
        row_swap(P, r, piv);
        Elem inv = *F.inverse(a.at(r, col));
        for (unsigned j = 0; j < n; ++j) {
            a.at(r, j) = F.mul(inv, a.at(r, j));
            P.at(r, j) = F.mul(inv, P.at(r, j));
        }
        for (unsigned i = 0; i < n; ++i) {
            if (i == r) continue;
            Elem f = a.at(i, col);
            if (f == F.zero()) continue;
            for (unsigned j = 0; j < n; ++j) {
                a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(r, j)));
                P.at(i, j) = F.sub(P.at(i, j), F.mul(f, P.at(r, j)));
            }
        }
        pivots.push_back(col);
        ++r;
    }
    // Pivot columns to the front.
    for (unsigned i = 0; i < r; ++i) {
        if (pivots[i] != i) {
            col_swap(a, i, pivots[i]);
            col_swap(Q, i, pivots[i]);
            for (unsigned k = i + 1; k < r; ++k)
                if (pivots[k] == i) pivots[k] = pivots[i];
            pivots[i] = i;
        }
    }
    // Clear the rest of each pivot row with column operations.
    for (unsigned i = 0; i < r; ++i) {
        for (unsigned j = r; j < n; ++j) {
            Elem f = a.at(i, j);
            if (f == F.zero()) continue;
            for (unsigned k = 0; k < n; ++k) {
                a.at(k, j) = F.sub(a.at(k, j), F.mul(a.at(k, i), f));
                Q.at(k, j) = F.sub(Q.at(k, j), F.mul(Q.at(k, i), f));
            }
        }
    }
    return {M.from_entries(P.a), M.from_entries(Q.a), r};
}

std::vector<std::vector<Elem>> kernel_basis(const MatrixRing& M, Elem x) {
    const FiniteRing& F = M.inner();
    if (!F.is_field()) throw RingError("kernel needs a field inner ring");
    const unsigned n = M.n();
    Dense a{n, M.entries(x)};
    std::vector<int> pivot_of_col(n, -1);
    unsigned r = 0;
    for (unsigned col = 0; col < n && r < n; ++col) {
        unsigned piv = r;
        while (piv < n && a.at(piv, col) == F.zero()) ++piv;
        if (piv == n) continue;
        row_swap(a, r, piv);
        Elem inv = *F.inverse(a.at(r, col));
        for (unsigned j = 0; j < n; ++j) a.at(r, j) = F.mul(inv, a.at(r, j));
        for (unsigned i = 0; i < n; ++i) {
            if (i == r) continue;
            Elem f = a.at(i, col);
            if (f == F.zero()) continue;
            for (unsigned j = 0; j < n; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(r, j)));
        }
        pivot_of_col[col] = static_cast<int>(r);
        ++r;
    }
    std::vector<std::vector<Elem>> basis;
    for (unsigned free = 0; free < n; ++free) {
        if (pivot_of_col[free] >= 0) continue;
        std::vector<Elem> v(n, F.zero());
        v[free] = F.one();
        for (unsigned col = 0; col < n; ++col)
            if (pivot_of_col[col] >= 0) v[col] = F.neg(a.at(static_cast<unsigned>(pivot_of_col[col]), free));
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

RingPoly padd(const FiniteRing& F, const RingPoly& a, const RingPoly& b) {
    RingPoly c(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.add(c[i], a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = F.add(c[i], b[i]);
    return c;
}

RingPoly pneg(const FiniteRing& F, RingPoly a) {
    for (auto& v : a) v = F.neg(v);
    return a;
}

RingPoly pmul(const FiniteRing& F, const RingPoly& a, const RingPoly& b) {
    if (a.empty() || b.empty()) return {};
    RingPoly c(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    return c;
}

void ptrim(const FiniteRing& F, RingPoly& a) {
    while (!a.empty() && a.back() == F.zero()) a.pop_back();
}

// Remainder modulo a monic polynomial.
RingPoly pmod_monic(const FiniteRing& F, RingPoly a, const RingPoly& m) {
    ptrim(F, a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        Elem c = a.back();
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, m[i]));
        ptrim(F, a);
    }
    return a;
}

RingPoly det_poly(const FiniteRing& F, const std::vector<RingPoly>& m, unsigned n) {
    if (n == 1) return m[0];
    RingPoly acc;
    std::vector<RingPoly> minor((n - 1) * (n - 1));
    for (unsigned c = 0; c < n; ++c) {
        for (unsigned i = 1; i < n; ++i) {
            unsigned mj = 0;
            for (unsigned j = 0; j < n; ++j) {
                if (j == c) continue;
                minor[(i - 1) * (n - 1) + mj++] = m[i * n + j];
            }
        }
        RingPoly term = pmul(F, m[c], det_poly(F, minor, n - 1));
        acc = (c % 2 == 0) ? padd(F, acc, term) : padd(F, acc, pneg(F, term));
    }
    return acc;
}

}  // namespace

RingPoly characteristic_polynomial(const MatrixRing& M, Elem x) {
    const FiniteRing& F = M.inner();
    if (!F.commutative()) throw RingError("characteristic polynomial needs a commutative inner ring");
    const unsigned n = M.n();
    if (n > 6) throw RingError("characteristic polynomial limited to n <= 6");
    auto e = M.entries(x);
    std::vector<RingPoly> m(std::size_t(n) * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            RingPoly p{F.neg(e[i * n + j])};
            if (i == j) p.push_back(F.one());
            m[i * n + j] = p;
        }
    RingPoly out = det_poly(F, m, n);
    out.resize(n + 1, F.zero());
    return out;
}

bool poly_is_irreducible(const FiniteRing& F, const RingPoly& monic) {
    const unsigned deg = static_cast<unsigned>(monic.size() - 1);
    if (deg == 0) return false;
    if (deg == 1) return true;
    const Elem q = F.size();
    for (unsigned d = 1; d <= deg / 2; ++d) {
        Elem count = 1;
        for (unsigned i = 0; i < d; ++i) count *= q;
        for (Elem c = 0; c < count; ++c) {
            RingPoly g(d + 1, F.zero());
            Elem v = c;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = v % q;
                v /= q;
            }
            g[d] = F.one();
            if (pmod_monic(F, monic, g).empty()) return false;
        }
    }
    return true;
}

RingPoly smallest_irreducible(const FiniteRing& F, unsigned n) {
    if (!F.is_field()) throw RingError("irreducible polynomials need a field");
    const Elem q = F.size();
    Elem count = 1;
    for (unsigned i = 0; i < n; ++i) count *= q;
    for (Elem c = 0; c < count; ++c) {
        RingPoly f(n + 1, F.zero());
        Elem v = c;
        for (unsigned i = 0; i < n; ++i) {
            f[i] = v % q;
            v /= q;
        }
        f[n] = F.one();
        if (poly_is_irreducible(F, f)) return f;
    }
    throw RingError("no irreducible polynomial found");
}

MaximalSubfield maximal_subfield(unsigned n, const FiniteRingPtr& field) {
    if (!field->is_field()) throw RingError("maximal_subfield needs a field");
    MaximalSubfield out;
    out.ring = matrix_ring(n, field);
    const MatrixRing& M = *out.ring;
    out.modulus = smallest_irreducible(*field, n);
    out.generator = canon::companion(M, RingPoly(out.modulus.begin(), out.modulus.begin() + n));
    std::vector<Elem> powers{M.one()};
    for (unsigned i = 1; i < n; ++i) powers.push_back(M.mul(powers.back(), out.generator));
    const Elem q = field->size();
    Elem count = 1;
    for (unsigned i = 0; i < n; ++i) count *= q;
    for (Elem c = 1; c < count; ++c) {
        Elem v = c, acc = 0;
        for (unsigned i = 0; i < n; ++i) {
            Elem coeff = v % q;
            v /= q;
            if (coeff != field->zero()) acc = M.add(acc, M.mul(M.scalar(coeff), powers[i]));
        }
        out.nonzero.push_back(acc);
    }
    return out;
}

}  // namespace wedder
