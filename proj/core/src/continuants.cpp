#include "wedder/continuants.hpp"

#include <functional>

namespace wedder {

std::vector<std::vector<int>> word_model(int k) {
    std::vector<std::vector<int>> out;
    if (k < 0) return out;
    if (k % 2 == 0) out.push_back({});
    std::vector<int> cur;
    std::function<void(int)> extend = [&](int last) {
        if (last % 2 == 1) out.push_back(cur);
        for (int next = last - 1; next >= 1; next -= 2) {
            cur.push_back(next);
            extend(next);
            cur.pop_back();
        }
    };
    for (int first = k; first >= 1; first -= 2) {
        cur = {first};
        extend(first);
    }
    return out;
}

FreePoly word_model_poly(int k) {
    FreePoly p;
    for (const auto& w : word_model(k)) {
        Word word;
        for (int i : w) word.push_back(static_cast<std::uint16_t>(i - 1));
        p += FreePoly::monomial(word);
    }
    return p;
}

std::uint64_t fibonacci(int k) {
    std::uint64_t a = 1, b = 1;
    for (int i = 1; i < k; ++i) {
        std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return b;
}

InvertibilityTransfer op_transfer_invertibility(const FiniteRing& R, const std::vector<Elem>& a) {
    FiniteArith r(R);
    auto qd = build_quad(r, a);
    const int k = qd.k();
    InvertibilityTransfer out;
    auto qinv = R.inverse(qd.q(k));
    auto qopinv = R.inverse(qd.qop(k));
    out.q_invertible = qinv.has_value();
    out.qop_invertible = qopinv.has_value();
    out.qop_inverse = qopinv;
    if (qinv) {
        Elem closed = R.sub(qd.p(k - 1), R.mul(R.mul(qd.q(k - 1), *qinv), qd.p(k)));
        closed = R.mul(sign_power(r, k), closed);
        out.closed_form_matches = qopinv.has_value() && closed == *qopinv && R.mul(closed, qd.qop(k)) == R.one() &&
                                  R.mul(qd.qop(k), closed) == R.one();
    }
    return out;
}

ZeroTransfer zero_transfer(const FiniteRing& R, const std::vector<Elem>& a) {
    FiniteArith r(R);
    auto qd = build_quad(r, a);
    const int m = qd.k();
    ZeroTransfer out;
    out.q_zero = qd.q(m) == R.zero();
    out.qop_zero = qd.qop(m) == R.zero();
    out.q_prev_invertible = R.is_unit(qd.q(m - 1));
    out.p_invertible = R.is_unit(qd.p(m));
    return out;
}

bool det_equality(const MatrixRing& M, const std::vector<Elem>& a) {
    FiniteArith r(M);
    auto qd = build_quad(r, a);
    return M.det(qd.q(qd.k())) == M.det(qd.qop(qd.k()));
}

std::vector<Elem> solve_prefix_equations(const FiniteRing& R, const std::vector<Elem>& c) {
    std::vector<Elem> x;
    if (c.empty()) return x;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (!R.is_unit(c[i])) throw std::invalid_argument("solve_prefix_equations: c(" + std::to_string(i + 1) + ") not invertible");
    x.push_back(c[0]);
    for (std::size_t k = 1; k < c.size(); ++k) {
        Elem before = (k >= 2) ? c[k - 2] : R.one();
        x.push_back(R.mul(R.sub(c[k], before), *R.inverse(c[k - 1])));
    }
    FiniteArith r(R);
    for (std::size_t i = 1; i <= x.size(); ++i) {
        std::vector<Elem> prefix(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
        if (continuant_Q(r, prefix) != c[i - 1]) throw std::logic_error("solve_prefix_equations: verification failed");
    }
    return x;
}


std::vector<char> unit_derived_subgroup(const FiniteRing& R) {
    const auto& U = R.units();
    std::vector<char> in(R.size(), 0);
    std::vector<Elem> elems{R.one()};
    in[R.one()] = 1;
    std::vector<Elem> gens;
    for (Elem x : U)
        for (Elem y : U) {
            Elem c = R.mul(R.mul(*R.inverse(x), *R.inverse(y)), R.mul(x, y));
            if (!in[c]) {
                in[c] = 1;
                elems.push_back(c);
                gens.push_back(c);
            }
        }
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (Elem g : gens) {
            Elem y = R.mul(g, elems[i]);
            if (!in[y]) {
                in[y] = 1;
                elems.push_back(y);
            }
        }
    return in;
}

std::optional<bool> op_ratio_in_derived(const FiniteRing& R, const std::vector<Elem>& a,
                                        const std::vector<char>& derived) {
    FiniteArith r(R);
    const std::size_t k = a.size();
    for (std::size_t i = 1; i <= k; ++i) {
        std::vector<Elem> tail(a.end() - static_cast<std::ptrdiff_t>(i), a.end());
        if (!R.is_unit(continuant_Q(r, tail))) return std::nullopt;
    }
    auto qd = build_quad(r, a);
    Elem ratio = R.mul(*R.inverse(qd.q(static_cast<int>(k))), qd.qop(static_cast<int>(k)));
    return derived[ratio] != 0;
}

}  // namespace wedder
