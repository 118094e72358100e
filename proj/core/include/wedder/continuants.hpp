#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wedder/arith.hpp"
#include "wedder/ring.hpp"

namespace wedder {

// 2x2 matrix, row-major: {m00, m01, m10, m11}.
template <class V>
using Mat2 = std::array<V, 4>;

template <RingArith A>
Mat2<typename A::value_type> mat2_mul(const A& r, const Mat2<typename A::value_type>& x,
                                      const Mat2<typename A::value_type>& y) {
    return {r.add(r.mul(x[0], y[0]), r.mul(x[1], y[2])), r.add(r.mul(x[0], y[1]), r.mul(x[1], y[3])),
            r.add(r.mul(x[2], y[0]), r.mul(x[3], y[2])), r.add(r.mul(x[2], y[1]), r.mul(x[3], y[3]))};
}

template <RingArith A>
Mat2<typename A::value_type> mat2_identity(const A& r) {
    return {r.one(), r.zero(), r.zero(), r.one()};
}

template <RingArith A>
bool mat2_equal(const A& r, const Mat2<typename A::value_type>& x, const Mat2<typename A::value_type>& y) {
    for (int i = 0; i < 4; ++i)
        if (!r.equal(x[i], y[i])) return false;
    return true;
}

// The factor ((0,1),(1,a)).
template <RingArith A>
Mat2<typename A::value_type> transfer_factor(const A& r, const typename A::value_type& a) {
    return {r.zero(), r.one(), r.one(), a};
}

// P_k, Q_k and their opposites for k = -1..K, stored with offset +1.
template <RingArith A>
struct ContinuantQuad {
    using V = typename A::value_type;
    std::vector<V> a;  // a(1..K) at a[0..K-1]
    std::vector<V> P, Q, Pop, Qop;

    int k() const { return static_cast<int>(a.size()); }
    const V& p(int i) const { return P.at(static_cast<std::size_t>(i + 1)); }
    const V& q(int i) const { return Q.at(static_cast<std::size_t>(i + 1)); }
    const V& pop(int i) const { return Pop.at(static_cast<std::size_t>(i + 1)); }
    const V& qop(int i) const { return Qop.at(static_cast<std::size_t>(i + 1)); }
};

template <RingArith A>
ContinuantQuad<A> build_quad(const A& r, const std::vector<typename A::value_type>& a) {
    ContinuantQuad<A> out;
    out.a = a;
    // Seeds: P_{-1} = 1, P_0 = 0, Q_{-1} = 0, Q_0 = 1.
    out.P = {r.one(), r.zero()};
    out.Q = {r.zero(), r.one()};
    out.Pop = out.P;
    out.Qop = out.Q;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ai = a[i];
        const std::size_t cur = i + 1;  // index of P_{i}
        out.P.push_back(r.add(out.P[cur - 1], r.mul(ai, out.P[cur])));
        out.Q.push_back(r.add(out.Q[cur - 1], r.mul(ai, out.Q[cur])));
        out.Pop.push_back(r.add(out.Pop[cur - 1], r.mul(out.Pop[cur], ai)));
        out.Qop.push_back(r.add(out.Qop[cur - 1], r.mul(out.Qop[cur], ai)));
    }
    return out;
}

template <RingArith A>
typename A::value_type continuant_Q(const A& r, const std::vector<typename A::value_type>& a) {
    typename A::value_type prev = r.zero(), cur = r.one();
    for (const auto& x : a) {
        auto next = r.add(prev, r.mul(x, cur));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// 𝒫_k = ((P_{k-1}, Q_{k-1}), (P_k, Q_k)).
template <RingArith A>
Mat2<typename A::value_type> transfer(const ContinuantQuad<A>& quad, int k) {
    return {quad.p(k - 1), quad.q(k - 1), quad.p(k), quad.q(k)};
}

// 𝒫_k^op = ((Pop_{k-1}, Pop_k), (Qop_{k-1}, Qop_k)).
template <RingArith A>
Mat2<typename A::value_type> transfer_op(const ContinuantQuad<A>& quad, int k) {
    return {quad.pop(k - 1), quad.pop(k), quad.qop(k - 1), quad.qop(k)};
}

// Factor matrices for a(k) down to a(1).
template <RingArith A>
Mat2<typename A::value_type> factor_product(const A& r, const std::vector<typename A::value_type>& a, int k) {
    auto m = mat2_identity(r);
    for (int i = k; i >= 1; --i) m = mat2_mul(r, m, transfer_factor(r, a[static_cast<std::size_t>(i - 1)]));
    return m;
}

template <RingArith A>
typename A::value_type sign_power(const A& r, int k) {
    return (k % 2 == 0) ? r.one() : r.neg(r.one());
}

// (-1)^k ((Qop_k, -Qop_{k-1}), (-Pop_k, Pop_{k-1})); throws unless it inverts 𝒫_k on both sides.
template <RingArith A>
Mat2<typename A::value_type> invert_transfer(const A& r, const ContinuantQuad<A>& quad, int k) {
    auto s = sign_power(r, k);
    Mat2<typename A::value_type> inv{r.mul(s, quad.qop(k)), r.neg(r.mul(s, quad.qop(k - 1))),
                                     r.neg(r.mul(s, quad.pop(k))), r.mul(s, quad.pop(k - 1))};
    auto Pk = transfer(quad, k);
    auto id = mat2_identity(r);
    if (!mat2_equal(r, mat2_mul(r, Pk, inv), id) || !mat2_equal(r, mat2_mul(r, inv, Pk), id))
        throw std::logic_error("transfer inverse formula failed at k=" + std::to_string(k));
    return inv;
}

struct IdentityResult {
    std::string name;
    bool pass = true;
    int first_failing_k = -1;
};

inline const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names{
        "P_k Qop_k = Q_k Pop_k",
        "P_{k-1} Qop_k - Q_{k-1} Pop_k = (-1)^k",
        "Q_k Pop_{k-1} - P_k Qop_{k-1} = (-1)^k",
        "Qop_k P_{k-1} - Qop_{k-1} P_k = (-1)^k",
        "Pop_{k-1} Q_k - Pop_k Q_{k-1} = (-1)^k",
        "Qop_k Q_{k-1} = Qop_{k-1} Q_k",
        "Pop_k P_{k-1} = Pop_{k-1} P_k",
    };
    return names;
}

// All seven identity families for k = 1..K; k = 0 is vacuous.
template <RingArith A>
std::vector<IdentityResult> check_identities(const A& r, const ContinuantQuad<A>& qd) {
    std::vector<IdentityResult> out;
    for (const auto& n : identity_names()) out.push_back({n, true, -1});
    auto record = [&](std::size_t idx, bool ok, int k) {
        if (!ok && out[idx].pass) {
            out[idx].pass = false;
            out[idx].first_failing_k = k;
        }
    };
    for (int k = 1; k <= qd.k(); ++k) {
        auto s = sign_power(r, k);
        record(0, r.equal(r.mul(qd.p(k), qd.qop(k)), r.mul(qd.q(k), qd.pop(k))), k);
        record(1, r.equal(r.sub(r.mul(qd.p(k - 1), qd.qop(k)), r.mul(qd.q(k - 1), qd.pop(k))), s), k);
        record(2, r.equal(r.sub(r.mul(qd.q(k), qd.pop(k - 1)), r.mul(qd.p(k), qd.qop(k - 1))), s), k);
        record(3, r.equal(r.sub(r.mul(qd.qop(k), qd.p(k - 1)), r.mul(qd.qop(k - 1), qd.p(k))), s), k);
        record(4, r.equal(r.sub(r.mul(qd.pop(k - 1), qd.q(k)), r.mul(qd.pop(k), qd.q(k - 1))), s), k);
        record(5, r.equal(r.mul(qd.qop(k), qd.q(k - 1)), r.mul(qd.qop(k - 1), qd.q(k))), k);
        record(6, r.equal(r.mul(qd.pop(k), qd.p(k - 1)), r.mul(qd.pop(k - 1), qd.p(k))), k);
    }
    return out;
}

template <RingArith A>
bool all_pass(const std::vector<IdentityResult>& rs) {
    for (const auto& x : rs)
        if (!x.pass) return false;
    return true;
}

// Structural checks tying the four sequences together:
// Qop_k(a) = Q_k(reversed a), P_k(a) = Q_{k-1}(a(2..k)), 𝒫_k = factor product.
template <RingArith A>
bool check_structure(const A& r, const ContinuantQuad<A>& qd) {
    using V = typename A::value_type;
    for (int k = 1; k <= qd.k(); ++k) {
        std::vector<V> prefix(qd.a.begin(), qd.a.begin() + k);
        std::vector<V> rev(prefix.rbegin(), prefix.rend());
        if (!r.equal(qd.qop(k), continuant_Q(r, rev))) return false;
        std::vector<V> tail(prefix.begin() + 1, prefix.end());
        if (!r.equal(qd.p(k), continuant_Q(r, tail))) return false;
        if (!mat2_equal(r, transfer(qd, k), factor_product(r, qd.a, k))) return false;
        if (k >= 2) {
            auto step = mat2_mul(r, transfer_factor(r, qd.a[static_cast<std::size_t>(k - 1)]), transfer(qd, k - 1));
            if (!mat2_equal(r, step, transfer(qd, k))) return false;
        }
    }
    return true;
}

// J 𝒫_k^{-1} J^{-1} = (-1)^k 𝒫_k^op with J = ((0,-1),(1,0)).
template <RingArith A>
bool op_conjugation_identity(const A& r, const ContinuantQuad<A>& quad, int k) {
    const auto z = r.zero(), o = r.one(), m = r.neg(r.one());
    Mat2<typename A::value_type> J{z, m, o, z}, Jinv{z, o, m, z};
    auto lhs = mat2_mul(r, mat2_mul(r, J, invert_transfer(r, quad, k)), Jinv);
    auto s = sign_power(r, k);
    auto op = transfer_op(quad, k);
    for (auto& x : op) x = r.mul(s, x);
    return mat2_equal(r, lhs, op);
}

// Q_N(b) = Qop_m(b(N..N+1-m)) Q_{N-m}(b(1..N-m)) + Qop_{m-1}(b(N..N+2-m)) Q_{N-m-1}(b(1..N-m-1)).
template <RingArith A>
bool splitting_identity(const A& r, const std::vector<typename A::value_type>& b, int m) {
    using V = typename A::value_type;
    const int N = static_cast<int>(b.size());
    if (m <= 0 || m >= N) throw std::invalid_argument("splitting_identity needs 0 < m < N");
    auto slice = [&](int lo, int hi) {  // b(lo..hi), 1-based inclusive
        std::vector<V> s;
        for (int i = lo; i <= hi; ++i) s.push_back(b[static_cast<std::size_t>(i - 1)]);
        return s;
    };
    auto qop_desc = [&](int lo, int hi) {
        // Qop of the descending list b(hi..lo) equals Q of the ascending list.
        return continuant_Q(r, slice(lo, hi));
    };
    V lhs = continuant_Q(r, b);
    V t1 = r.mul(qop_desc(N + 1 - m, N), continuant_Q(r, slice(1, N - m)));
    V t2 = r.mul(qop_desc(N + 2 - m, N), continuant_Q(r, slice(1, N - m - 1)));
    return r.equal(lhs, r.add(t1, t2));
}

// Index words of Q_k: first index has k's parity, terminal index odd,
// strictly descending with odd gaps; the empty word iff k is even.
std::vector<std::vector<int>> word_model(int k);
FreePoly word_model_poly(int k);
std::uint64_t fibonacci(int k);  // f(0) = f(1) = 1

struct InvertibilityTransfer {
    bool q_invertible = false;
    bool qop_invertible = false;
    bool closed_form_matches = true;  // only meaningful when q_invertible
    std::optional<Elem> qop_inverse;
    bool consistent() const { return q_invertible == qop_invertible && closed_form_matches; }
};
// Q_k invertible iff Qop_k invertible, with inverse (-1)^k (P_{k-1} - Q_{k-1} Q_k^{-1} P_k).
InvertibilityTransfer op_transfer_invertibility(const FiniteRing& R, const std::vector<Elem>& a);

struct ZeroTransfer {
    bool q_zero = false;
    bool qop_zero = false;
    bool q_prev_invertible = false;
    bool p_invertible = false;
    bool holds() const { return q_zero == qop_zero && (!q_zero || (q_prev_invertible && p_invertible)); }
};
ZeroTransfer zero_transfer(const FiniteRing& R, const std::vector<Elem>& a);

// det Q_k = det Qop_k over mat(N, commutative).
bool det_equality(const MatrixRing& M, const std::vector<Elem>& a);

// x with Q_i(x(1..i)) = c(i) for all i; c(i) invertible for i < l.
std::vector<Elem> solve_prefix_equations(const FiniteRing& R, const std::vector<Elem>& c);

// Membership bitmap of the commutator subgroup of the unit group.
std::vector<char> unit_derived_subgroup(const FiniteRing& R);
// Q_k^{-1} Qop_k in the commutator subgroup, provided Q_i(a(k+1-i..k)) is a unit
// for every i <= k; nullopt when that hypothesis fails.
std::optional<bool> op_ratio_in_derived(const FiniteRing& R, const std::vector<Elem>& a,
                                        const std::vector<char>& derived);

}  // namespace wedder
