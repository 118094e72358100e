#include "wedder/pe2.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace wedder::pe2 {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

Elem require_inverse(const FiniteRing& R, Elem x, const char* what) {
    auto inv = R.inverse(x);
    if (!inv) throw RingError(std::string(what) + ": " + R.format(x) + " is not a unit");
    return *inv;
}

M2 e_matrix(const FiniteRing& R, Elem a) { return {R.zero(), R.one(), R.one(), a}; }

}  // namespace

M2 mul(const FiniteRing& R, const M2& x, const M2& y) {
    return {R.add(R.mul(x[0], y[0]), R.mul(x[1], y[2])), R.add(R.mul(x[0], y[1]), R.mul(x[1], y[3])),
            R.add(R.mul(x[2], y[0]), R.mul(x[3], y[2])), R.add(R.mul(x[2], y[1]), R.mul(x[3], y[3]))};
}

M2 identity(const FiniteRing& R) { return {R.one(), R.zero(), R.zero(), R.one()}; }

M2 generator_matrix(const FiniteRing& R, const Generator& g) {
    switch (g.kind) {
        case Generator::Kind::E:
            return e_matrix(R, g.a);
        case Generator::Kind::T:
            return {R.one(), g.a, R.zero(), R.one()};
        case Generator::Kind::J:
            return {R.zero(), R.one(), R.one(), R.zero()};
        case Generator::Kind::M:
            require_inverse(R, g.a, "m(r,s)");
            require_inverse(R, g.b, "m(r,s)");
            return {g.a, R.zero(), R.zero(), g.b};
    }
    throw std::logic_error("unknown generator");
}

M2 word_matrix(const FiniteRing& R, const GroupWord& w) {
    M2 out = identity(R);
    for (const auto& g : w) out = mul(R, out, generator_matrix(R, g));
    return out;
}

GroupWord inverse_word(const FiniteRing& R, const GroupWord& w) {
    GroupWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        switch (it->kind) {
            case Generator::Kind::E:
                out.push_back(Generator::e(0));
                out.push_back(Generator::e(R.neg(it->a)));
                out.push_back(Generator::e(0));
                break;
            case Generator::Kind::T:
                out.push_back(Generator::t(R.neg(it->a)));
                break;
            case Generator::Kind::J:
                out.push_back(Generator::j());
                break;
            case Generator::Kind::M:
                out.push_back(Generator::m(require_inverse(R, it->a, "m(r,s)"), require_inverse(R, it->b, "m(r,s)")));
                break;
        }
    }
    return out;
}

GroupWord parse_word(const FiniteRing& R, std::string_view text) {
    GroupWord out;
    text = trim(text);
    if (text.empty()) return out;
    for (const auto& raw : split_top_level(text, ',')) {
        std::string_view tok = trim(raw);
        if (tok == "j") {
            out.push_back(Generator::j());
            continue;
        }
        if (tok.size() < 4 || tok[1] != '(' || tok.back() != ')') throw RingError("bad generator '" + std::string(tok) + "'");
        std::string_view inner = tok.substr(2, tok.size() - 3);
        switch (tok[0]) {
            case 'e':
                out.push_back(Generator::e(R.parse(trim(inner))));
                break;
            case 't':
                out.push_back(Generator::t(R.parse(trim(inner))));
                break;
            case 'm': {
                auto parts = split_top_level(inner, ',');
                if (parts.size() != 2) throw RingError("m(r,s) needs two entries");
                Elem r = R.parse(trim(parts[0])), s = R.parse(trim(parts[1]));
                require_inverse(R, r, "m(r,s)");
                require_inverse(R, s, "m(r,s)");
                out.push_back(Generator::m(r, s));
                break;
            }
            default:
                throw RingError("bad generator '" + std::string(tok) + "'");
        }
    }
    return out;
}

std::string format_word(const FiniteRing& R, const GroupWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        const auto& g = w[i];
        switch (g.kind) {
            case Generator::Kind::E:
                s += "e(" + R.format(g.a) + ")";
                break;
            case Generator::Kind::T:
                s += "t(" + R.format(g.a) + ")";
                break;
            case Generator::Kind::J:
                s += "j";
                break;
            case Generator::Kind::M:
                s += "m(" + R.format(g.a) + "," + R.format(g.b) + ")";
                break;
        }
    }
    return s;
}

std::uint64_t encode(const FiniteRing& R, const M2& x) {
    const std::uint64_t S = R.size();
    return x[0] + S * (x[1] + S * (x[2] + S * x[3]));
}

M2 decode(const FiniteRing& R, std::uint64_t code) {
    const std::uint64_t S = R.size();
    M2 x;
    for (auto& v : x) {
        v = code % S;
        code /= S;
    }
    return x;
}

std::uint64_t projective_code(const FiniteRing& R, const M2& x) {
    std::uint64_t best = encode(R, x);
    for (Elem l : R.central_units()) {
        M2 y{R.mul(l, x[0]), R.mul(l, x[1]), R.mul(l, x[2]), R.mul(l, x[3])};
        best = std::min(best, encode(R, y));
    }
    return best;
}

bool projectively_equal(const FiniteRing& R, const M2& x, const M2& y) {
    return projective_code(R, x) == projective_code(R, y);
}

GroupWord NormalWord::word() const {
    GroupWord w;
    for (Elem x : a) w.push_back(Generator::e(x));
    w.push_back(Generator::m(r, s));
    return w;
}

bool is_normal(const NormalWord& w) {
    for (int i = 1; i + 1 < w.k(); ++i)
        if (w.a[static_cast<std::size_t>(i)] == 0) return false;
    return !(w.k() == 2 && w.a[0] == 0 && w.a[1] == 0);
}

NormalWord normalize(const FiniteRing& R, const GroupWord& w) {
    NormalWord out;
    out.r = R.one();
    out.s = R.one();
    auto& st = out.a;
    auto reduce = [&] {
        for (;;) {
            const std::size_t n = st.size();
            if (n >= 2 && st[n - 1] == 0 && st[n - 2] == 0) {
                st.resize(n - 2);
                continue;
            }
            if (n >= 3 && st[n - 2] == 0) {
                Elem x = R.add(st[n - 3], st[n - 1]);
                st.resize(n - 3);
                st.push_back(x);
                continue;
            }
            return;
        }
    };
    // Invariant: processed prefix = e_{st[0]} ... e_{st.back()} m_{r,s}.
    auto push_e = [&](Elem a) {
        Elem rinv = require_inverse(R, out.r, "normalize");
        st.push_back(R.mul(R.mul(out.s, a), rinv));
        std::swap(out.r, out.s);
        reduce();
    };
    for (const auto& g : w) {
        switch (g.kind) {
            case Generator::Kind::E:
                push_e(g.a);
                break;
            case Generator::Kind::T:
                push_e(0);
                push_e(g.a);
                break;
            case Generator::Kind::J:
                push_e(0);
                break;
            case Generator::Kind::M:
                require_inverse(R, g.a, "m(r,s)");
                require_inverse(R, g.b, "m(r,s)");
                out.r = R.mul(out.r, g.a);
                out.s = R.mul(out.s, g.b);
                break;
        }
    }
    if (word_matrix(R, out.word()) != word_matrix(R, w)) throw std::logic_error("normalize changed the element");
    return out;
}

OrdValue OrdValue::predecessor() const { return OrdValue(rank_ > 0 ? rank_ - 1 : 0); }

std::string OrdValue::str() const {
    if (rank_ == 0) return "0";
    const int m = (rank_ + 2) / 3;
    switch (rank_ - 3 * m) {
        case -2:
            return std::to_string(2 * m - 1) + "/2";
        case -1:
            return std::to_string(m) + "-";
        default:
            return std::to_string(m);
    }
}

OrdValue OrdValue::parse(std::string_view text) {
    text = trim(text);
    auto to_int = [](std::string_view s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || v < 0) throw std::invalid_argument("bad ord value");
        return v;
    };
    if (text.empty()) throw std::invalid_argument("bad ord value");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        if (text.substr(slash + 1) != "2") throw std::invalid_argument("bad ord value");
        int num = to_int(text.substr(0, slash));
        if (num % 2 == 0) throw std::invalid_argument("bad ord value");
        return half_below((num + 1) / 2);
    }
    if (text.back() == '-') {
        int m = to_int(text.substr(0, text.size() - 1));
        if (m < 1) throw std::invalid_argument("bad ord value");
        return minus(m);
    }
    return whole(to_int(text));
}

OrdValue ord_of_word(const NormalWord& w) {
    if (!is_normal(w)) throw std::invalid_argument("ord_of_word: word is not in normal form");
    const int k = w.k();
    if (k == 0) return OrdValue::whole(0);
    if (k == 1) return w.a[0] == 0 ? OrdValue::minus(1) : OrdValue::whole(1);
    const bool top_zero = w.a.front() == 0;  // a(k)
    const bool low_zero = w.a.back() == 0;   // a(1)
    if (top_zero && low_zero) return OrdValue::whole(k - 2);
    if (top_zero) return OrdValue::half_below(k - 1);
    if (low_zero) return OrdValue::minus(k);
    return OrdValue::whole(k);
}

// ------------------------------------------------------------------ Group

Group::Group(FiniteRingPtr R, std::size_t max_order) : R_(std::move(R)) {
    const FiniteRing& ring = *R_;
    const std::uint64_t S = ring.size();
    if (S > 65535) throw RingError("PE(2,R) enumeration needs |R| < 65536");

    std::vector<M2> gens, gens_inv;
    for (Elem a = 0; a < S; ++a) {
        gens.push_back(e_matrix(ring, a));
        gens_inv.push_back({ring.neg(a), ring.one(), ring.one(), ring.zero()});
    }
    for (Elem u : ring.units()) {
        if (u == ring.one()) continue;
        Elem ui = *ring.inverse(u);
        gens.push_back({u, 0, 0, ring.one()});
        gens_inv.push_back({ui, 0, 0, ring.one()});
        gens.push_back({ring.one(), 0, 0, u});
        gens_inv.push_back({ring.one(), 0, 0, ui});
    }

    std::vector<Index> parent;
    std::vector<std::uint32_t> via;
    auto add = [&](const M2& x, Index par, std::uint32_t g) -> bool {
        std::uint64_t code = projective_code(ring, x);
        if (index_.count(code)) return false;
        if (mats_.size() >= max_order) throw RingError("PE(2," + ring.descriptor() + ") exceeds the order limit");
        index_.emplace(code, static_cast<Index>(mats_.size()));
        mats_.push_back(decode(ring, code));
        parent.push_back(par);
        via.push_back(g);
        return true;
    };
    add(pe2::identity(ring), 0, 0);
    for (std::size_t i = 0; i < mats_.size(); ++i)
        for (std::uint32_t g = 0; g < gens.size(); ++g) add(pe2::mul(ring, gens[g], mats_[i]), static_cast<Index>(i), g);

    const std::size_t n = mats_.size();
    etab_.resize(S * n);
    for (Elem a = 0; a < S; ++a)
        for (std::size_t g = 0; g < n; ++g) etab_[a * n + g] = index_of(pe2::mul(ring, gens[a], mats_[g]));

    // g = gen * parent, so g^-1 = parent^-1 * gen^-1.
    inv_.assign(n, 0);
    for (std::size_t g = 1; g < n; ++g) inv_[g] = index_of(pe2::mul(ring, mats_[inv_[parent[g]]], gens_inv[via[g]]));

    std::vector<char> seen(n, 0);
    for (Elem r : ring.units())
        for (Elem s : ring.units()) {
            Index m = index_of({r, 0, 0, s});
            if (!seen[m]) {
                seen[m] = 1;
                mult_.push_back(m);
            }
        }
}

std::optional<Group::Index> Group::find(const M2& x) const {
    auto it = index_.find(projective_code(*R_, x));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Group::Index Group::index_of(const M2& x) const {
    auto f = find(x);
    if (!f) throw std::logic_error("element outside the enumerated group");
    return *f;
}

Group::Index Group::mul(Index x, Index y) const { return index_of(pe2::mul(*R_, mats_[x], mats_[y])); }

Group::Index Group::commutator(Index x, Index y) const { return mul(mul(inv_[x], inv_[y]), mul(x, y)); }

std::vector<char> Group::e_closure(const std::vector<std::vector<Elem>>& gens) const {
    std::vector<char> in(size(), 0);
    std::vector<Index> queue{identity()};
    in[identity()] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto& g : gens) {
            Index y = queue[q];
            for (auto it = g.rbegin(); it != g.rend(); ++it) y = e_mul(*it, y);
            if (!in[y]) {
                in[y] = 1;
                queue.push_back(y);
            }
        }
    return in;
}

namespace {

// Adds newgen to the subgroup {elems} already closed under gens.
void extend_closure(const Group& G, std::vector<char>& in, std::vector<Group::Index>& elems,
                    const std::vector<Group::Index>& gens, Group::Index newgen) {
    std::vector<Group::Index> queue;
    const std::size_t old = elems.size();
    for (std::size_t i = 0; i < old; ++i) {
        auto y = G.mul(newgen, elems[i]);
        if (!in[y]) {
            in[y] = 1;
            elems.push_back(y);
            queue.push_back(y);
        }
    }
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (auto g : gens) {
            auto y = G.mul(g, queue[q]);
            if (!in[y]) {
                in[y] = 1;
                elems.push_back(y);
                queue.push_back(y);
            }
        }
}

}  // namespace

std::vector<char> Group::closure(const std::vector<Index>& gens) const {
    std::vector<char> in(size(), 0);
    std::vector<Index> elems{identity()};
    in[identity()] = 1;
    std::vector<Index> used;
    for (Index g : gens) {
        if (in[g]) continue;
        used.push_back(g);
        extend_closure(*this, in, elems, used, g);
    }
    return in;
}

std::vector<char> Group::normal_closure(const std::vector<Index>& gens, const std::vector<Index>& conj) const {
    std::vector<char> in(size(), 0);
    std::vector<Index> elems{identity()};
    in[identity()] = 1;
    std::vector<Index> used, work;
    auto add = [&](Index g) {
        if (in[g]) return;
        used.push_back(g);
        work.push_back(g);
        extend_closure(*this, in, elems, used, g);
    };
    for (Index g : gens) add(g);
    while (!work.empty()) {
        Index x = work.back();
        work.pop_back();
        for (Index c : conj) add(mul(mul(inv_[c], x), c));
        if (elems.size() == size()) break;
    }
    return in;
}

std::size_t count(const std::vector<char>& set) {
    return static_cast<std::size_t>(std::count(set.begin(), set.end(), 1));
}

// ------------------------------------------------------------------ ord

OrdTable compute_ord(const Group& G) {
    const std::size_t n = G.size();
    const Elem S = G.ring().size();
    constexpr int kUnset = -1;
    OrdTable t;
    t.rank.assign(n, kUnset);
    std::size_t assigned = 0;
    auto assign = [&](const std::vector<char>& set, int rank) {
        for (std::size_t g = 0; g < n; ++g)
            if (set[g] && (t.rank[g] == kUnset || rank < t.rank[g])) {
                if (t.rank[g] == kUnset) ++assigned;
                t.rank[g] = rank;
            }
    };
    auto left = [&](const std::vector<char>& from, bool zero) {
        std::vector<char> to(n, 0);
        for (std::size_t g = 0; g < n; ++g) {
            if (!from[g]) continue;
            if (zero) {
                to[G.e_mul(0, static_cast<Group::Index>(g))] = 1;
            } else {
                for (Elem a = 1; a < S; ++a) to[G.e_mul(a, static_cast<Group::Index>(g))] = 1;
            }
        }
        return to;
    };

    std::vector<char> M(n, 0);
    for (auto m : G.multipliers()) M[m] = 1;
    assign(M, 0);
    // D[y]: words e_{a(k)} ... e_{a(1)} m with a(k) != 0 (k >= 2), y = [a(1) == 0].
    std::vector<char> D0 = left(M, false), D1 = left(M, true);
    assign(D0, OrdValue::whole(1).rank());
    assign(D1, OrdValue::minus(1).rank());
    int k = 1;
    for (;;) {
        auto current_max = [&] {
            int mx = 0;
            for (int r : t.rank) mx = std::max(mx, r);
            return mx;
        };
        if (assigned == n && 3 * (k + 1) - 6 > current_max()) break;
        ++k;
        if (k > 256) throw std::logic_error("compute_ord did not terminate");
        auto Z0 = left(D0, true), Z1 = left(D1, true);
        auto N0 = left(D0, false), N1 = left(D1, false);
        assign(Z0, OrdValue::half_below(k - 1).rank());
        if (k >= 3) assign(Z1, OrdValue::whole(k - 2).rank());
        assign(N0, OrdValue::whole(k).rank());
        assign(N1, OrdValue::minus(k).rank());
        D0 = std::move(N0);
        D1 = std::move(N1);
    }
    t.layers = k;
    t.max_rank = *std::max_element(t.rank.begin(), t.rank.end());
    return t;
}

// ------------------------------------------------------------------ multipliers

GroupWord s_word(const std::vector<Elem>& a) {
    GroupWord w;
    for (auto it = a.rbegin(); it != a.rend(); ++it) w.push_back(Generator::e(*it));
    return w;
}

MultiplierCompletion complete_to_multiplier(const FiniteRing& R, const std::vector<Elem>& prefix) {
    FiniteArith r(R);
    const int k = static_cast<int>(prefix.size()) + 2;
    if (k < 3) throw std::invalid_argument("complete_to_multiplier needs a nonempty prefix");
    auto q0 = build_quad(r, prefix);
    auto qinv = R.inverse(q0.q(k - 2));
    if (!qinv) throw std::invalid_argument("complete_to_multiplier: Q_{k-2} is not a unit");
    std::vector<Elem> a = prefix;
    a.push_back(R.neg(R.mul(q0.q(k - 3), *qinv)));
    auto q1 = build_quad(r, a);
    Elem xinv = require_inverse(R, q1.p(k - 1), "complete_to_multiplier");
    a.push_back(R.neg(R.mul(q1.p(k - 2), xinv)));
    auto q = build_quad(r, a);
    if (q.p(k) != 0 || q.q(k - 1) != 0) throw std::logic_error("complete_to_multiplier: P_k or Q_{k-1} nonzero");
    MultiplierCompletion out{a, q.p(k - 1), q.q(k)};
    if (out.s != q.q(k - 2)) throw std::logic_error("complete_to_multiplier: Q_k != Q_{k-2}");
    M2 diag{out.r, 0, 0, out.s};
    if (word_matrix(R, s_word(a)) != diag) throw std::logic_error("complete_to_multiplier: word is not diagonal");
    return out;
}

GroupWord fivfiv_word(const FiniteRing& R, Elem z) {
    Elem zi = require_inverse(R, z, "fivfiv");
    return {Generator::e(R.sub(zi, R.one())), Generator::e(R.one()), Generator::e(R.sub(z, R.one())),
            Generator::e(R.neg(zi))};
}

GroupWord fivfiv_word_as_printed(const FiniteRing& R, Elem z) {
    Elem zi = require_inverse(R, z, "fivfiv");
    return {Generator::e(zi), Generator::e(R.one()), Generator::e(R.sub(z, R.one())), Generator::e(R.neg(zi))};
}

// ------------------------------------------------------------------ stable range

StableRangeReport stable_range_report(const FiniteRing& R, const Group* G, const OrdTable* ord) {
    const Elem S = R.size();
    if (S > 4096) throw RingError("stable_range_report: ring too large for exhaustive checks");
    StableRangeReport rep;
    std::vector<char> unit(S, 0);
    for (Elem u : R.units()) unit[u] = 1;
    // Left ideals Ra as membership bitmaps.
    std::vector<std::vector<char>> Ra(S, std::vector<char>(S, 0));
    for (Elem a = 0; a < S; ++a)
        for (Elem x = 0; x < S; ++x) Ra[a][R.mul(x, a)] = 1;
    rep.sr1 = true;
    for (Elem a = 0; a < S && rep.sr1; ++a)
        for (Elem c = 0; c < S; ++c) {
            bool unimodular = false;
            for (Elem u = 0; u < S && !unimodular; ++u)
                if (Ra[a][u] && Ra[c][R.sub(R.one(), u)]) unimodular = true;
            if (!unimodular) continue;
            ++rep.unimodular_pairs;
            bool ok = false;
            for (Elem d = 0; d < S && !ok; ++d) ok = unit[R.add(a, R.mul(d, c))];
            if (!ok) {
                rep.sr1 = false;
                break;
            }
        }
    rep.q3_witnesses = true;
    for (Elem x = 0; x < S && rep.q3_witnesses; ++x)
        for (Elem y = 0; y < S; ++y) {
            Elem w = R.add(R.one(), R.mul(y, x));
            bool ok = false;
            for (Elem c = 0; c < S && !ok; ++c) ok = unit[R.add(x, R.mul(c, w))];
            if (!ok) {
                rep.q3_witnesses = false;
                break;
            }
        }
    rep.equivalences_hold = rep.sr1 == rep.q3_witnesses;
    if (G && ord) {
        rep.max_ord = ord->max();
        rep.equivalences_hold = rep.equivalences_hold && ((*rep.max_ord <= OrdValue::half_below(3)) == rep.sr1);
    }
    return rep;
}

QsrReport qsr_condition(const FiniteRing& R, int n, const Group* G, const OrdTable* ord) {
    if (n < 1) throw std::invalid_argument("qsr_condition needs n >= 1");
    const Elem S = R.size();
    double space = 1;
    for (int i = 0; i < 2 * n + 1; ++i) space *= static_cast<double>(S);
    if (space > 5e8) throw RingError("qsr_condition: state space too large");
    FiniteArith r(R);
    QsrReport rep;
    rep.n = n;
    rep.condition = true;
    std::vector<Elem> a(static_cast<std::size_t>(n + 1), 0);
    auto next = [S](std::vector<Elem>& v) {
        for (auto& x : v) {
            if (++x < S) return true;
            x = 0;
        }
        return false;
    };
    do {
        std::vector<Elem> b(static_cast<std::size_t>(n), 0);
        bool found = false;
        do {
            std::vector<Elem> full = a;
            full.insert(full.end(), b.begin(), b.end());
            found = R.is_unit(continuant_Q(r, full));
        } while (!found && next(b));
        if (!found) {
            rep.condition = false;
            break;
        }
    } while (next(a));
    if (G && ord) {
        std::vector<std::vector<Elem>> gens;
        for (Elem x = 0; x < S; ++x)
            for (Elem y = 0; y < S; ++y) gens.push_back({x, y});
        auto pe2 = G->e_closure(gens);
        int mx = 0;
        for (std::size_t g = 0; g < G->size(); ++g)
            if (pe2[g]) mx = std::max(mx, ord->rank[g]);
        rep.max_ord_pe2 = OrdValue::from_rank(mx);
        rep.ord_bound = *rep.max_ord_pe2 <= OrdValue::half_below(n + 2);
    }
    return rep;
}

// ------------------------------------------------------------------ subgroups

namespace {

// Drops generators already in the span of earlier ones.
std::vector<Group::Index> reduce_generators(const Group& G, const std::vector<Group::Index>& gens) {
    std::vector<char> in(G.size(), 0);
    std::vector<Group::Index> elems{G.identity()};
    in[G.identity()] = 1;
    std::vector<Group::Index> kept;
    for (auto g : gens) {
        if (in[g]) continue;
        kept.push_back(g);
        extend_closure(G, in, elems, kept, g);
    }
    return kept;
}

std::vector<Group::Index> members(const std::vector<char>& set) {
    std::vector<Group::Index> out;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set[i]) out.push_back(static_cast<Group::Index>(i));
    return out;
}

}  // namespace

SubgroupReport subgroup_lattice_checks(const Group& G, std::size_t max_order) {
    if (G.size() > max_order) throw RingError("subgroup_lattice_checks: group too large");
    const FiniteRing& R = G.ring();
    const Elem S = R.size();
    SubgroupReport rep;
    rep.pe_order = G.size();

    std::vector<std::vector<Elem>> g1, g2;
    for (Elem a = 0; a < S; ++a) g1.push_back({a});
    for (Elem a = 0; a < S; ++a)
        for (Elem b = 0; b < S; ++b) g2.push_back({a, b});
    auto pe1 = G.e_closure(g1);
    auto pe2 = G.e_closure(g2);
    rep.pe1_order = count(pe1);
    rep.pe2_order = count(pe2);
    rep.pe1_index = rep.pe1_order / rep.pe2_order;

    std::vector<Group::Index> pe_gens;
    for (Elem a = 0; a < S; ++a) pe_gens.push_back(G.e_mul(a, G.identity()));
    for (auto m : G.multipliers()) pe_gens.push_back(m);
    pe_gens = reduce_generators(G, pe_gens);

    std::vector<Group::Index> pe2_gens;
    for (Elem a = 0; a < S; ++a)
        for (Elem b = 0; b < S; ++b) pe2_gens.push_back(G.e_mul(a, G.e_mul(b, G.identity())));
    pe2_gens = reduce_generators(G, pe2_gens);

    auto commutators = [&](const std::vector<Group::Index>& gens) {
        std::vector<Group::Index> c;
        for (auto x : gens)
            for (auto y : gens) c.push_back(G.commutator(x, y));
        return c;
    };
    auto derived_pe = G.normal_closure(commutators(pe_gens), pe_gens);
    rep.pe2_is_derived = derived_pe == pe2;
    auto derived_pe2 = G.normal_closure(commutators(pe2_gens), pe2_gens);
    rep.pe2_perfect = derived_pe2 == pe2;

    // Conjugacy classes of PE_2 under PE_2, then one normal closure per class.
    std::vector<int> cls(G.size(), -1);
    std::vector<Group::Index> reps;
    for (auto g : members(pe2)) {
        if (cls[g] >= 0) continue;
        const int id = static_cast<int>(reps.size());
        reps.push_back(g);
        std::vector<Group::Index> orbit{g};
        cls[g] = id;
        for (std::size_t q = 0; q < orbit.size(); ++q)
            for (auto c : pe2_gens) {
                auto y = G.mul(G.mul(G.inverse(c), orbit[q]), c);
                if (cls[y] < 0) {
                    cls[y] = id;
                    orbit.push_back(y);
                }
            }
    }
    rep.pe2_conjugacy_classes = reps.size();
    rep.pe2_simple = rep.pe2_order > 1;
    for (auto g : reps) {
        if (g == G.identity()) continue;
        if (count(G.normal_closure({g}, pe2_gens)) != rep.pe2_order) {
            rep.pe2_simple = false;
            break;
        }
    }
    return rep;
}

// ------------------------------------------------------------------ Ord-lowering conjugations

std::optional<ConjugationStep> sevfou_a(const FiniteRing& R, const NormalWord& g) {
    const int k = g.k();
    if (k < 3 || g.a.front() != 0 || g.a.back() == 0 || !is_normal(g)) return std::nullopt;
    GroupWord h{Generator::e(g.a[0]), Generator::e(g.a[1])};
    GroupWord w = inverse_word(R, h);
    auto gw = g.word();
    w.insert(w.end(), gw.begin(), gw.end());
    w.insert(w.end(), h.begin(), h.end());
    return ConjugationStep{h, normalize(R, w)};
}

std::optional<ConjugationStep> sevfou_b(const FiniteRing& R, const NormalWord& g) {
    const int k = g.k();
    if (k < 2 || g.a.front() == 0 || g.a.back() != 0 || !is_normal(g)) return std::nullopt;
    // k = 3: e_{a(3)} e_{a(2)} leaves e_0 e_x e_y; e_{a(3)} e_0 gives e_0 e_z e_0 instead.
    GroupWord h{Generator::e(g.a[0])};
    if (k == 3) h.push_back(Generator::e(0));
    if (k >= 4) h.push_back(Generator::e(g.a[1]));
    GroupWord w = inverse_word(R, h);
    auto gw = g.word();
    w.insert(w.end(), gw.begin(), gw.end());
    w.insert(w.end(), h.begin(), h.end());
    return ConjugationStep{h, normalize(R, w)};
}

// ------------------------------------------------------------------ commutator identities

bool CommutatorReport::all() const {
    auto ok = [](const std::optional<bool>& b) { return !b || *b; };
    return eq3 && throne_ii && ok(throne_iii) && ok(thrfiv_e) && thrfiv_solvable && ok(fivsev_construction) &&
           ok(fivsev_statement) && ok(sevfou);
}

CommutatorReport commutator_identities_check(const FiniteRing& R, std::uint64_t seed, std::size_t samples,
                                             const Group* G) {
    CommutatorReport rep;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    const auto& U = R.units();
    const Elem S = R.size();
    const Elem one = R.one();
    auto unit = [&] { return U[rng() % U.size()]; };
    auto elem = [&] { return static_cast<Elem>(rng() % S); };
    auto t = [&](Elem a) { return M2{one, a, 0, one}; };

    for (std::size_t i = 0; i < samples; ++i) {
        Elem r = unit(), s = unit(), b = elem(), a = elem();
        Elem si = *R.inverse(s), ri = *R.inverse(r);
        M2 lhs = mul(R, mul(R, mul(R, M2{r, 0, 0, si}, t(b)), M2{ri, 0, 0, s}), t(R.neg(b)));
        if (lhs != t(R.sub(R.mul(R.mul(r, b), s), b))) rep.eq3 = false;
        M2 rot{0, R.neg(one), one, 0};
        if (mul(R, t(a), rot) != M2{a, R.neg(one), one, 0}) rep.throne_ii = false;
    }
    {
        M2 x = mul(R, mul(R, mul(R, M2{one, 0, one, one}, M2{0, one, one, 0}), M2{one, 0, R.neg(one), one}),
                   M2{0, one, one, 0});
        if (x != M2{one, R.neg(one), one, 0}) rep.throne_ii = false;
    }
    for (Elem l : R.central_units()) {
        if (R.mul(l, l) != R.neg(one)) continue;
        M2 a1 = mul(R, t(l), M2{one, l, l, 0});
        M2 a2 = mul(R, mul(R, mul(R, M2{one, 0, l, one}, M2{0, R.neg(one), one, 0}), M2{one, 0, R.neg(l), one}),
                    M2{0, one, R.neg(one), 0});
        rep.throne_iii = a1 == M2{0, l, l, 0} && a2 == M2{one, l, l, 0};
        break;
    }

    // Condition (e): companion matrix of x^n - x + 1, and A - I, are units.
    if (auto M = dynamic_cast<const MatrixRing*>(&R); M && M->n() >= 2) {
        const FiniteRing& F = M->inner();
        const unsigned n = M->n();
        Elem A = 0;
        for (unsigned i = 1; i < n; ++i) A = M->with_entry(A, i, i - 1, F.one());
        // Last column is -c with c_0 = 1, c_1 = -1.
        A = M->with_entry(A, 0, n - 1, F.neg(F.one()));
        A = M->with_entry(A, 1, n - 1, F.one());
        rep.thrfiv_e = M->is_unit(A) && M->is_unit(M->sub(A, M->one()));
    }

    // Hypotheses (b)/(d)/(e) force every a to be r b s - b.
    bool hyp = rep.thrfiv_e.value_or(false) || R.is_unit(R.from_int(2));
    for (Elem r : U)
        if (R.is_unit(R.sub(r, one))) hyp = true;
    if (hyp && S <= 256 && U.size() <= 64) {
        for (Elem a = 0; a < S && rep.thrfiv_solvable; ++a) {
            bool found = false;
            for (Elem r : U)
                for (Elem s : U)
                    for (Elem b = 0; b < S && !found; ++b)
                        if (R.sub(R.mul(R.mul(r, b), s), b) == a) found = true;
            rep.thrfiv_solvable = found;
        }
    } else if (hyp) {
        for (Elem r : U) {
            if (!R.is_unit(R.sub(r, one))) continue;
            Elem w = *R.inverse(R.sub(r, one));
            for (std::size_t i = 0; i < samples; ++i) {
                Elem a = elem();
                Elem b = R.mul(w, a);
                if (R.sub(R.mul(r, b), b) != a) rep.thrfiv_solvable = false;
            }
            break;
        }
    }

    // m_{u,1} = m_{c,c^-1} m_{y, x^-1 y^-1 x} with c = x^-1 y^-1 x, u = x^-1 y^-1 x y.
    if (U.size() >= 1) {
        bool ok = true;
        const std::size_t pairs = std::min<std::size_t>(samples, U.size() * U.size());
        for (std::size_t i = 0; i < pairs && ok; ++i) {
            Elem x = (pairs == U.size() * U.size()) ? U[i / U.size()] : unit();
            Elem y = (pairs == U.size() * U.size()) ? U[i % U.size()] : unit();
            Elem xi = *R.inverse(x), yi = *R.inverse(y);
            Elem c = R.mul(R.mul(xi, yi), x);
            Elem u = R.mul(c, y);
            auto comp = complete_to_multiplier(R, {x, R.mul(xi, R.sub(yi, one))});
            GroupWord w = fivfiv_word(R, c);
            auto tail = s_word(comp.a);
            w.insert(w.end(), tail.begin(), tail.end());
            ok = w.size() == 8 && comp.r == y && comp.s == c && projectively_equal(R, word_matrix(R, w), M2{u, 0, 0, one});
        }
        rep.fivsev_construction = ok;
    }

    if (G && U.size() <= 4096) {
        // Products of exactly 12 e-letters.
        std::vector<char> layer(G->size(), 0);
        layer[G->identity()] = 1;
        for (int step = 0; step < 12; ++step) {
            std::vector<char> next(G->size(), 0);
            for (std::size_t g = 0; g < G->size(); ++g)
                if (layer[g])
                    for (Elem a = 0; a < S; ++a) next[G->e_mul(a, static_cast<Group::Index>(g))] = 1;
            layer.swap(next);
        }
        std::vector<char> comm(S, 0);
        for (Elem x : U)
            for (Elem y : U) {
                Elem xi = *R.inverse(x), yi = *R.inverse(y);
                comm[R.mul(R.mul(R.mul(xi, yi), x), y)] = 1;
            }
        bool ok = true;
        for (Elem r : U)
            for (Elem s : U) {
                Elem q = R.mul(*R.inverse(s), r);
                bool hyp_rs = false;
                for (Elem l : R.central_units()) {
                    Elem l2i = *R.inverse(R.mul(l, l));
                    if (comm[R.mul(l2i, q)]) hyp_rs = true;
                }
                if (hyp_rs && !layer[G->index_of(M2{r, 0, 0, s})]) ok = false;
            }
        rep.fivsev_statement = ok;
    }

    // Random normal words through both conjugation moves.
    {
        bool ok = true, any = false;
        for (std::size_t i = 0; i < samples; ++i) {
            const int k = 2 + static_cast<int>(rng() % 6);
            NormalWord g;
            g.r = unit();
            g.s = unit();
            for (int j = 0; j < k; ++j) {
                Elem x = 0;
                if (S > 1)
                    while (x == 0) x = elem();
                g.a.push_back(x);
            }
            if (rng() % 2) g.a.front() = 0;
            else g.a.back() = 0;
            if (!is_normal(g)) continue;
            M2 gm = word_matrix(R, g.word());
            auto check = [&](const std::optional<ConjugationStep>& st, OrdValue bound) {
                if (!st) return;
                any = true;
                GroupWord conj = inverse_word(R, st->conjugator);
                auto gw = g.word();
                conj.insert(conj.end(), gw.begin(), gw.end());
                conj.insert(conj.end(), st->conjugator.begin(), st->conjugator.end());
                if (word_matrix(R, conj) != word_matrix(R, st->result.word())) ok = false;
                if (ord_of_word(st->result) > bound) ok = false;
                (void)gm;
            };
            check(sevfou_a(R, g), OrdValue::whole(k - 2));
            check(sevfou_b(R, g), k >= 3 ? OrdValue::whole(k - 2) : OrdValue::half_below(1));
        }
        if (any) rep.sevfou = ok;
    }
    return rep;
}

}  // namespace wedder::pe2
