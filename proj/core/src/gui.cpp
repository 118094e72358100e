#include "wedder/gui.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <unordered_set>

namespace wedder::gui {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const MatrixRing* as_matrix(const FiniteRing& R) { return dynamic_cast<const MatrixRing*>(&R); }

bool field_matrix(const FiniteRing& R) {
    const auto* M = as_matrix(R);
    return M && M->inner().is_field();
}

// |R|^m, or nullopt past 2^62.
std::optional<std::uint64_t> power_bound(std::uint64_t base, unsigned m) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (base != 0 && v > (1ull << 62) / base) return std::nullopt;
        v *= base;
    }
    return v;
}

Elem inverse_or_throw(const FiniteRing& R, Elem x) {
    auto inv = R.inverse(x);
    if (!inv) throw RingError("expected a unit in " + R.descriptor());
    return *inv;
}

// Laplace expansion along the first row; entries row-major.
Elem det_laplace_entries(const FiniteRing& F, const std::vector<Elem>& a, unsigned n) {
    if (n == 0) return F.one();
    if (n == 1) return a[0];
    Elem d = F.zero();
    for (unsigned j = 0; j < n; ++j) {
        std::vector<Elem> minor;
        minor.reserve((n - 1) * (n - 1));
        for (unsigned i = 1; i < n; ++i)
            for (unsigned c = 0; c < n; ++c)
                if (c != j) minor.push_back(a[i * n + c]);
        Elem term = F.mul(a[j], det_laplace_entries(F, minor, n - 1));
        d = (j % 2 == 0) ? F.add(d, term) : F.sub(d, term);
    }
    return d;
}

// Rank of a set of column vectors over a field.
unsigned vector_rank(const FiniteRing& F, std::vector<std::vector<Elem>> vs) {
    unsigned rk = 0;
    if (vs.empty()) return 0;
    const std::size_t dim = vs[0].size();
    for (std::size_t col = 0; col < dim && rk < vs.size(); ++col) {
        std::size_t piv = rk;
        while (piv < vs.size() && vs[piv][col] == F.zero()) ++piv;
        if (piv == vs.size()) continue;
        std::swap(vs[piv], vs[rk]);
        const Elem inv = inverse_or_throw(F, vs[rk][col]);
        for (std::size_t r = 0; r < vs.size(); ++r) {
            if (r == rk || vs[r][col] == F.zero()) continue;
            const Elem f = F.mul(vs[r][col], inv);
            for (std::size_t c = 0; c < dim; ++c) vs[r][c] = F.sub(vs[r][c], F.mul(f, vs[rk][c]));
        }
        ++rk;
    }
    return rk;
}

std::vector<std::uint64_t> distinct_primes(std::uint64_t m) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            ps.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) ps.push_back(m);
    return ps;
}

// Slot-one representatives under two-sided unit scaling, with their
// stabilizers when small enough to use for the remaining slots.
struct SlotOrbits {
    std::vector<Elem> reps;
    std::vector<std::vector<std::pair<Elem, Elem>>> stab;
    bool stab_known = false;
};

SlotOrbits slot_orbits(const FiniteRing& R) {
    SlotOrbits out;
    const auto& U = R.units();
    const double u2 = static_cast<double>(U.size()) * static_cast<double>(U.size());
    if (field_matrix(R)) {
        const auto& M = *as_matrix(R);
        for (unsigned r = 0; r <= M.n(); ++r) out.reps.push_back(canon::rank_form(M, r));
        if (u2 <= 4e6) {
            out.stab_known = true;
            for (Elem rep : out.reps) {
                std::vector<std::pair<Elem, Elem>> st;
                for (Elem u : U) {
                    const Elem ur = R.mul(u, rep);
                    for (Elem v : U)
                        if (R.mul(ur, v) == rep) st.emplace_back(u, v);
                }
                out.stab.push_back(std::move(st));
            }
        }
        return out;
    }
    if (static_cast<double>(R.size()) * u2 <= 5e7) {
        out.stab_known = true;
        std::vector<char> seen(R.size(), 0);
        for (Elem x = 0; x < R.size(); ++x) {
            if (seen[x]) continue;
            out.reps.push_back(x);
            std::vector<std::pair<Elem, Elem>> st;
            for (Elem u : U) {
                const Elem ux = R.mul(u, x);
                for (Elem v : U) {
                    const Elem y = R.mul(ux, v);
                    seen[y] = 1;
                    if (y == x) st.emplace_back(u, v);
                }
            }
            out.stab.push_back(std::move(st));
        }
        return out;
    }
    out.reps.resize(R.size());
    std::iota(out.reps.begin(), out.reps.end(), Elem{0});
    return out;
}

WitnessCertificate failure_certificate(const FiniteRing& R, const Tuple& s, const GuiOptions& o) {
    WitnessCertificate c;
    c.ring = R.descriptor();
    c.k = static_cast<int>(s.size()) + 1;
    c.tuple = s;
    c.verdict = VerdictKind::ExhaustedFailure;
    c.normalization = {R.one(), R.one()};
    c.normalized = s;
    c.strategy = o.strategy;
    c.seed = o.seed;
    c.stats.tuples = 1;
    c.stats.candidates = R.units().size();
    return c;
}

}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::SubfieldFirst: return "subfield-first";
        case Strategy::FullScan: return "full-scan";
        case Strategy::Sampling: return "sampling";
    }
    return "?";
}

std::string to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::Witness: return "witness";
        case VerdictKind::ExhaustedFailure: return "exhausted-failure";
        case VerdictKind::SampledPass: return "sampled-pass";
        case VerdictKind::ExhaustivePass: return "exhaustive-pass";
    }
    return "?";
}

Strategy parse_strategy(std::string_view s) {
    for (auto x : {Strategy::SubfieldFirst, Strategy::FullScan, Strategy::Sampling})
        if (to_string(x) == s) return x;
    throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

VerdictKind parse_verdict(std::string_view s) {
    for (auto x : {VerdictKind::Witness, VerdictKind::ExhaustedFailure, VerdictKind::SampledPass,
                   VerdictKind::ExhaustivePass})
        if (to_string(x) == s) return x;
    throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- search

WitnessSearch::WitnessSearch(const FiniteRing& R, Strategy strategy, std::uint64_t seed) : R_(R) {
    const auto& U = R.units();
    if (strategy == Strategy::SubfieldFirst && field_matrix(R)) {
        const auto& M = *as_matrix(R);
        auto sub = maximal_subfield(M.n(), M.inner_ptr());
        std::unordered_set<Elem> seen(sub.nonzero.begin(), sub.nonzero.end());
        order_ = sub.nonzero;
        order_.reserve(U.size());
        for (Elem u : U)
            if (!seen.count(u)) order_.push_back(u);
        return;
    }
    order_ = U;
    if (strategy == Strategy::Sampling) {
        std::mt19937_64 rng(seed);
        std::shuffle(order_.begin(), order_.end(), rng);
    }
}

std::optional<Elem> WitnessSearch::find(const Tuple& s, std::uint64_t* tried) const {
    std::uint64_t n = 0;
    std::optional<Elem> hit;
    for (Elem u : order_) {
        ++n;
        bool ok = true;
        for (Elem x : s)
            if (!R_.is_unit(R_.add(u, x))) {
                ok = false;
                break;
            }
        if (ok) {
            hit = u;
            break;
        }
    }
    if (tried) *tried += n;
    return hit;
}

bool is_witness(const FiniteRing& R, const Tuple& s, Elem u) {
    if (u >= R.size() || !R.is_unit(u)) return false;
    return std::all_of(s.begin(), s.end(), [&](Elem x) { return R.is_unit(R.add(u, x)); });
}

std::pair<Normalization, Tuple> normalize_tuple(const FiniteRing& R, const Tuple& s) {
    Normalization nz{R.one(), R.one()};
    auto first = std::find_if(s.begin(), s.end(), [](Elem x) { return x != 0; });
    if (first != s.end()) {
        if (field_matrix(R)) {
            auto rnf = rank_normal_form(*as_matrix(R), *first);
            nz = {rnf.P, rnf.Q};
        } else {
            const auto& U = R.units();
            if (U.size() * U.size() <= 100000) {
                Tuple best = s;
                for (Elem u : U)
                    for (Elem v : U) {
                        Tuple t;
                        t.reserve(s.size());
                        for (Elem x : s) t.push_back(R.mul(R.mul(u, x), v));
                        if (t < best) {
                            best = std::move(t);
                            nz = {u, v};
                        }
                    }
            }
        }
    }
    Tuple t;
    t.reserve(s.size());
    for (Elem x : s) t.push_back(R.mul(R.mul(nz.left, x), nz.right));
    return {nz, t};
}

WitnessCertificate certify_tuple(const FiniteRing& R, const Tuple& s, Strategy strategy, std::uint64_t seed) {
    const auto t0 = Clock::now();
    WitnessCertificate c;
    c.ring = R.descriptor();
    c.k = static_cast<int>(s.size()) + 1;
    c.tuple = s;
    c.strategy = strategy;
    c.seed = seed;
    auto [nz, t] = normalize_tuple(R, s);
    c.normalization = nz;
    c.normalized = t;
    WitnessSearch ws(R, strategy, seed);
    auto w = ws.find(t, &c.stats.candidates);
    c.stats.tuples = 1;
    c.stats.orbit_reps = 1;
    if (w) {
        // w + L s R unit  <=>  L^-1 w R^-1 + s unit.
        const Elem li = inverse_or_throw(R, nz.left), ri = inverse_or_throw(R, nz.right);
        c.witness = R.mul(R.mul(li, *w), ri);
        c.verdict = VerdictKind::Witness;
    } else {
        c.verdict = VerdictKind::ExhaustedFailure;
    }
    c.stats.elapsed_ms = ms_since(t0);
    return c;
}

bool verify_certificate(const FiniteRing& R, const WitnessCertificate& c) {
    if (c.ring != R.descriptor() || c.k != static_cast<int>(c.tuple.size()) + 1) return false;
    for (Elem x : c.tuple)
        if (x >= R.size()) return false;
    if (c.verdict == VerdictKind::Witness) return c.witness && is_witness(R, c.tuple, *c.witness);
    if (c.verdict == VerdictKind::ExhaustedFailure) {
        const auto& U = R.units();
        for (auto it = U.rbegin(); it != U.rend(); ++it)
            if (is_witness(R, c.tuple, *it)) return false;
        return true;
    }
    return false;
}

GuiReport check_gui(const FiniteRing& R, int k, const GuiOptions& options) {
    if (k < 2) throw std::invalid_argument("((k)) needs k >= 2");
    if (options.shards == 0 || options.shard_id >= options.shards) throw std::invalid_argument("bad shard selection");
    const auto t0 = Clock::now();
    GuiReport rep;
    rep.ring = R.descriptor();
    rep.k = k;
    rep.options = options;
    const unsigned m = static_cast<unsigned>(k - 1);
    WitnessSearch ws(R, options.strategy, options.seed);

    auto search = [&](const Tuple& s) {
        ++rep.stats.tuples;
        if (ws.find(s, &rep.stats.candidates)) return true;
        rep.counterexample = failure_certificate(R, s, options);
        return false;
    };
    auto finish = [&](bool pass, VerdictKind v) {
        rep.pass = pass;
        rep.verdict = pass ? v : VerdictKind::ExhaustedFailure;
        rep.stats.elapsed_ms = ms_since(t0);
        return rep;
    };

    if (options.samples) {
        std::mt19937_64 rng(options.seed);
        for (std::uint64_t i = 0; i < *options.samples; ++i) {
            Tuple s(m);
            for (auto& x : s) x = rng() % R.size();
            if (i % options.shards != options.shard_id) continue;
            ++rep.stats.orbit_reps;
            if (!search(s)) return finish(false, VerdictKind::SampledPass);
        }
        return finish(true, VerdictKind::SampledPass);
    }

    auto total = power_bound(R.size(), m);
    if (!total || *total > options.max_tuples)
        throw RingError("exhaustive ((" + std::to_string(k) + ")) over " + R.descriptor() + " exceeds the tuple limit");

    const SlotOrbits orbits = slot_orbits(R);
    const std::uint64_t rest_size = *power_bound(R.size(), m - 1);
    std::uint64_t ordinal = 0;
    auto mine = [&] { return (ordinal++ % options.shards) == options.shard_id; };
    Tuple s(m);

    for (std::size_t ri = 0; ri < orbits.reps.size(); ++ri) {
        s[0] = orbits.reps[ri];
        const bool reduce = orbits.stab_known && orbits.stab[ri].size() > 1 && m >= 2 && rest_size <= (1ull << 30);
        std::vector<bool> visited(reduce ? rest_size : 0, false);
        for (std::uint64_t idx = 0; idx < rest_size; ++idx) {
            if (reduce && visited[idx]) continue;
            std::uint64_t v = idx;
            for (unsigned j = 1; j < m; ++j) {
                s[j] = v % R.size();
                v /= R.size();
            }
            if (reduce) {
                for (const auto& [a, b] : orbits.stab[ri]) {
                    std::uint64_t code = 0, place = 1;
                    for (unsigned j = 1; j < m; ++j) {
                        code += R.mul(R.mul(a, s[j]), b) * place;
                        place *= R.size();
                    }
                    visited[code] = true;
                }
            }
            if (!mine()) continue;
            ++rep.stats.orbit_reps;
            if (!search(s)) return finish(false, VerdictKind::ExhaustivePass);
        }
    }
    return finish(true, VerdictKind::ExhaustivePass);
}

// ---------------------------------------------------------------- ((2)) and failure families

std::vector<char> unit_difference_set(const FiniteRing& S) {
    std::vector<char> V(S.size(), 0);
    const auto& U = S.units();
    for (Elem u : U)
        for (Elem v : U) V[S.sub(u, v)] = 1;
    return V;
}

bool satisfies_two(const FiniteRing& S) {
    auto V = unit_difference_set(S);
    return std::all_of(V.begin(), V.end(), [](char c) { return c != 0; });
}

FailureFamily failure_family_Antn(unsigned n, std::uint64_t q) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    auto F = make_finite_ring("gf(" + std::to_string(q) + ")");
    auto M = matrix_ring(n, F);
    FailureFamily fam;
    fam.ring = M->descriptor();
    for (Elem z = 1; z < q; ++z)
        for (unsigned i = 0; i < n; ++i) fam.tuple.push_back(M->with_entry(M->zero(), 0, i, z));
    fam.k = static_cast<int>(fam.tuple.size()) + 1;
    fam.exhausted = true;
    for (Elem U : M->units()) {
        ++fam.units_scanned;
        if (is_witness(*M, fam.tuple, U)) fam.exhausted = false;
        // Expansion along the first row: det(U + z E_{1,i}) = det U + z d_i.
        auto e = M->entries(U);
        const Elem dU = det_laplace_entries(*F, e, n);
        for (unsigned i = 0; i < n && fam.determinant_argument; ++i) {
            std::vector<Elem> minor;
            for (unsigned r = 1; r < n; ++r)
                for (unsigned c = 0; c < n; ++c)
                    if (c != i) minor.push_back(e[r * n + c]);
            Elem d = det_laplace_entries(*F, minor, n - 1);
            if (i % 2 == 1) d = F->neg(d);
            for (Elem z = 1; z < q; ++z) {
                auto ez = e;
                ez[i] = F->add(ez[i], z);
                if (det_laplace_entries(*F, ez, n) != F->add(dU, F->mul(z, d))) fam.determinant_argument = false;
            }
        }
    }
    return fam;
}

FailureFamily failure_family_Atwh(const FiniteRingPtr& S, Elem a, unsigned n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    auto M = matrix_ring(n, S);
    FailureFamily fam;
    fam.ring = M->descriptor();
    for (unsigned i = 0; i < n; ++i) fam.tuple.push_back(M->with_entry(M->zero(), 0, i, a));
    fam.k = static_cast<int>(n) + 1;
    auto V = unit_difference_set(*S);
    fam.hypothesis = a != S->zero();
    for (Elem x = 0; x < S->size() && fam.hypothesis; ++x) {
        const Elem y = S->mul(a, x);
        if (y != 0 && V[y]) fam.hypothesis = false;
    }
    fam.exhausted = true;
    for (Elem U : M->units()) {
        ++fam.units_scanned;
        if (is_witness(*M, fam.tuple, U)) {
            fam.exhausted = false;
            break;
        }
    }
    return fam;
}

std::vector<Elem> atwh_candidates(const FiniteRing& S) {
    auto V = unit_difference_set(S);
    std::vector<Elem> out;
    for (Elem a = 1; a < S.size(); ++a) {
        bool ok = true;
        for (Elem x = 0; x < S.size() && ok; ++x) {
            const Elem y = S.mul(a, x);
            if (y != 0 && V[y]) ok = false;
        }
        if (ok) out.push_back(a);
    }
    return out;
}

// ---------------------------------------------------------------- triangular witness

TriangularWitness triangular_witness_Atwn(const MatrixRing& M, Elem B, Elem C) {
    const FiniteRing& F = M.inner();
    if (!F.is_field()) throw std::invalid_argument("triangular witness needs a field");
    TriangularWitness tw;
    if (F.size() < 3) return tw;
    tw.applicable = true;
    const unsigned n = M.n();
    auto rnf = rank_normal_form(M, B);
    if (rnf.rank == n) throw std::invalid_argument("B must be singular");
    // Column shift: diag(I_r, 0) * Pm has ones at (i, i+1), i < r.
    Elem Pm = M.zero();
    for (unsigned j = 0; j < n; ++j) Pm = M.with_entry(Pm, j, (j + 1) % n, F.one());
    const Elem Cs = M.mul(M.mul(M.mul(rnf.P, C), rnf.Q), Pm);
    Elem U2 = M.zero();
    for (unsigned i = 0; i < n; ++i) {
        const Elem cii = M.entry(Cs, i, i);
        Elem ui = 0;
        for (Elem u : F.units())
            if (F.is_unit(F.add(u, cii))) {
                ui = u;
                break;
            }
        U2 = M.with_entry(U2, i, i, ui);
        for (unsigned j = i + 1; j < n; ++j) U2 = M.with_entry(U2, i, j, F.neg(M.entry(Cs, i, j)));
    }
    const Elem Pi = inverse_or_throw(M, rnf.P), Qi = inverse_or_throw(M, rnf.Q), Pmi = inverse_or_throw(M, Pm);
    tw.U = M.mul(M.mul(M.mul(Pi, U2), Pmi), Qi);
    tw.verified = M.is_unit(tw.U) && M.is_unit(M.add(tw.U, B)) && M.is_unit(M.add(tw.U, C));
    return tw;
}

// ---------------------------------------------------------------- densities and bounds

DensityReport density_bounds(unsigned n, std::uint64_t q) {
    if (n == 0 || !prime_power(q)) throw std::invalid_argument("density needs n >= 1 and a prime power q");
    DensityReport d;
    d.n = n;
    d.q = q;
    const BigInt Q = q;
    // rank DP over rows: count[r] = row sequences of rank r.
    std::vector<BigInt> count(n + 1, 0);
    count[0] = 1;
    for (unsigned row = 0; row < n; ++row) {
        std::vector<BigInt> next(n + 1, 0);
        for (unsigned r = 0; r <= n; ++r) {
            if (count[r] == 0) continue;
            const BigInt span = boost::multiprecision::pow(Q, r);
            next[r] += count[r] * span;
            if (r < n) next[r + 1] += count[r] * (boost::multiprecision::pow(Q, n) - span);
        }
        count = std::move(next);
    }
    d.gl_order = count[n];
    d.ratio = Rational(d.gl_order, boost::multiprecision::pow(Q, n * n));
    d.f_n = 1;
    for (unsigned i = 1; i <= n; ++i) d.f_n *= Rational(1) - Rational(1, boost::multiprecision::pow(Q, i));
    d.equal = d.ratio == d.f_n;
    if (auto total = power_bound(q, n * n); total && *total <= (1u << 20)) {
        auto M = matrix_ring(n, make_finite_ring("gf(" + std::to_string(q) + ")"));
        d.enumerated = BigInt(M->units().size()) == d.gl_order;
    }
    d.bound_applicable = q >= 4;
    d.bound_holds = d.f_n > Rational(1) - Rational(1, q - 1);
    d.measure_argument = Rational(q - 1) * d.f_n > Rational(q - 2);
    return d;
}

MeasureCheck measure_intersection(const std::vector<std::vector<char>>& sets) {
    MeasureCheck m;
    if (sets.empty()) return m;
    const std::size_t N = sets[0].size();
    std::uint64_t sum = 0;
    for (const auto& s : sets) {
        if (s.size() != N) throw std::invalid_argument("sets over different spaces");
        sum += static_cast<std::uint64_t>(std::count(s.begin(), s.end(), 1));
    }
    m.sum_exceeds = sum > (sets.size() - 1) * N;
    for (std::size_t x = 0; x < N && !m.nonempty; ++x)
        m.nonempty = std::all_of(sets.begin(), sets.end(), [x](const auto& s) { return s[x] != 0; });
    return m;
}

KernelBound subfield_kernel_bound(const MatrixRing& M, Elem v, const std::vector<Elem>& subfield_nonzero) {
    const FiniteRing& F = M.inner();
    const unsigned n = M.n();
    KernelBound kb;
    kb.rank = M.rank(v);
    std::vector<std::vector<std::vector<Elem>>> kers;
    for (Elem d : subfield_nonzero) {
        const Elem x = M.add(d, v);
        if (M.is_unit(x)) continue;
        ++kb.singular;
        kers.push_back(kernel_basis(M, x));
    }
    const std::uint64_t qn = *power_bound(F.size(), n), qr = *power_bound(F.size(), n - kb.rank);
    kb.bound = (qn - qr) / (F.size() - 1);
    kb.holds = kb.singular <= kb.bound;
    kers.push_back(kernel_basis(M, v));
    kb.kernels_disjoint = true;
    for (std::size_t i = 0; i < kers.size() && kb.kernels_disjoint; ++i)
        for (std::size_t j = i + 1; j < kers.size() && kb.kernels_disjoint; ++j) {
            auto both = kers[i];
            both.insert(both.end(), kers[j].begin(), kers[j].end());
            if (vector_rank(F, both) != kers[i].size() + kers[j].size()) kb.kernels_disjoint = false;
        }
    return kb;
}

// ---------------------------------------------------------------- Artinian classification

namespace {

void simple_factors(const FiniteRing& R, unsigned n, std::vector<std::pair<unsigned, std::uint64_t>>& out) {
    if (const auto* g = dynamic_cast<const GaloisField*>(&R)) {
        out.emplace_back(n, g->size());
    } else if (const auto* z = dynamic_cast<const ZMod*>(&R)) {
        for (auto p : distinct_primes(z->modulus())) out.emplace_back(n, p);
    } else if (const auto* m = dynamic_cast<const MatrixRing*>(&R)) {
        simple_factors(m->inner(), n * m->n(), out);
    } else if (const auto* p = dynamic_cast<const ProductRing*>(&R)) {
        for (const auto& f : p->factors()) simple_factors(*f, n, out);
    } else {
        throw RingError("no semisimple decomposition for " + R.descriptor());
    }
}

}  // namespace

ArtinianReport artinian_classifier(const FiniteRing& R, std::uint64_t direct_limit) {
    ArtinianReport rep;
    std::vector<std::pair<unsigned, std::uint64_t>> fs;
    simple_factors(R, 1, fs);
    for (auto [n, q] : fs) {
        const std::string name = n == 1 ? "F_" + std::to_string(q)
                                        : "M_" + std::to_string(n) + "(F_" + std::to_string(q) + ")";
        rep.factors.push_back(name);
        if ((n == 1 && (q == 2 || q == 3)) || (n == 2 && q == 2)) rep.offending.push_back(name);
    }
    rep.satisfies3 = rep.offending.empty();
    if (auto sq = power_bound(R.size(), 2); sq && *sq <= direct_limit) rep.direct = check_gui(R, 3).pass;
    return rep;
}

AffnReport conjecture_Affn_probe(const FiniteRingPtr& S, unsigned n, std::uint64_t samples, std::uint64_t seed,
                                 std::uint64_t exhaustive_limit) {
    AffnReport rep;
    auto M = matrix_ring(n, S);
    rep.ring = M->descriptor();
    rep.base_two = satisfies_two(*S);
    auto sq = power_bound(M->size(), 2);
    if (sq && *sq <= exhaustive_limit) {
        rep.exhaustive = true;
        auto g = check_gui(*M, 3);
        rep.tested = g.stats.tuples;
        if (!g.pass) {
            rep.counterexamples = 1;
            rep.first_counterexample = g.counterexample->tuple;
        }
        return rep;
    }
    std::mt19937_64 rng(seed);
    WitnessSearch ws(*M, Strategy::SubfieldFirst, seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Tuple s{rng() % M->size(), rng() % M->size()};
        ++rep.tested;
        if (!ws.find(s)) {
            ++rep.counterexamples;
            if (!rep.first_counterexample) rep.first_counterexample = s;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- corners

bool relatively_invertible(const FiniteRing& R, Elem e, Elem x) {
    if (R.mul(R.mul(e, x), e) != x) return false;
    return R.is_unit(R.add(x, R.sub(R.one(), e)));
}

std::optional<Elem> relative_inverse(const FiniteRing& R, Elem e, Elem x) {
    if (R.mul(R.mul(e, x), e) != x) return std::nullopt;
    auto inv = R.inverse(R.add(x, R.sub(R.one(), e)));
    if (!inv) return std::nullopt;
    return R.mul(R.mul(e, *inv), e);
}

BtwoLift lemma_Btwo_lift(const FiniteRing& R, Elem e, Elem b, Elem c, Elem u0, Elem v0) {
    if (R.mul(e, e) != e) throw std::invalid_argument("e is not idempotent");
    if (R.mul(e, c) != c) throw std::invalid_argument("c is not in eR");
    const Elem f = R.sub(R.one(), e);
    auto corner = [&](Elem p, Elem x) { return R.mul(R.mul(p, x), p); };
    auto need = [&](Elem p, Elem x, const char* what) {
        auto inv = relative_inverse(R, p, x);
        if (!inv) throw std::invalid_argument(std::string(what) + " is not relatively invertible");
        return *inv;
    };
    const Elem u0bar = need(e, u0, "u0");
    need(e, R.add(u0, corner(e, c)), "u0 + ece");
    need(e, R.add(u0, corner(e, b)), "u0 + ebe");
    const Elem v0bar = need(f, v0, "v0");
    need(f, R.add(v0, corner(f, b)), "v0 + fbf");

    BtwoLift out;
    out.u = R.sub(R.add(u0, v0), R.mul(R.mul(e, b), f));
    out.u_unit = R.is_unit(out.u);
    out.u_plus_b = R.is_unit(R.add(out.u, b));
    out.u_plus_c = R.is_unit(R.add(out.u, c));
    const Elem up = R.add(u0bar, v0bar);
    const Elem n1 = R.sub(R.mul(up, out.u), R.one());
    const Elem n2 = R.sub(R.mul(out.u, up), R.one());
    out.nilpotent_factors = R.mul(n1, n1) == 0 && R.mul(n2, n2) == 0;
    return out;
}

CornerComposition corner_composition(const MatrixRing& M, unsigned m, const Tuple& s) {
    const unsigned n = M.n();
    if (m == 0 || m >= n) throw std::invalid_argument("corner size must be in 1..n-1");
    auto A = matrix_ring(m, M.inner_ptr());
    auto B = matrix_ring(n - m, M.inner_ptr());
    const Elem e = canon::rank_form(M, m);
    const Elem f = M.sub(M.one(), e);

    Tuple top;
    for (Elem a : s) top.push_back(A->neg(canon::block(M, a, 0, 0, *A)));
    auto u = WitnessSearch(*A, Strategy::SubfieldFirst).find(top);
    if (!u) throw CornerFailure("no corner witness in " + A->descriptor());

    Tuple bottom;
    for (Elem a : s) {
        const Elem ui = A->sub(canon::block(M, a, 0, 0, *A), *u);
        const Elem uibar = canon::place_block(M, M.zero(), 0, 0, *A, inverse_or_throw(*A, ui));
        const Elem faf = M.mul(M.mul(f, a), f);
        const Elem cross = M.mul(M.mul(M.mul(M.mul(f, a), uibar), a), f);
        bottom.push_back(B->neg(canon::block(M, M.sub(faf, cross), m, m, *B)));
    }
    auto v = WitnessSearch(*B, Strategy::SubfieldFirst).find(bottom);
    if (!v) throw CornerFailure("no corner witness in " + B->descriptor());

    CornerComposition out;
    out.u = canon::place_block(M, M.zero(), 0, 0, *A, *u);
    out.v = canon::place_block(M, M.zero(), m, m, *B, *v);
    out.witness = M.neg(M.add(out.u, out.v));
    out.verified = is_witness(M, s, out.witness);
    return out;
}

}  // namespace wedder::gui
