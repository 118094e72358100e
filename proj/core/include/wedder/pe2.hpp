#pragma once

// PE(2,R) for a finite ring R: generators, words, normal forms and the
// Ord length function. A word is the left-to-right product of its
// generator matrices.

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wedder/continuants.hpp"
#include "wedder/ring.hpp"

namespace wedder::pe2 {

using M2 = Mat2<Elem>;

struct Generator {
    enum class Kind { E, T, M, J };
    Kind kind = Kind::E;
    Elem a = 0;  // e(a), t(a), first entry of m(r,s)
    Elem b = 0;  // second entry of m(r,s)

    static Generator e(Elem a) { return {Kind::E, a, 0}; }
    static Generator t(Elem a) { return {Kind::T, a, 0}; }
    static Generator m(Elem r, Elem s) { return {Kind::M, r, s}; }
    static Generator j() { return {Kind::J, 0, 0}; }
    bool operator==(const Generator&) const = default;
};

using GroupWord = std::vector<Generator>;

M2 mul(const FiniteRing& R, const M2& x, const M2& y);
M2 identity(const FiniteRing& R);
// Throws RingError when an m payload is not a unit.
M2 generator_matrix(const FiniteRing& R, const Generator& g);
M2 word_matrix(const FiniteRing& R, const GroupWord& w);
// e_a^{-1} = e_0 e_{-a} e_0, t_a^{-1} = t_{-a}, m_{r,s}^{-1} = m_{r^{-1},s^{-1}}.
GroupWord inverse_word(const FiniteRing& R, const GroupWord& w);

// Accepts "e(1),t(2),m(1,2),j"; entries use the ring's element syntax.
GroupWord parse_word(const FiniteRing& R, std::string_view text);
std::string format_word(const FiniteRing& R, const GroupWord& w);

// Mixed-radix code of the four entries; needs |R|^4 < 2^64.
std::uint64_t encode(const FiniteRing& R, const M2& x);
M2 decode(const FiniteRing& R, std::uint64_t code);
// Least code over all central-unit multiples.
std::uint64_t projective_code(const FiniteRing& R, const M2& x);
bool projectively_equal(const FiniteRing& R, const M2& x, const M2& y);

// e_{a[0]} e_{a[1]} ... e_{a[k-1]} m_{r,s}: a[0] is a(k), a[k-1] is a(1).
struct NormalWord {
    std::vector<Elem> a;
    Elem r = 0;
    Elem s = 0;

    int k() const { return static_cast<int>(a.size()); }
    GroupWord word() const;
    bool operator==(const NormalWord&) const = default;
};

// Zero letters only at either end; no e_0 e_0.
bool is_normal(const NormalWord& w);
// Exact rewriting: the result multiplies out to the same matrix (asserted).
NormalWord normalize(const FiniteRing& R, const GroupWord& w);

// Rank on the chain 0 < 1/2 < 1- < 1 < 3/2 < 2- < 2 < ...:
// m - 1/2 -> 3m-2, m- -> 3m-1, m -> 3m.
class OrdValue {
public:
    constexpr OrdValue() = default;
    static constexpr OrdValue from_rank(int rank) { return OrdValue(rank); }
    static constexpr OrdValue whole(int m) { return OrdValue(3 * m); }
    static constexpr OrdValue minus(int m) { return OrdValue(3 * m - 1); }
    static constexpr OrdValue half_below(int m) { return OrdValue(3 * m - 2); }

    constexpr int rank() const { return rank_; }
    OrdValue successor() const { return OrdValue(rank_ + 1); }
    OrdValue predecessor() const;
    std::string str() const;  // "0", "1/2", "1-", "1", "3/2", ...
    static OrdValue parse(std::string_view text);
    constexpr auto operator<=>(const OrdValue&) const = default;

private:
    constexpr explicit OrdValue(int rank) : rank_(rank) {}
    int rank_ = 0;
};

// Ord contribution of one normal-form representation.
OrdValue ord_of_word(const NormalWord& w);

// PE(2,R) enumerated as canonical projective classes.
class Group {
public:
    using Index = std::uint32_t;

    explicit Group(FiniteRingPtr R, std::size_t max_order = 2'000'000);

    const FiniteRing& ring() const { return *R_; }
    const FiniteRingPtr& ring_ptr() const { return R_; }
    std::size_t size() const { return mats_.size(); }
    Index identity() const { return 0; }
    const M2& matrix(Index i) const { return mats_[i]; }
    std::optional<Index> find(const M2& x) const;
    Index index_of(const M2& x) const;  // throws if absent

    // e_a * g.
    Index e_mul(Elem a, Index g) const { return etab_[a * mats_.size() + g]; }
    Index mul(Index x, Index y) const;
    Index inverse(Index x) const { return inv_[x]; }
    Index commutator(Index x, Index y) const;  // x^-1 y^-1 x y
    Index word_index(const GroupWord& w) const { return index_of(word_matrix(*R_, w)); }

    // Classes of all m_{r,s}.
    const std::vector<Index>& multipliers() const { return mult_; }

    // Subgroup generated by products of e-letters (each generator is a
    // sequence of letters multiplied left to right).
    std::vector<char> e_closure(const std::vector<std::vector<Elem>>& gens) const;
    // Subgroup generated by arbitrary elements.
    std::vector<char> closure(const std::vector<Index>& gens) const;
    // Smallest subgroup containing gens and normalised by conj.
    std::vector<char> normal_closure(const std::vector<Index>& gens, const std::vector<Index>& conj) const;

private:
    FiniteRingPtr R_;
    std::vector<M2> mats_;
    std::unordered_map<std::uint64_t, Index> index_;
    std::vector<Index> etab_;
    std::vector<Index> inv_;
    std::vector<Index> mult_;
};

std::size_t count(const std::vector<char>& set);

struct OrdTable {
    std::vector<int> rank;  // per group element
    int max_rank = 0;
    int layers = 0;
    OrdValue ord(Group::Index g) const { return OrdValue::from_rank(rank[g]); }
    OrdValue max() const { return OrdValue::from_rank(max_rank); }
};
// Exact ord for every element by layered search over normal-form shapes.
OrdTable compute_ord(const Group& G);

struct MultiplierCompletion {
    std::vector<Elem> a;  // full tuple a(1..k)
    Elem r = 0;
    Elem s = 0;
};
// Given a(1..k-2) with Q_{k-2} a unit: a(k-1) = -Q_{k-3} Q_{k-2}^{-1},
// a(k) = -P_{k-2} P_{k-1}^{-1}, and S(a) = m_{P_{k-1}, Q_{k-2}} exactly.
MultiplierCompletion complete_to_multiplier(const FiniteRing& R, const std::vector<Elem>& prefix);

// e_{a(k)} ... e_{a(1)} for a = (a(1), ..., a(k)).
GroupWord s_word(const std::vector<Elem>& a);

// e_{z^{-1}-1} e_1 e_{z-1} e_{-z^{-1}}, equal to m_{z, z^{-1}}.
GroupWord fivfiv_word(const FiniteRing& R, Elem z);
GroupWord fivfiv_word_as_printed(const FiniteRing& R, Elem z);

struct StableRangeReport {
    bool sr1 = false;
    bool q3_witnesses = false;
    std::optional<OrdValue> max_ord;
    std::uint64_t unimodular_pairs = 0;
    // sr1 <=> q3, and sr1 <=> max ord <= 5/2 when the group was enumerated.
    bool equivalences_hold = false;
};
StableRangeReport stable_range_report(const FiniteRing& R, const Group* G = nullptr, const OrdTable* ord = nullptr);

struct QsrReport {
    int n = 1;
    bool condition = false;          // for all a in R^{n+1} some b in R^n makes Q_{2n+1}(a,b) a unit
    std::optional<OrdValue> max_ord_pe2;
    std::optional<bool> ord_bound;   // max ord over PE_2 <= n + 3/2
    bool consistent() const { return !ord_bound || *ord_bound == condition; }
};
QsrReport qsr_condition(const FiniteRing& R, int n, const Group* G = nullptr, const OrdTable* ord = nullptr);

struct SubgroupReport {
    std::size_t pe_order = 0;
    std::size_t pe1_order = 0;
    std::size_t pe2_order = 0;
    std::size_t pe1_index = 0;         // [PE_1 : PE_2]
    bool pe2_is_derived = false;       // PE_2 = PE'
    bool pe2_perfect = false;
    bool pe2_simple = false;
    std::size_t pe2_conjugacy_classes = 0;
};
SubgroupReport subgroup_lattice_checks(const Group& G, std::size_t max_order = 1'000'000);

struct CommutatorReport {
    std::size_t samples = 0;
    bool eq3 = true;                   // diag(r,s^-1) t_b diag(r^-1,s) t_{-b} = t_{rbs-b}
    bool throne_ii = true;             // both displays in part (ii)
    std::optional<bool> throne_iii;    // needs central lambda with lambda^2 = -1
    std::optional<bool> thrfiv_e;      // companion of x^n - x + 1 over mat(n, S)
    bool thrfiv_solvable = true;       // every a equals r b s - b for some units r, s
    std::optional<bool> fivsev_construction;  // m_{u,1} as 8 e-letters for each commutator u
    std::optional<bool> fivsev_statement;     // m_{r,s} in the 12-letter set when s^-1 r = lambda^2 u
    std::optional<bool> sevfou;                // explicit conjugators lower Ord
    bool all() const;
};
CommutatorReport commutator_identities_check(const FiniteRing& R, std::uint64_t seed, std::size_t samples,
                                             const Group* G = nullptr);

// Ord-lowering conjugation moves; each returns the conjugator h (in PE_2) and
// g' = h^-1 g h as a normal word.
struct ConjugationStep {
    GroupWord conjugator;
    NormalWord result;
};
// Ord(g) contains k+1/2: leading e_0. Conjugating by the first two letters.
std::optional<ConjugationStep> sevfou_a(const FiniteRing& R, const NormalWord& g);
// Ord(g) contains k- with k >= 2. The conjugator lies in PE_2 for k >= 3 and is e_{a(2)} for k = 2.
std::optional<ConjugationStep> sevfou_b(const FiniteRing& R, const NormalWord& g);

}  // namespace wedder::pe2
