#pragma once

// The ((k)) property: for every s(1..k-1) there is a unit u with every
// u + s(i) a unit. Searches, certificates, failure families and the
// constructive lifts between corner rings.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wedder/matrix_tools.hpp"
#include "wedder/ring.hpp"

namespace wedder::gui {

using Tuple = std::vector<Elem>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Strategy { SubfieldFirst, FullScan, Sampling };
enum class VerdictKind { Witness, ExhaustedFailure, SampledPass, ExhaustivePass };

std::string to_string(Strategy s);
std::string to_string(VerdictKind v);
Strategy parse_strategy(std::string_view s);
VerdictKind parse_verdict(std::string_view s);

// normalized = left * original * right, slot by slot.
struct Normalization {
    Elem left = 0;
    Elem right = 0;
};

struct SearchStats {
    std::uint64_t tuples = 0;
    std::uint64_t candidates = 0;
    std::uint64_t orbit_reps = 0;
    double elapsed_ms = 0;
};

struct WitnessCertificate {
    std::string ring;
    int k = 0;
    Tuple tuple;
    VerdictKind verdict = VerdictKind::Witness;
    std::optional<Elem> witness;
    Normalization normalization;
    Tuple normalized;
    Strategy strategy = Strategy::SubfieldFirst;
    std::uint64_t seed = 0;
    SearchStats stats;
};

// Candidate units in search order: maximal-subfield elements first when the
// ring is mat(n, gf(q)), then every unit.
class WitnessSearch {
public:
    WitnessSearch(const FiniteRing& R, Strategy strategy, std::uint64_t seed = 1);
    const FiniteRing& ring() const { return R_; }
    const std::vector<Elem>& order() const { return order_; }
    // First candidate u with u + s a unit for every s; counts candidates tried.
    std::optional<Elem> find(const Tuple& s, std::uint64_t* tried = nullptr) const;

private:
    const FiniteRing& R_;
    std::vector<Elem> order_;
};

bool is_witness(const FiniteRing& R, const Tuple& s, Elem u);

// Two-sided unit scaling that puts the tuple in a canonical-ish form:
// rank normal form of the first nonzero slot over field-entried matrix
// rings, least orbit element otherwise (small unit groups only).
std::pair<Normalization, Tuple> normalize_tuple(const FiniteRing& R, const Tuple& s);

// Searches one tuple, via its normalization, and maps the witness back.
WitnessCertificate certify_tuple(const FiniteRing& R, const Tuple& s, Strategy strategy = Strategy::SubfieldFirst,
                                 std::uint64_t seed = 1);
// Witness: u and every u + s(i) are units. Exhausted failure: a second
// scan in reverse unit order finds nothing.
bool verify_certificate(const FiniteRing& R, const WitnessCertificate& c);

struct GuiOptions {
    Strategy strategy = Strategy::SubfieldFirst;
    std::optional<std::uint64_t> samples;  // sampled tuples instead of exhaustion
    std::uint64_t seed = 1;
    unsigned shards = 1;
    unsigned shard_id = 0;
    std::uint64_t max_tuples = 1ull << 34;  // exhaustion limit on |R|^(k-1)
};

struct GuiReport {
    std::string ring;
    int k = 0;
    bool pass = false;
    VerdictKind verdict = VerdictKind::ExhaustivePass;
    std::optional<WitnessCertificate> counterexample;
    GuiOptions options;
    SearchStats stats;
};

// Throws RingError if exhaustion is requested beyond options.max_tuples.
GuiReport check_gui(const FiniteRing& R, int k, const GuiOptions& options = {});

// V(S) = {u - v : u, v units} as a membership bitmap.
std::vector<char> unit_difference_set(const FiniteRing& S);
bool satisfies_two(const FiniteRing& S);  // V(S) = S

struct FailureFamily {
    std::string ring;
    int k = 0;
    Tuple tuple;
    bool hypothesis = true;          // aS and V(S) meet only in 0 (Atwh only)
    bool exhausted = false;          // no unit works for the whole tuple
    std::uint64_t units_scanned = 0;
    bool determinant_argument = true;  // det(U + z e_i) = det U + z d_i for every unit U (Antn only)
    bool confirmed() const { return hypothesis && exhausted && determinant_argument; }
};
// {z E_{1,i} : z nonzero, 1 <= i <= n} defeats ((q-1)n + 1) in mat(n, gf(q)).
FailureFamily failure_family_Antn(unsigned n, std::uint64_t q);
// {a E_{1,i}} defeats ((n+1)) in mat(n, S) when aS meets V(S) only in 0.
FailureFamily failure_family_Atwh(const FiniteRingPtr& S, Elem a, unsigned n);
// Every a != 0 with aS and V(S) meeting only in 0.
std::vector<Elem> atwh_candidates(const FiniteRing& S);

struct TriangularWitness {
    bool applicable = false;  // inner field with q >= 3
    Elem U = 0;
    bool verified = false;
};
// B singular over a field with ((2)): U with U, U + B, U + C units, built by
// triangularizing B, shifting columns and cancelling the strict upper part of C.
TriangularWitness triangular_witness_Atwn(const MatrixRing& M, Elem B, Elem C);

struct DensityReport {
    unsigned n = 0;
    std::uint64_t q = 0;
    BigInt gl_order;
    Rational ratio;        // |GL(n,q)| / q^(n^2)
    Rational f_n;          // prod_{i=1..n} (1 - q^-i)
    bool equal = false;
    std::optional<bool> enumerated;  // unit count of mat(n, gf(q)) agrees, small cases only
    bool bound_applicable = false;   // q >= 4
    bool bound_holds = false;        // f_n(q) > 1 - 1/(q-1)
    bool measure_argument = false;   // (q-1) f_n(q) > q - 2
};
DensityReport density_bounds(unsigned n, std::uint64_t q);

// Sets on a uniform finite space: whether the measures sum past k-1, and
// whether the intersection is nonempty.
struct MeasureCheck {
    bool sum_exceeds = false;
    bool nonempty = false;
};
MeasureCheck measure_intersection(const std::vector<std::vector<char>>& sets);

struct KernelBound {
    unsigned rank = 0;
    std::uint64_t singular = 0;  // |{d in G \ 0 : d + v singular}|
    std::uint64_t bound = 0;
    bool holds = false;
    bool kernels_disjoint = false;  // ker(d+v), ker(d'+v) and ker v pairwise meet in 0
};
KernelBound subfield_kernel_bound(const MatrixRing& M, Elem v, const std::vector<Elem>& subfield_nonzero);

struct ArtinianReport {
    std::vector<std::string> factors;    // simple factors of R / J(R), e.g. "M_2(F_2)"
    std::vector<std::string> offending;  // among F_2, M_2(F_2), F_3
    bool satisfies3 = false;
    std::optional<bool> direct;          // exhaustive ((3)) when the tuple space is small
};
ArtinianReport artinian_classifier(const FiniteRing& R, std::uint64_t direct_limit = 1ull << 22);

struct AffnReport {
    std::string ring;
    bool base_two = false;  // S satisfies ((2)); the search runs either way
    bool exhaustive = false;
    std::uint64_t tested = 0;
    std::uint64_t counterexamples = 0;
    std::optional<Tuple> first_counterexample;
};
AffnReport conjecture_Affn_probe(const FiniteRingPtr& S, unsigned n, std::uint64_t samples, std::uint64_t seed,
                                 std::uint64_t exhaustive_limit = 1ull << 20);

// x in eRe is relatively invertible iff x + (1 - e) is a unit.
bool relatively_invertible(const FiniteRing& R, Elem e, Elem x);
std::optional<Elem> relative_inverse(const FiniteRing& R, Elem e, Elem x);

struct BtwoLift {
    Elem u = 0;
    bool u_unit = false;
    bool u_plus_b = false;
    bool u_plus_c = false;
    bool nilpotent_factors = false;  // u'u - 1 and uu' - 1 square to zero
    bool ok() const { return u_unit && u_plus_b && u_plus_c && nilpotent_factors; }
};
// u = u0 + v0 - e b (1-e). Throws std::invalid_argument when a precondition fails.
BtwoLift lemma_Btwo_lift(const FiniteRing& R, Elem e, Elem b, Elem c, Elem u0, Elem v0);

class CornerFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CornerComposition {
    Elem witness = 0;  // w with w and w + s(i) units
    Elem u = 0;        // corner parts, embedded in R
    Elem v = 0;
    bool verified = false;
};
// e = I_m + 0 in mat(n, S). Witnesses in the two corners combine into one for R.
CornerComposition corner_composition(const MatrixRing& M, unsigned m, const Tuple& s);

// ---------------------------------------------------------------- mat(n, gf(2)), ((3))

struct BoneOptions {
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    unsigned shards = 1;  // this run takes C with C mod shards == shard_id
    unsigned shard_id = 0;
    bool use_btwo = true;
};

struct BoneCase {
    unsigned rank = 0;  // B = diag(I_rank, 0)
    std::uint64_t pairs = 0;
    std::uint64_t via_btwo = 0;
    std::uint64_t via_scan = 0;
    std::uint64_t failures = 0;
};

struct BoneReport {
    unsigned n = 0;
    bool pass = false;
    bool exhaustive = false;
    std::vector<BoneCase> cases;
    std::optional<std::pair<Elem, Elem>> failure;  // (B, C)
    BoneOptions options;
    double elapsed_ms = 0;
};
// n in 2..5. B runs over rank normal forms, C over all matrices (or samples).
BoneReport verify_prop_Bone(unsigned n, const BoneOptions& options = {});

struct BoneFixture {
    std::string name;
    unsigned n = 0;
    Elem B = 0;
    Elem C = 0;
    Elem U = 0;
    bool printed_valid = true;  // the transcribed U is expected to work
};
std::vector<BoneFixture> bone_fixtures();
bool fixture_holds(const BoneFixture& f);
// A replacement witness for (B, C) found by scanning GL(n, 2).
std::optional<Elem> fixture_replacement(const BoneFixture& f);

}  // namespace wedder::gui
