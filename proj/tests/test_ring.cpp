#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "wedder/element.hpp"
#include "wedder/gf2.hpp"
#include "wedder/matrix_tools.hpp"
#include "wedder/ring.hpp"

using namespace wedder;

namespace {

oracle::IntMat to_int(const MatrixRing& M, Elem x) {
    auto e = M.entries(x);
    oracle::IntMat m(M.n(), std::vector<std::int64_t>(M.n()));
    for (unsigned i = 0; i < M.n(); ++i)
        for (unsigned j = 0; j < M.n(); ++j) m[i][j] = static_cast<std::int64_t>(e[i * M.n() + j]);
    return m;
}

std::shared_ptr<const MatrixRing> mat(const std::string& d) {
    return std::dynamic_pointer_cast<const MatrixRing>(make_finite_ring(d));
}

}  // namespace

TEST_SUITE("ring") {

TEST_CASE("basic arithmetic examples") {
    auto f2 = make_finite_ring("gf(2)");
    CHECK(f2->add(1, 1) == 0);

    auto fr = make_ring("free(a,b)");
    auto a = RingElement::parse(fr, "a");
    auto b = RingElement::parse(fr, "b");
    CHECK((a * b - a * b) == RingElement::zero(fr));

    auto M = mat("mat(2,gf(2))");
    Elem n2 = M->parse("[[0,1],[1,1]]");
    CHECK(n2 == canon::n_matrix(*M, {1}));
    auto sq = oracle::mul_mod(to_int(*M, n2), to_int(*M, n2), 2);
    CHECK(to_int(*M, M->mul(n2, n2)) == sq);
    CHECK(M->mul(n2, n2) == M->add(n2, M->one()));
}

TEST_CASE("descriptor mismatch throws") {
    auto x = RingElement::parse(make_ring("gf(3)"), "1");
    auto y = RingElement::parse(make_ring("gf(5)"), "1");
    CHECK_THROWS(x + y);
    CHECK_THROWS(make_ring("mat(0,gf(2))"));
    CHECK_THROWS(make_ring("gf(6)"));
}

TEST_CASE("try_invert examples") {
    auto f3 = make_ring("gf(3)");
    auto two = RingElement::parse(f3, "2");
    REQUIRE(two.try_invert());
    CHECK(two.try_invert()->code() == 2);

    auto Mp = make_ring("mat(2,gf(2))");
    auto M = mat("mat(2,gf(2))");
    CHECK_FALSE(RingElement(Mp, canon::jordan0(*M)).try_invert());
    auto inv = RingElement::parse(Mp, "[[0,1],[1,1]]").try_invert();
    REQUIRE(inv);
    CHECK(inv->code() == M->parse("[[1,1],[1,0]]"));

    auto fr = make_ring("free(a)");
    CHECK(RingElement::parse(fr, "-1").try_invert());
    CHECK_THROWS(RingElement::parse(fr, "a").try_invert());
}

TEST_CASE("unit counts match closed forms") {
    CHECK(make_finite_ring("gf(4)")->units().size() == 3);
    CHECK(make_finite_ring("mat(2,gf(2))")->units().size() == 6);
    CHECK(make_finite_ring("mat(4,gf(2))")->units().size() == oracle::gl_order(4, 2));
    CHECK(oracle::gl_order(4, 2) == 20160);
    for (std::uint64_t m : {4u, 8u, 9u, 12u, 25u}) {
        auto R = make_finite_ring("zmod(" + std::to_string(m) + ")");
        CHECK(R->units().size() == oracle::euler_phi(m));
        CHECK(*R->unit_count_formula() == oracle::euler_phi(m));
    }
    for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {2, 4}, {2, 5}, {3, 3}}) {
        auto R = make_finite_ring("mat(" + std::to_string(n) + ",gf(" + std::to_string(q) + "))");
        CHECK(R->units().size() == oracle::gl_order(n, q));
        CHECK(*R->unit_count_formula() == oracle::gl_order(n, q));
    }
}

TEST_CASE("try_invert succeeds exactly on units, two-sided") {
    for (const char* d : {"mat(2,gf(3))", "mat(2,zmod(4))", "prod(gf(2),zmod(6))", "gf(16)"}) {
        auto R = make_finite_ring(d);
        std::set<Elem> units(R->units().begin(), R->units().end());
        for (Elem x = 0; x < R->size(); ++x) {
            auto y = R->inverse(x);
            CHECK(y.has_value() == (units.count(x) == 1));
            if (y) {
                CHECK(R->mul(x, *y) == R->one());
                CHECK(R->mul(*y, x) == R->one());
            }
        }
    }
}

TEST_CASE("field axioms for extension fields") {
    for (unsigned q : {4u, 8u, 9u, 25u, 27u}) {
        auto F = make_finite_ring("gf(" + std::to_string(q) + ")");
        std::mt19937_64 rng(q);
        for (int t = 0; t < 2000; ++t) {
            Elem x = rng() % q, y = rng() % q, z = rng() % q;
            CHECK(F->mul(x, F->add(y, z)) == F->add(F->mul(x, y), F->mul(x, z)));
            CHECK(F->mul(F->mul(x, y), z) == F->mul(x, F->mul(y, z)));
            CHECK(F->mul(x, y) == F->mul(y, x));
        }
        std::set<Elem> seen;
        Elem g = 1;
        // The multiplicative group is cyclic; some element has order q-1.
        bool found = false;
        for (Elem c = 1; c < q && !found; ++c) {
            seen.clear();
            g = 1;
            for (unsigned i = 0; i < q - 1; ++i) {
                g = F->mul(g, c);
                seen.insert(g);
            }
            found = seen.size() == q - 1;
        }
        CHECK(found);
    }
}

TEST_CASE("rank examples") {
    auto M3 = mat("mat(3,gf(2))");
    CHECK(M3->rank(M3->one()) == 3);
    CHECK(M3->rank(canon::jordan0(*M3)) == 2);
    auto M5 = mat("mat(5,gf(3))");
    for (unsigned r = 0; r <= 5; ++r) CHECK(M5->rank(canon::rank_form(*M5, r)) == r);
    CHECK_THROWS(mat("mat(2,zmod(4))")->rank(0));
}

TEST_CASE("rank normal form") {
    auto M = mat("mat(4,gf(3))");
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        Elem x = rng() % M->size();
        auto nf = rank_normal_form(*M, x);
        CHECK(M->is_unit(nf.P));
        CHECK(M->is_unit(nf.Q));
        CHECK(M->mul(M->mul(nf.P, x), nf.Q) == canon::rank_form(*M, nf.rank));
        CHECK(nf.rank == M->rank(x));
    }
}

TEST_CASE("maximal subfield examples") {
    auto f2 = make_finite_ring("gf(2)");
    auto G2 = maximal_subfield(2, f2);
    CHECK(G2.nonzero.size() == 3);
    auto M2 = mat("mat(2,gf(2))");
    Elem n2 = canon::n_matrix(*M2, {1});
    std::set<Elem> g2(G2.nonzero.begin(), G2.nonzero.end());
    CHECK(g2 == std::set<Elem>{M2->one(), n2, M2->mul(n2, n2)});

    auto G1 = maximal_subfield(1, make_finite_ring("gf(5)"));
    CHECK(G1.nonzero.size() == 4);
    for (Elem d : G1.nonzero) CHECK(G1.ring->entry(d, 0, 0) != 0);

    auto G3 = maximal_subfield(3, f2);
    CHECK(G3.nonzero.size() == 7);
    CHECK(G3.ring->pow(G3.generator, 7) == G3.ring->one());
    CHECK(G3.modulus == RingPoly{1, 1, 0, 1});
    for (Elem d : G3.nonzero) CHECK(G3.ring->is_unit(d));

    // Closed under multiplication and commutative: a field of order q^n.
    auto G = maximal_subfield(2, make_finite_ring("gf(3)"));
    std::set<Elem> gs(G.nonzero.begin(), G.nonzero.end());
    CHECK(gs.size() == 8);
    for (Elem x : G.nonzero)
        for (Elem y : G.nonzero) {
            CHECK(gs.count(G.ring->mul(x, y)) == 1);
            CHECK(G.ring->mul(x, y) == G.ring->mul(y, x));
        }
}

TEST_CASE("free_words examples") {
    auto fr = std::dynamic_pointer_cast<const FreeRing>(make_ring("free(a1,a2,a3,a4)"));
    auto q2 = fr->parse("1 + a2*a1");
    auto w = free_words(q2);
    REQUIRE(w.size() == 2);
    CHECK(w[0].first.empty());
    CHECK(w[1].first == Word{1, 0});
    CHECK(free_words(FreePoly{}).empty());
    auto q4 = fr->parse("1 + a2*a1 + a4*a1 + a4*a3 + a4*a3*a2*a1");
    CHECK(free_words(q4).size() == 5);
    CHECK(fr->format(fr->parse("2*a1*a2 - a3 + 1")) == "1 - a3 + 2*a1*a2");
}

TEST_CASE("free ring multiplication is associative") {
    std::mt19937_64 rng(11);
    auto rand_poly = [&] {
        FreePoly p;
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            Word w;
            int len = static_cast<int>(rng() % 4);
            for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint16_t>(rng() % 3));
            p += FreePoly::monomial(w, static_cast<int>(rng() % 7) - 3);
        }
        return p;
    };
    for (int t = 0; t < 1000; ++t) {
        auto x = rand_poly(), y = rand_poly(), z = rand_poly();
        CHECK(((x * y) * z) == (x * (y * z)));
        CHECK((x * (y + z)) == (x * y + x * z));
    }
}

TEST_CASE("packed and generic GF(2) matrices agree") {
    std::mt19937_64 rng(2024);
    for (unsigned n : {2u, 3u, 4u, 5u, 7u}) {
        MatrixRing packed(n, make_finite_ring("gf(2)"));
        MatrixRing generic(n, make_finite_ring("gf(2)"), true);
        REQUIRE(packed.packed_gf2());
        REQUIRE_FALSE(generic.packed_gf2());
        int trials = (n == 7) ? 500 : 2000;
        for (int t = 0; t < trials; ++t) {
            Elem x = rng() % packed.size(), y = rng() % packed.size();
            CHECK(packed.add(x, y) == generic.add(x, y));
            CHECK(packed.mul(x, y) == generic.mul(x, y));
            CHECK(packed.inverse(x) == generic.inverse(x));
            CHECK(packed.rank(x) == generic.rank(x));
        }
    }
}

TEST_CASE("gf2 Matrix beyond code width") {
    std::mt19937_64 rng(5);
    gf2::Matrix a(20);
    for (unsigned i = 0; i < 20; ++i) a.row(i) = rng() & gf2::row_mask(20);
    auto inv = a.inverse();
    if (inv) CHECK(a * *inv == gf2::Matrix::identity(20));
    CHECK((inv.has_value()) == (a.rank() == 20));
    gf2::InvertibleTable tab(3);
    CHECK(tab.units().size() == 168);
}

TEST_CASE("central units") {
    for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 4}, {2, 5}}) {
        auto M = mat("mat(" + std::to_string(n) + ",gf(" + std::to_string(q) + "))");
        auto cu = M->central_units();
        CHECK(cu.size() == q - 1);
        for (Elem c : cu) {
            CHECK(M->is_unit(c));
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j)
                    if (i != j) CHECK(M->entry(c, i, j) == 0);
        }
    }
    auto P = make_finite_ring("prod(gf(3),zmod(8))");
    CHECK(P->central_units().size() == 2 * 4);
}

TEST_CASE("companion matrices have the stated characteristic polynomial") {
    std::mt19937_64 rng(3);
    for (unsigned q : {2u, 3u, 4u}) {
        auto F = make_finite_ring("gf(" + std::to_string(q) + ")");
        for (unsigned k = 1; k <= 5; ++k) {
            auto M = matrix_ring(k, F);
            for (int t = 0; t < 5; ++t) {
                std::vector<Elem> c;
                for (unsigned i = 0; i < k; ++i) c.push_back(rng() % q);
                auto cp = characteristic_polynomial(*M, canon::companion(*M, c));
                RingPoly expect = c;
                expect.push_back(1);
                CHECK(cp == expect);
            }
        }
    }
}

TEST_CASE("canonical constructors") {
    auto M3 = mat("mat(3,gf(2))");
    CHECK(canon::jordan(*M3) == M3->parse("[[1,1,0],[0,1,1],[0,0,1]]"));
    CHECK(canon::jordan0(*M3) == M3->parse("[[0,1,0],[0,0,1],[0,0,0]]"));
    CHECK(canon::n_matrix(*M3, {0, 1}) == M3->parse("[[0,0,1],[1,0,1],[0,1,0]]"));
    CHECK(canon::w_matrix(*mat("mat(4,gf(2))"), {1, 0, 0}) ==
          mat("mat(4,gf(2))")->parse("[[1,1,0,0],[0,0,1,0],[0,0,0,1],[1,0,0,0]]"));
    auto M2 = mat("mat(2,gf(2))");
    auto M1 = mat("mat(1,gf(2))");
    CHECK(canon::direct_sum(*M3, {{M2.get(), canon::n_matrix(*M2, {1})}, {M1.get(), 1}}) ==
          M3->parse("[[0,1,0],[1,1,0],[0,0,1]]"));
}

TEST_CASE("descriptor grammar round trips") {
    for (const char* d : {"gf(2)", "gf(9)", "zmod(8)", "mat(3,gf(2))", "prod(gf(2),mat(2,gf(3)))", "free(a,b,c)"}) {
        CHECK(make_ring(d)->descriptor() == d);
    }
    auto P = make_finite_ring("prod(gf(2),mat(2,gf(3)))");
    Elem x = P->parse("(1,[[1,2],[0,1]])");
    CHECK(P->format(x) == "(1,[[1,2],[0,1]])");
}

}  // TEST_SUITE
