#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracle.hpp"
#include "wedder/pe2.hpp"

using namespace wedder;
using namespace wedder::pe2;

namespace {

GroupWord random_word(const FiniteRing& R, std::mt19937_64& rng, int len) {
    const auto& U = R.units();
    GroupWord w;
    for (int i = 0; i < len; ++i) {
        switch (rng() % 4) {
            case 0: w.push_back(Generator::e(rng() % R.size())); break;
            case 1: w.push_back(Generator::t(rng() % R.size())); break;
            case 2: w.push_back(Generator::m(U[rng() % U.size()], U[rng() % U.size()])); break;
            default: w.push_back(Generator::j()); break;
        }
    }
    return w;
}

// Integer 2x2 arithmetic mod m, independent of the library.
using IM = std::array<std::int64_t, 4>;
IM imul(const IM& x, const IM& y, std::int64_t m) {
    return {(x[0] * y[0] + x[1] * y[2]) % m, (x[0] * y[1] + x[1] * y[3]) % m, (x[2] * y[0] + x[3] * y[2]) % m,
            (x[2] * y[1] + x[3] * y[3]) % m};
}
IM iproj(IM x, std::int64_t m) {
    IM best = x;
    for (std::int64_t l = 1; l < m; ++l) {
        if (std::gcd(l, m) != 1) continue;
        IM y{x[0] * l % m, x[1] * l % m, x[2] * l % m, x[3] * l % m};
        best = std::min(best, y);
    }
    return best;
}

// Brute-force ord over zmod(m): min over all normal shapes of length <= K.
std::map<IM, int> brute_ord(std::int64_t m, int K) {
    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u < m; ++u)
        if (std::gcd(u, m) == 1) units.push_back(u);
    std::map<IM, int> best;
    for (int k = 0; k <= K; ++k) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(k), 0);
        for (;;) {
            bool ok = true;
            for (int i = 1; i + 1 < k; ++i) ok = ok && a[static_cast<std::size_t>(i)] != 0;
            if (k == 2 && a[0] == 0 && a[1] == 0) ok = false;
            if (ok) {
                int rank;
                if (k == 0) rank = 0;
                else if (k == 1) rank = a[0] == 0 ? 2 : 3;
                else {
                    bool top = a.front() == 0, low = a.back() == 0;
                    rank = top && low ? 3 * (k - 2) : top ? 3 * (k - 1) - 2 : low ? 3 * k - 1 : 3 * k;
                }
                for (auto r : units)
                    for (auto s : units) {
                        IM x{1, 0, 0, 1};
                        for (auto v : a) x = imul(x, IM{0, 1, 1, v}, m);
                        x = iproj(imul(x, IM{r, 0, 0, s}, m), m);
                        auto it = best.find(x);
                        if (it == best.end() || rank < it->second) best[x] = rank;
                    }
            }
            std::size_t i = 0;
            while (i < a.size() && ++a[i] == m) a[i++] = 0;
            if (i == a.size()) break;
        }
    }
    return best;
}

}  // namespace

TEST_SUITE("pe2") {

TEST_CASE("generator matrices and inverses") {
    auto R = make_finite_ring("gf(5)");
    CHECK(generator_matrix(*R, Generator::e(3)) == M2{0, 1, 1, 3});
    CHECK(generator_matrix(*R, Generator::t(3)) == M2{1, 3, 0, 1});
    CHECK(generator_matrix(*R, Generator::j()) == M2{0, 1, 1, 0});
    CHECK_THROWS_AS(generator_matrix(*R, Generator::m(0, 1)), RingError);
    // e_a^{-1} = [[-a,1],[1,0]].
    CHECK(word_matrix(*R, inverse_word(*R, {Generator::e(3)})) == M2{2, 1, 1, 0});
    std::mt19937_64 rng(3);
    for (const char* d : {"gf(5)", "mat(2,gf(2))", "zmod(8)"}) {
        auto S = make_finite_ring(d);
        for (int t = 0; t < 200; ++t) {
            auto w = random_word(*S, rng, 6);
            auto inv = inverse_word(*S, w);
            w.insert(w.end(), inv.begin(), inv.end());
            CHECK(word_matrix(*S, w) == identity(*S));
        }
    }
}

TEST_CASE("parse and format words") {
    auto R = make_finite_ring("gf(5)");
    auto w = parse_word(*R, "e(1), t(2),m(1,2),j");
    REQUIRE(w.size() == 4);
    CHECK(w[2] == Generator::m(1, 2));
    CHECK(format_word(*R, w) == "e(1),t(2),m(1,2),j");
    CHECK(parse_word(*R, "").empty());
    CHECK_THROWS(parse_word(*R, "m(0,1)"));
    CHECK_THROWS(parse_word(*R, "x(1)"));
}

TEST_CASE("relations") {
    std::mt19937_64 rng(5);
    for (const char* d : {"gf(4)", "zmod(9)", "mat(2,gf(3))"}) {
        auto R = make_finite_ring(d);
        const auto& U = R->units();
        for (int t = 0; t < 300; ++t) {
            Elem a = rng() % R->size(), b = rng() % R->size();
            Elem r = U[rng() % U.size()], s = U[rng() % U.size()];
            Elem ri = *R->inverse(r), si = *R->inverse(s);
            Elem sar = R->mul(R->mul(s, a), ri);
            CHECK(word_matrix(*R, {Generator::m(r, s), Generator::e(a)}) ==
                  word_matrix(*R, {Generator::e(sar), Generator::m(s, r)}));
            CHECK(word_matrix(*R, {Generator::m(r, s), Generator::e(a), Generator::m(ri, si)}) ==
                  word_matrix(*R, {Generator::e(sar), Generator::m(R->mul(s, ri), R->mul(r, si))}));
            CHECK(word_matrix(*R, {Generator::e(a), Generator::e(0), Generator::e(b)}) ==
                  generator_matrix(*R, Generator::e(R->add(a, b))));
            CHECK(word_matrix(*R, {Generator::j(), Generator::t(a)}) == generator_matrix(*R, Generator::e(a)));
        }
        CHECK(word_matrix(*R, {Generator::e(0), Generator::e(0)}) == identity(*R));
    }
}

TEST_CASE("normalize examples") {
    auto R = make_finite_ring("gf(5)");
    auto n = normalize(*R, {Generator::e(2), Generator::e(0), Generator::e(4)});
    CHECK(n.a == std::vector<Elem>{1});
    CHECK(normalize(*R, {Generator::e(0), Generator::e(0)}).a.empty());
    CHECK(normalize(*R, {Generator::t(3)}).a == std::vector<Elem>{0, 3});
    CHECK(normalize(*R, {Generator::j()}).a == std::vector<Elem>{0});
    auto m = normalize(*R, {Generator::m(2, 3)});
    CHECK(m.a.empty());
    CHECK(m.r == 2);
    CHECK(m.s == 3);
    // m_{2,3} e_1 = e_{3*1*2^-1} m_{3,2} = e_4 m_{3,2}.
    auto me = normalize(*R, {Generator::m(2, 3), Generator::e(1)});
    CHECK(me.a == std::vector<Elem>{4});
    CHECK(me.r == 3);
    CHECK(me.s == 2);
}

TEST_CASE("normalize preserves the class on random words") {
    std::mt19937_64 rng(7);
    for (const char* d : {"gf(3)", "mat(2,gf(2))", "zmod(8)", "prod(gf(2),gf(3))"}) {
        auto R = make_finite_ring(d);
        for (int t = 0; t < 500; ++t) {
            auto w = random_word(*R, rng, 1 + static_cast<int>(rng() % 12));
            auto n = normalize(*R, w);
            CHECK(is_normal(n));
            CHECK(projectively_equal(*R, word_matrix(*R, n.word()), word_matrix(*R, w)));
        }
    }
}

TEST_CASE("ord values and formatting") {
    CHECK(OrdValue::half_below(1).str() == "1/2");
    CHECK(OrdValue::minus(1).str() == "1-");
    CHECK(OrdValue::whole(1).str() == "1");
    CHECK(OrdValue::half_below(3).str() == "5/2");
    CHECK(OrdValue::minus(2).str() == "2-");
    CHECK(OrdValue::whole(0).str() == "0");
    for (int r = 0; r < 40; ++r) CHECK(OrdValue::parse(OrdValue::from_rank(r).str()).rank() == r);
    CHECK_THROWS(OrdValue::parse("2/2"));
    CHECK_THROWS(OrdValue::parse("0-"));
    CHECK(OrdValue::half_below(1) < OrdValue::minus(1));
    CHECK(OrdValue::minus(2).successor() == OrdValue::whole(2));

    auto R = make_finite_ring("gf(5)");
    CHECK(ord_of_word(normalize(*R, {Generator::m(2, 3)})) == OrdValue::whole(0));
    CHECK(ord_of_word(normalize(*R, {Generator::t(3)})) == OrdValue::half_below(1));
    CHECK(ord_of_word(normalize(*R, {Generator::j()})) == OrdValue::minus(1));
    CHECK(ord_of_word(normalize(*R, {Generator::e(1), Generator::e(2)})) == OrdValue::whole(2));
    CHECK(ord_of_word(normalize(*R, {Generator::e(1), Generator::e(0)})) == OrdValue::minus(2));
    CHECK_THROWS(ord_of_word(NormalWord{{1, 0, 1}, 1, 1}));
}

TEST_CASE("fivfiv fixture for every unit") {
    for (const char* d : {"gf(2)", "gf(3)", "gf(4)", "zmod(8)", "mat(2,gf(2))"}) {
        auto R = make_finite_ring(d);
        for (Elem z : R->units()) {
            INFO(d << " z=" << R->format(z));
            CHECK(word_matrix(*R, fivfiv_word(*R, z)) == M2{z, 0, 0, *R->inverse(z)});
        }
    }
    // The alternative reading e_{z^-1} e_1 e_{z-1} e_{-z^-1} is not diagonal for z = 2 in gf(5).
    auto F5 = make_finite_ring("gf(5)");
    auto x = word_matrix(*F5, fivfiv_word_as_printed(*F5, 2));
    CHECK_FALSE((x[1] == 0 && x[2] == 0));
}

TEST_CASE("complete_to_multiplier") {
    auto R = make_finite_ring("gf(7)");
    for (Elem b : R->units()) {
        Elem bi = *R->inverse(b);
        auto c = complete_to_multiplier(*R, {R->neg(bi)});
        CHECK(c.a == std::vector<Elem>{R->neg(bi), b, R->neg(bi)});
        CHECK(c.r == b);
        CHECK(c.s == R->neg(bi));
    }
    auto M = make_finite_ring("mat(2,gf(3))");
    std::mt19937_64 rng(11);
    int done = 0;
    for (int t = 0; t < 400; ++t) {
        std::vector<Elem> p{static_cast<Elem>(rng() % M->size()), static_cast<Elem>(rng() % M->size())};
        FiniteArith f(*M);
        auto q = build_quad(f, p);
        if (!M->is_unit(q.q(2))) {
            CHECK_THROWS(complete_to_multiplier(*M, p));
            continue;
        }
        auto c = complete_to_multiplier(*M, p);
        CHECK(word_matrix(*M, s_word(c.a)) == M2{c.r, 0, 0, c.s});
        ++done;
    }
    CHECK(done > 0);
}

TEST_CASE("group orders against closed forms") {
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        Group G(make_finite_ring("gf(" + std::to_string(q) + ")"));
        CHECK(G.size() == q * (q * q - 1));
    }
    // GL(2, Z/4) / {+-1}.
    CHECK(Group(make_finite_ring("zmod(4)")).size() == 96 / 2);
    // mat(2,gf(2)) has trivial central units, so PE(2, M_2 F_2) = GL(4,2).
    CHECK(Group(make_finite_ring("mat(2,gf(2))")).size() == oracle::gl_order(4, 2));
}

TEST_CASE("group tables are consistent") {
    Group G(make_finite_ring("zmod(9)"));
    std::mt19937_64 rng(13);
    for (int t = 0; t < 2000; ++t) {
        auto x = static_cast<Group::Index>(rng() % G.size());
        auto y = static_cast<Group::Index>(rng() % G.size());
        CHECK(G.mul(x, G.inverse(x)) == G.identity());
        Elem a = rng() % 9;
        CHECK(G.e_mul(a, x) == G.index_of(mul(G.ring(), generator_matrix(G.ring(), Generator::e(a)), G.matrix(x))));
        CHECK(G.commutator(x, y) == G.mul(G.mul(G.inverse(x), G.inverse(y)), G.mul(x, y)));
    }
}

TEST_CASE("subgroup structure") {
    Group G4(make_finite_ring("gf(4)"));
    auto r4 = subgroup_lattice_checks(G4);
    CHECK(r4.pe2_order == 60);
    CHECK(r4.pe2_perfect);
    CHECK(r4.pe2_simple);
    CHECK(r4.pe2_conjugacy_classes == 5);  // A_5

    Group G3(make_finite_ring("gf(3)"));
    auto r3 = subgroup_lattice_checks(G3);
    CHECK(r3.pe2_order == 12);
    CHECK(r3.pe1_index == 2);
    CHECK_FALSE(r3.pe2_perfect);
    CHECK_FALSE(r3.pe2_simple);

    auto r5 = subgroup_lattice_checks(Group(make_finite_ring("gf(5)")));
    CHECK(r5.pe1_index == 1);
    CHECK(r5.pe2_order == 60);
    auto r2 = subgroup_lattice_checks(Group(make_finite_ring("gf(2)")));
    CHECK(r2.pe1_index == 1);
    CHECK(r2.pe2_order == 6);
}

TEST_CASE("compute_ord agrees with brute force") {
    for (std::int64_t m : {3, 4, 5}) {
        INFO("zmod(" << m << ")");
        Group G(make_finite_ring("zmod(" + std::to_string(m) + ")"));
        auto t = compute_ord(G);
        auto brute = brute_ord(m, 7);
        CHECK(brute.size() == G.size());
        for (const auto& [x, rank] : brute) {
            M2 mx{static_cast<Elem>(x[0]), static_cast<Elem>(x[1]), static_cast<Elem>(x[2]), static_cast<Elem>(x[3])};
            CHECK(t.rank[G.index_of(mx)] == rank);
        }
    }
}

TEST_CASE("stable range and ord bound") {
    for (const char* d : {"gf(2)", "gf(3)", "zmod(4)", "mat(2,gf(2))"}) {
        INFO(d);
        auto R = make_finite_ring(d);
        Group G(R);
        auto t = compute_ord(G);
        CHECK(t.max() <= OrdValue::half_below(3));
        auto rep = stable_range_report(*R, &G, &t);
        CHECK(rep.sr1);
        CHECK(rep.q3_witnesses);
        CHECK(rep.equivalences_hold);
    }
    Group G3(make_finite_ring("gf(3)"));
    auto t3 = compute_ord(G3);
    // Over a field every class is t_b m or e_0 e_x e_y m, so nothing reaches ord 2.
    CHECK(t3.max() == OrdValue::half_below(2));
    CHECK(std::count(t3.rank.begin(), t3.rank.end(), OrdValue::whole(2).rank()) == 0);
    auto t4 = compute_ord(Group(make_finite_ring("zmod(4)")));
    CHECK(std::count(t4.rank.begin(), t4.rank.end(), OrdValue::whole(2).rank()) == 6);
    // Z/8 is local, so it also has stable range one.
    CHECK(stable_range_report(*make_finite_ring("zmod(8)")).sr1);
}

TEST_CASE("qsr condition") {
    auto R = make_finite_ring("gf(3)");
    Group G(R);
    auto t = compute_ord(G);
    auto q = qsr_condition(*R, 1, &G, &t);
    CHECK(q.condition);
    CHECK(q.consistent());
    CHECK(qsr_condition(*make_finite_ring("gf(2)"), 1).condition);
    CHECK_THROWS(qsr_condition(*R, 0));
}

TEST_CASE("conjugation moves lower ord") {
    auto R = make_finite_ring("gf(5)");
    NormalWord g{{0, 2, 3, 1}, 1, 1};
    auto st = sevfou_a(*R, g);
    REQUIRE(st);
    CHECK(ord_of_word(st->result) <= OrdValue::whole(2));
    NormalWord h{{2, 0}, 1, 1};
    auto sb = sevfou_b(*R, h);
    REQUIRE(sb);
    CHECK(ord_of_word(sb->result) <= OrdValue::half_below(1));
    CHECK_FALSE(sevfou_a(*R, h));
}

TEST_CASE("commutator identities") {
    for (const char* d : {"gf(5)", "gf(4)", "mat(2,gf(2))", "zmod(8)"}) {
        INFO(d);
        auto R = make_finite_ring(d);
        Group G(R);
        auto rep = commutator_identities_check(*R, 42, 300, &G);
        CHECK(rep.eq3);
        CHECK(rep.throne_ii);
        CHECK(rep.thrfiv_solvable);
        CHECK(rep.fivsev_construction.value_or(false));
        CHECK(rep.fivsev_statement.value_or(false));
        CHECK(rep.sevfou.value_or(true));
        CHECK(rep.all());
    }
    auto F5 = make_finite_ring("gf(5)");
    CHECK(commutator_identities_check(*F5, 1, 10).throne_iii == std::optional<bool>(true));
    auto M = make_finite_ring("mat(3,gf(2))");
    CHECK(commutator_identities_check(*M, 1, 50).thrfiv_e == std::optional<bool>(true));
}

}  // TEST_SUITE
