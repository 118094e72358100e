#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <thread>

#include "wedder/gf2.hpp"
#include "wedder/gui.hpp"

namespace wedder::gui {

namespace {

using gf2::Code;

// Rows [0, m) x columns [0, m) of an n x n code.
Code top_left(Code c, unsigned n, unsigned m) {
    Code out = 0;
    for (unsigned i = 0; i < m; ++i) out |= ((c >> (i * n)) & gf2::row_mask(m)) << (i * m);
    return out;
}

// Rows and columns [m, n).
Code bottom_right(Code c, unsigned n, unsigned m) {
    const unsigned k = n - m;
    Code out = 0;
    for (unsigned i = 0; i < k; ++i) out |= ((c >> ((m + i) * n + m)) & gf2::row_mask(k)) << (i * k);
    return out;
}

Code embed_top_left(Code x, unsigned m, unsigned n) {
    Code out = 0;
    for (unsigned i = 0; i < m; ++i) out |= ((x >> (i * m)) & gf2::row_mask(m)) << (i * n);
    return out;
}

Code embed_bottom_right(Code x, unsigned m, unsigned n) {
    const unsigned k = n - m;
    Code out = 0;
    for (unsigned i = 0; i < k; ++i) out |= ((x >> (i * k)) & gf2::row_mask(k)) << ((m + i) * n + m);
    return out;
}

Code top_right_mask(unsigned m, unsigned n) {
    Code out = 0;
    for (unsigned i = 0; i < m; ++i) out |= (gf2::row_mask(n) & ~gf2::row_mask(m)) << (i * n);
    return out;
}

Code rank_form(unsigned n, unsigned r) {
    Code c = 0;
    for (unsigned i = 0; i < r; ++i) c |= 1ull << (i * n + i);
    return c;
}

// Units u of mat(n, gf(2)) with u + diag(I_r, 0) a unit, one list per r,
// maximal-subfield elements first.
struct Level {
    unsigned n = 0;
    std::unique_ptr<gf2::InvertibleTable> tab;
    std::vector<std::vector<Code>> filtered;

    explicit Level(unsigned dim) : n(dim), tab(std::make_unique<gf2::InvertibleTable>(dim)) {
        auto sub = maximal_subfield(dim, make_finite_ring("gf(2)"));
        std::vector<Code> order(sub.nonzero.begin(), sub.nonzero.end());
        std::vector<char> seen(1ull << (dim * dim), 0);
        for (Code c : order) seen[c] = 1;
        for (Code u : tab->units())
            if (!seen[u]) order.push_back(u);
        for (unsigned r = 0; r <= dim; ++r) {
            const Code B = rank_form(dim, r);
            std::vector<Code> f;
            for (Code u : order)
                if ((*tab)(u ^ B)) f.push_back(u);
            filtered.push_back(std::move(f));
        }
    }

    std::optional<Code> scan(unsigned r, Code C) const {
        for (Code u : filtered[r])
            if ((*tab)(u ^ C)) return u;
        return std::nullopt;
    }
};

struct Engine {
    unsigned n;
    Level top;
    std::unique_ptr<Level> minus1, minus2;

    explicit Engine(unsigned dim) : n(dim), top(dim) {
        if (dim >= 2) minus1 = std::make_unique<Level>(dim - 1);
        if (dim >= 3) minus2 = std::make_unique<Level>(dim - 2);
    }

    // Lift through e = I_m + 0 with the corner witness u0 and v0 in the
    // complementary corner; B = diag(I_r, 0) plays c and C plays b.
    std::optional<Code> lift(unsigned r, Code C, unsigned m, const Level& corner) const {
        if (r > m) return std::nullopt;
        const unsigned k = n - m;
        const Code Cb = bottom_right(C, n, m);
        std::optional<Code> v0;
        if (k == 1) {
            if (Cb == 0) v0 = 1;
        } else {
            for (Code v = 0; v < (1ull << (k * k)); ++v)
                if (gf2::invertible(v, k) && gf2::invertible(v ^ Cb, k)) {
                    v0 = v;
                    break;
                }
        }
        if (!v0) return std::nullopt;
        auto u0 = corner.scan(r, top_left(C, n, m));
        if (!u0) return std::nullopt;
        // Characteristic two: -e b (1-e) is the top-right block of C.
        const Code u = embed_top_left(*u0, m, n) | embed_bottom_right(*v0, m, n) | (C & top_right_mask(m, n));
        const Code B = rank_form(n, r);
        if (top.tab->operator()(u) && (*top.tab)(u ^ B) && (*top.tab)(u ^ C)) return u;
        return std::nullopt;
    }

    // Returns 1 via the lift, 2 via the scan, 0 on failure.
    int solve(unsigned r, Code C, bool use_btwo) const {
        if (use_btwo && r < n) {
            if (minus1 && lift(r, C, n - 1, *minus1)) return 1;
            if (minus2 && n >= 4 && lift(r, C, n - 2, *minus2)) return 1;
        }
        return top.scan(r, C) ? 2 : 0;
    }
};

void tally(BoneCase& bc, int how) {
    ++bc.pairs;
    if (how == 1) ++bc.via_btwo;
    else if (how == 2) ++bc.via_scan;
    else ++bc.failures;
}

}  // namespace

BoneReport verify_prop_Bone(unsigned n, const BoneOptions& options) {
    if (n < 2 || n > 5) throw std::invalid_argument("verify_prop_Bone supports n in 2..5");
    if (options.shards == 0 || options.shard_id >= options.shards) throw std::invalid_argument("bad shard selection");
    const auto t0 = std::chrono::steady_clock::now();
    const Engine eng(n);
    BoneReport rep;
    rep.n = n;
    rep.options = options;
    rep.cases.resize(n + 1);
    for (unsigned r = 0; r <= n; ++r) rep.cases[r].rank = r;
    const std::uint64_t total = 1ull << (n * n);
    std::mutex mu;
    std::atomic<bool> stop{false};

    auto record_failure = [&](unsigned r, Code C) {
        std::lock_guard<std::mutex> lock(mu);
        if (!rep.failure) rep.failure = std::pair<Elem, Elem>{rank_form(n, r), C};
        stop = true;
    };

    if (options.samples) {
        rep.exhaustive = false;
        std::mt19937_64 rng(options.seed);
        for (std::uint64_t i = 0; i < *options.samples && !stop; ++i) {
            const Code C = rng() & (total - 1);
            const unsigned r = static_cast<unsigned>(i % (n + 1));
            if (C % options.shards != options.shard_id) continue;
            const int how = eng.solve(r, C, options.use_btwo);
            tally(rep.cases[r], how);
            if (how == 0) record_failure(r, C);
        }
    } else {
        rep.exhaustive = options.shards == 1;
        const unsigned jobs = std::max(1u, options.jobs);
        std::vector<std::vector<BoneCase>> local(jobs, rep.cases);
        auto work = [&](unsigned j) {
            const std::uint64_t lo = total * j / jobs, hi = total * (j + 1) / jobs;
            for (Code C = lo; C < hi && !stop; ++C) {
                if (C % options.shards != options.shard_id) continue;
                for (unsigned r = 0; r <= n; ++r) {
                    const int how = eng.solve(r, C, options.use_btwo);
                    tally(local[j][r], how);
                    if (how == 0) record_failure(r, C);
                }
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::thread> ts;
            for (unsigned j = 0; j < jobs; ++j) ts.emplace_back(work, j);
            for (auto& t : ts) t.join();
        }
        for (const auto& l : local)
            for (unsigned r = 0; r <= n; ++r) {
                rep.cases[r].pairs += l[r].pairs;
                rep.cases[r].via_btwo += l[r].via_btwo;
                rep.cases[r].via_scan += l[r].via_scan;
                rep.cases[r].failures += l[r].failures;
            }
        if (stop) rep.exhaustive = false;
    }
    rep.pass = !rep.failure;
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------- fixtures

namespace {

using Rows = std::vector<std::vector<int>>;

Rows eye(unsigned k) {
    Rows m(k, std::vector<int>(k, 0));
    for (unsigned i = 0; i < k; ++i) m[i][i] = 1;
    return m;
}

Rows zeros(unsigned k) { return Rows(k, std::vector<int>(k, 0)); }

Rows jordan(unsigned k, bool unipotent) {
    Rows m = unipotent ? eye(k) : zeros(k);
    for (unsigned i = 0; i + 1 < k; ++i) m[i][i + 1] = 1;
    return m;
}

Rows transpose(const Rows& a) {
    Rows t = zeros(static_cast<unsigned>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
    return t;
}

Rows ds(std::initializer_list<Rows> blocks) {
    unsigned n = 0;
    for (const auto& b : blocks) n += static_cast<unsigned>(b.size());
    Rows m = zeros(n);
    unsigned o = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) m[o + i][o + j] = b[i][j];
        o += static_cast<unsigned>(b.size());
    }
    return m;
}

Code code(const Rows& r) {
    Code c = 0;
    const unsigned n = static_cast<unsigned>(r.size());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (r[i][j] & 1) c |= 1ull << (i * n + j);
    return c;
}

Code power(const Rows& r, unsigned e) {
    const unsigned n = static_cast<unsigned>(r.size());
    Code acc = gf2::identity(n), base = code(r);
    for (unsigned i = 0; i < e; ++i) acc = gf2::mul(acc, base, n);
    return acc;
}

// Companion forms: N_3(a, b) has last column (1, b, a); W has first column
// (params..., 1) and ones on the superdiagonal.
Rows N3(int a, int b) { return {{0, 0, 1}, {1, 0, b}, {0, 1, a}}; }
Rows W(std::vector<int> first) {
    first.push_back(1);
    const unsigned n = static_cast<unsigned>(first.size());
    Rows m = jordan(n, false);
    for (unsigned i = 0; i < n; ++i) m[i][0] = first[i];
    return m;
}
const Rows N2 = {{0, 1}, {1, 1}};
const Rows one = {{1}};
const Rows zero1 = {{0}};
const Rows swap2 = {{0, 1}, {1, 0}};

}  // namespace

std::vector<BoneFixture> bone_fixtures() {
    std::vector<BoneFixture> fx;
    auto add = [&](std::string name, const Rows& B, const Rows& C, Code U, bool valid = true) {
        fx.push_back({std::move(name), static_cast<unsigned>(B.size()), code(B), code(C), U, valid});
    };
    const Rows I3 = eye(3), I4 = eye(4), I5 = eye(5);
    const Rows B2 = ds({eye(2), zero1}), B1 = ds({one, zeros(2)}), B43 = ds({I3, zero1});
    const Rows P = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};

    // n = 3, B = I.
    add("n3 I, N2+(1)", I3, ds({N2, one}), code({{1, 0, 1}, {1, 1, 1}, {0, 1, 1}}));
    add("n3 I, JNF(2)+(1)", I3, ds({jordan(2, true), one}), code({{0, 0, 1}, {1, 0, 0}, {0, 1, 1}}));
    add("n3 I, N2+(0)", I3, ds({N2, zero1}), power(N3(0, 1), 3));
    add("n3 I, I2+(0)", I3, ds({eye(2), zero1}), power(N3(0, 1), 2));
    add("n3 I, JNF0(3)", I3, jordan(3, false), code(N3(0, 1)));
    add("n3 I, JNF0(2)+(1)", I3, ds({jordan(2, false), one}), code(N3(1, 0)));
    add("n3 I, JNF(2)+(0)", I3, ds({jordan(2, true), zero1}), code(N3(1, 0)));
    add("n3 I, (1)+0", I3, ds({one, zeros(2)}), code(N3(1, 0)));
    add("n3 I, JNF0(2)+(0)", I3, ds({jordan(2, false), zero1}), code(N3(0, 1)));
    // n = 3, B = I2 + 0.
    add("n3 I2+0, JNF0(2)+(1)", B2, ds({jordan(2, false), one}), power(N3(1, 0), 5));
    add("n3 I2+0, I2+(0)", B2, ds({eye(2), zero1}), code(ds({Rows{{1, 1}, {1, 0}}, one})));
    add("n3 I2+0, N2+(0)", B2, ds({N2, zero1}), code(ds({Rows{{1, 1}, {1, 0}}, one})));
    add("n3 I2+0, delta (1,0)", B2, {{1, 0, 0}, {0, 0, 0}, {0, 1, 0}}, power(N3(0, 1), 2));
    add("n3 I2+0, E13+E32", B2, {{0, 0, 1}, {0, 0, 0}, {0, 1, 0}}, code(P));
    add("n3 I2+0, 0+(1)", B2, ds({zeros(2), one}), code(P));
    for (auto [x, y] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}})
        add("n3 I2+0, bottom row (" + std::to_string(x) + "," + std::to_string(y) + ",0)", B2,
            {{0, 0, 0}, {0, 0, 0}, {x, y, 0}}, code(ds({N2, one})));
    // n = 3, B = (1) + 0.
    add("n3 (1)+0, JNF0(2)+(0)", B1, ds({jordan(2, false), zero1}), code({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
    add("n3 (1)+0, (0)+(1)+(0)", B1, ds({zero1, one, zero1}), code(ds({swap2, one})));
    // n = 4.
    add("n4 I, N2+I2", I4, ds({N2, eye(2)}), code(ds({Rows{{1, 1}, {1, 0}}, N2})));
    add("n4 I, N2+JNF(2)", I4, ds({N2, jordan(2, true)}), power(W({1, 1, 1}), 2));
    add("n4 I, JNF(2)+JNF(2), W^2", I4, ds({jordan(2, true), jordan(2, true)}), power(W({1, 0, 0}), 2));
    add("n4 I, JNF(2)+I2", I4, ds({jordan(2, true), eye(2)}), code(W({0, 1, 0})));
    add("n4 I, N3(1,0)+(0)", I4, ds({N3(1, 0), zero1}), code(W({1, 1, 1})));
    add("n4 I, N2+JNF0(2)", I4, ds({N2, jordan(2, false)}), power(W({0, 0, 1}), 2));
    add("n4 I, I3+(0)", I4, ds({I3, zero1}), code(ds({N2, Rows{{1, 1}, {1, 0}}})));
    add("n4 I3+0, (1)+JNF0(2)+(1)", B43, ds({one, jordan(2, false), one}),
        code(ds({Rows{{1, 1}, {1, 0}}, swap2})));
    // n = 5.
    add("n5 I, JNF(3)+JNF(2)", I5, ds({jordan(3, true), jordan(2, true)}), code(W({0, 0, 0, 1})));
    add("n5 I, JNF0(5)^T", I5, transpose(jordan(5, false)), code(W({1, 0, 1, 1})));
    add("n5 I, JNF(5)^T", I5, transpose(jordan(5, true)), code(W({1, 1, 1, 0})));

    // Transcribed witnesses that do not work; see fixture_replacement.
    add("n3 I, JNF(3)", I3, jordan(3, true), code({{1, 1, 1}, {0, 1, 1}, {1, 1, 0}}), false);
    add("n3 I2+0, (1)+(0)+(1)", B2, ds({one, zero1, one}), power(N3(0, 1), 4), false);
    add("n3 I2+0, JNF(2)+(0)", B2, ds({jordan(2, true), zero1}), power(N3(1, 0), 4), false);
    add("n3 I2+0, delta (1,1)", B2, {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}}, power(N3(1, 0), 3), false);
    add("n3 I2+0, delta (0,1)", B2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, power(N3(1, 0), 5), false);
    add("n3 I2+0, E23+E32", B2, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}, code(transpose(P)), false);
    add("n4 I, N3(1,0)+(1)", I4, ds({N3(1, 0), one}), power(W({1, 1, 1}), 3), false);
    add("n4 I, JNF(4)", I4, jordan(4, true), code(W({1, 0, 0})), false);
    add("n4 I, JNF(3)+(1)", I4, ds({jordan(3, true), one}), code(W({1, 0, 0})), false);
    add("n4 I3+0, JNF0(3)+(1)", B43, ds({jordan(3, false), one}), code(W({0, 0, 1})), false);
    add("n5 I, JNF(5)^T with (0,0,0,1)", I5, transpose(jordan(5, true)), code(W({0, 0, 0, 1})), false);
    return fx;
}

bool fixture_holds(const BoneFixture& f) {
    const unsigned n = f.n;
    return gf2::invertible(f.U, n) && gf2::invertible(f.U ^ f.B, n) && gf2::invertible(f.U ^ f.C, n);
}

std::optional<Elem> fixture_replacement(const BoneFixture& f) {
    const std::uint64_t total = 1ull << (f.n * f.n);
    for (Code u = 0; u < total; ++u)
        if (gf2::invertible(u, f.n) && gf2::invertible(u ^ f.B, f.n) && gf2::invertible(u ^ f.C, f.n)) return u;
    return std::nullopt;
}

}  // namespace wedder::gui
