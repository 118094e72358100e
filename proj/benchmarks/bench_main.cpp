#include <random>

#include <benchmark/benchmark.h>

#include "wedder/gf2.hpp"
#include "wedder/gui.hpp"
#include "wedder/pe2.hpp"

namespace {

using namespace wedder;

void BM_Gf2PackedMul(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    std::mt19937_64 rng(1);
    const std::uint64_t mask = (n * n == 64) ? ~0ull : ((1ull << (n * n)) - 1);
    gf2::Code a = rng() & mask, b = rng() & mask;
    for (auto _ : state) {
        a = gf2::mul(a, b, n) ^ b;
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_Gf2PackedMul)->DenseRange(2, 7);

void BM_GenericMatrixMul(benchmark::State& state) {
    auto M = make_finite_ring("mat(3,gf(3))");
    std::mt19937_64 rng(2);
    Elem a = rng() % M->size(), b = rng() % M->size();
    for (auto _ : state) {
        a = M->add(M->mul(a, b), b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_GenericMatrixMul);

void BM_WitnessSearch(benchmark::State& state, const char* ring, int k) {
    auto R = make_finite_ring(ring);
    gui::WitnessSearch search(*R, gui::Strategy::SubfieldFirst);
    std::mt19937_64 rng(3);
    for (auto _ : state) {
        gui::Tuple s;
        for (int i = 0; i + 1 < k; ++i) s.push_back(rng() % R->size());
        benchmark::DoNotOptimize(search.find(s));
    }
}
BENCHMARK_CAPTURE(BM_WitnessSearch, mat3_gf2_k3, "mat(3,gf(2))", 3);
BENCHMARK_CAPTURE(BM_WitnessSearch, mat2_gf4_k4, "mat(2,gf(4))", 4);
BENCHMARK_CAPTURE(BM_WitnessSearch, mat4_gf2_k3, "mat(4,gf(2))", 3);

void BM_CheckGuiExhaustive(benchmark::State& state) {
    auto R = make_finite_ring("mat(2,gf(3))");
    for (auto _ : state) benchmark::DoNotOptimize(gui::check_gui(*R, 3).pass);
}
BENCHMARK(BM_CheckGuiExhaustive)->Unit(benchmark::kMillisecond);

void BM_BoneExhaustive(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gui::verify_prop_Bone(n).pass);
}
BENCHMARK(BM_BoneExhaustive)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ComputeOrd(benchmark::State& state, const char* ring) {
    pe2::Group G(make_finite_ring(ring));
    for (auto _ : state) benchmark::DoNotOptimize(pe2::compute_ord(G).max_rank);
}
BENCHMARK_CAPTURE(BM_ComputeOrd, gf5, "gf(5)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ComputeOrd, mat2_gf2, "mat(2,gf(2))")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
