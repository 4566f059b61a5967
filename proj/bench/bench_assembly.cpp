// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "sghh/complexes.hpp"
#include "sghh/structure_ops.hpp"

using namespace sghh;

namespace {

AlgebraPtr alg(int which) {
    auto F = FieldSpec::prime(101);
    if (which == 0) return truncated_poly(3, F);
    return radical_square_zero(1, {{0, 0, "a"}, {0, 0, "b"}, {0, 0, "c"}}, F);
}

Assembly mode(const benchmark::State& s) { return s.range(0) ? Assembly::Parallel : Assembly::Serial; }

Cochain random_cochain(AlgebraPtr A, int m, int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(0.3);
    Cochain f = zero_cochain(A, m, p);
    for (Index u = 0; u < f.num_cols(); ++u) {
        SparseVec v;
        for (Index r = 0; r < f.codomain().dim(); ++r)
            if (keep(rng)) v.push(r, A->field().from_int(1 + rng() % 100));
        v.normalize();
        f.col(u) = v;
    }
    return f;
}

void BM_DeltaMatrix(benchmark::State& s) {
    auto A = alg(static_cast<int>(s.range(1)));
    for (auto _ : s) benchmark::DoNotOptimize(delta_matrix(A, 4, 2, mode(s)));
}

void BM_BMatrix(benchmark::State& s) {
    auto A = alg(static_cast<int>(s.range(1)));
    for (auto _ : s) benchmark::DoNotOptimize(b_matrix(A, Chain::Coeff::AA, 4, mode(s)));
}

void BM_Cup(benchmark::State& s) {
    auto A = alg(static_cast<int>(s.range(1)));
    auto f = random_cochain(A, 3, 1, 1), g = random_cochain(A, 3, 1, 2);
    for (auto _ : s) benchmark::DoNotOptimize(cup(f, g, mode(s)));
}

void BM_Circle(benchmark::State& s) {
    auto A = alg(static_cast<int>(s.range(1)));
    auto f = random_cochain(A, 3, 1, 3), g = random_cochain(A, 2, 1, 4);
    for (auto _ : s) benchmark::DoNotOptimize(circle(f, g, mode(s)));
}

void BM_Ladder(benchmark::State& s) {
    auto A = alg(static_cast<int>(s.range(1)));
    for (auto _ : s) benchmark::DoNotOptimize(build_sg_ladder(A, -1, 1, 2, mode(s)));
}

// args: {parallel, algebra}
void grid(benchmark::internal::Benchmark* b) {
    b->ArgNames({"parallel", "alg"});
    for (int a : {0, 1})
        for (int p : {0, 1}) b->Args({p, a});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_DeltaMatrix)->Apply(grid);
BENCHMARK(BM_BMatrix)->Apply(grid);
BENCHMARK(BM_Cup)->Apply(grid);
BENCHMARK(BM_Circle)->Apply(grid);
BENCHMARK(BM_Ladder)->Apply(grid);

BENCHMARK_MAIN();
