#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "photoncorr/analysis.hpp"
#include "photoncorr/correlations.hpp"
#include "photoncorr/geometry.hpp"
#include "photoncorr/state.hpp"

using namespace photoncorr;

namespace {

ComplexMatrix random_matrix(int size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix a(size, size);
    for (auto& entry : a.data) {
        entry = {dist(rng), dist(rng)};
    }
    return a;
}

std::vector<double> random_angles(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-kHalfPi, kHalfPi);
    std::vector<double> angles(static_cast<std::size_t>(m));
    for (double& a : angles) {
        a = dist(rng);
    }
    return angles;
}

void BM_PermanentRyser(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const ComplexMatrix a = random_matrix(size, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent(a));
    }
}
BENCHMARK(BM_PermanentRyser)->DenseRange(4, 20, 4);

void BM_PermanentNaive(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const ComplexMatrix a = random_matrix(size, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_naive(a));
    }
}
BENCHMARK(BM_PermanentNaive)->DenseRange(4, 9, 1);

void BM_PathRoute(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const EmitterChain chain(n, kPi);
    const DetectionConfig detectors(random_angles(m, 23));
    for (auto _ : state) {
        benchmark::DoNotOptimize(g_m_paths(chain, detectors).value);
    }
}
BENCHMARK(BM_PathRoute)->Args({10, 5})->Args({16, 4})->Args({16, 8})->Args({20, 4});

void BM_OperatorRoute(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const EmitterChain chain(n, kPi);
    const DetectionConfig detectors(random_angles(m, 23));
    for (auto _ : state) {
        benchmark::DoNotOptimize(g_m_operator(chain, detectors).value);
    }
}
BENCHMARK(BM_OperatorRoute)->Args({10, 5})->Args({16, 4})->Args({16, 8});

void BM_ApplyField(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EmitterChain chain(n, kPi);
    // half-filled register: the widest amplitude map
    PureState s = fully_excited(n);
    for (int k = 0; k < n / 2; ++k) {
        s = apply_field(s, 0.1 * k, chain);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_field(s, 0.3, chain));
    }
}
BENCHMARK(BM_ApplyField)->Arg(12)->Arg(16)->Arg(20);

void BM_ClosedFormSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EmitterChain chain(n, kPi);
    const auto grid = uniform_grid(2001);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(chain, n, 0.0, grid).values.back());
    }
}
BENCHMARK(BM_ClosedFormSweep)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
