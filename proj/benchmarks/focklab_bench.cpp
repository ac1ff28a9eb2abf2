#include <benchmark/benchmark.h>

#include <complex>

#include "focklab/contours.hpp"
#include "focklab/counterexample.hpp"
#include "focklab/genfun.hpp"
#include "focklab/kernels.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/util.hpp"

using namespace focklab;

namespace {

const SineType& shared_sine() {
    static const SineType s = SineType::sigma_lattice(21.0);
    return s;
}

void BM_SigmaEval(benchmark::State& state) {
    const SineType& s = shared_sine();
    const double r = static_cast<double>(state.range(0));
    const complex z{r * 0.7071, r * 0.7071};
    for (auto _ : state) benchmark::DoNotOptimize(s.eval_log(z));
}
BENCHMARK(BM_SigmaEval)->Arg(2)->Arg(8)->Arg(18);

void BM_KernelEval(benchmark::State& state) {
    const KernelFunction k({1.0, 0.5}, 2.0, static_cast<double>(state.range(0)));
    const complex z{0.6 * state.range(0), 0.3 * state.range(0)};
    for (auto _ : state) benchmark::DoNotOptimize(k.eval_log(z));
}
BENCHMARK(BM_KernelEval)->Arg(6)->Arg(12)->Arg(20);

void BM_WeightedNormKernel(benchmark::State& state) {
    set_max_threads(1);
    const KernelFunction k({1.0, 0.5}, 2.0, 9.0);
    const NormalizedFunction u{[&k](complex z) { return k.eval_normalized(z); }, 8.0};
    const ModifiedWeight mw{RadialWeight::power(2.0), 0.75};
    QuadratureSpec spec;
    spec.truncation_radius = 8.0;
    for (auto _ : state) benchmark::DoNotOptimize(weighted_norm(u, mw, spec));
}
BENCHMARK(BM_WeightedNormKernel)->Unit(benchmark::kMillisecond);

void BM_BuildContour(benchmark::State& state) {
    const ZeroSet& zs = shared_sine().zeros();
    const std::size_t N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_contour(zs, N));
}
BENCHMARK(BM_BuildContour)->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_TaylorWindow(benchmark::State& state) {
    const SineType& s = shared_sine();
    const double R = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_block(s, R, 0.25));
}
BENCHMARK(BM_TaylorWindow)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_RingDerivative(benchmark::State& state) {
    const SineType& s = shared_sine();
    for (auto _ : state) benchmark::DoNotOptimize(s.derivative_at_zero(24));
}
BENCHMARK(BM_RingDerivative)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
