// Hot paths: sampled energy and Gram assembly, the Poisson identity with its
// certified tail, the Hermitian pencil, kernel certification and the
// observability pencil.

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ingham/bounds.hpp"
#include "ingham/kernels.hpp"
#include "ingham/observability.hpp"
#include "ingham/pencil.hpp"
#include "ingham/sums.hpp"

using namespace ingham;

namespace {

// n equally spaced exponents (gap 1.5) centred on zero, unit-modulus coefficients
ExpSum spaced_sum(long n) {
    std::vector<double> w;
    std::vector<cplx> c;
    for (long k = 0; k < n; ++k) {
        w.push_back(1.5 * (static_cast<double>(k) - 0.5 * static_cast<double>(n - 1)));
        c.push_back(std::polar(1.0, 0.7 * static_cast<double>(k)));
    }
    return {ExponentSequence(std::move(w), 1.0), std::move(c)};
}

double band_delta(const ExpSum& s) {
    const double reach = std::abs(s.sequence()[0]);
    return 0.9 * pi / (reach + 0.5);
}

void BM_SampledEnergy(benchmark::State& state) {
    const auto s = spaced_sum(state.range(0));
    const SamplingGrid grid(band_delta(s), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(sampled_energy(s, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0) * grid.count());
}
BENCHMARK(BM_SampledEnergy)->Args({5, 64})->Args({15, 256})->Args({60, 1024});

void BM_SampledGram(benchmark::State& state) {
    const auto s = spaced_sum(state.range(0));
    const SamplingGrid grid(band_delta(s), 4 * state.range(0));
    const auto w = s.sequence().omegas();
    for (auto _ : state) benchmark::DoNotOptimize(sampled_gram(w, grid));
}
BENCHMARK(BM_SampledGram)->Arg(8)->Arg(32)->Arg(128);

void BM_PoissonSides(benchmark::State& state) {
    const auto s = spaced_sum(state.range(0));
    const double g = s.sequence().gamma();
    const auto kernel = state.range(1) == 0 ? KernelShape::direct(0.5 * g, SupportConvention::Exact)
                                            : KernelShape::inverse(0.5 * g, 3.0 * pi / g, SupportConvention::Exact);
    const double delta = band_delta(s);
    for (auto _ : state) benchmark::DoNotOptimize(poisson_sides(s, kernel, delta));
}
BENCHMARK(BM_PoissonSides)->Args({5, 0})->Args({15, 0})->Args({15, 1})->Unit(benchmark::kMicrosecond);

void BM_HermitianPencil(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    HermitianMatrix a(n, n), b(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            a(r, c) = cplx(normal(rng), normal(rng));
            b(r, c) = cplx(normal(rng), normal(rng));
        }
    const HermitianMatrix S = 0.5 * (a + a.adjoint());
    const HermitianMatrix Q = b * b.adjoint() + HermitianMatrix::Identity(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_pencil_eig(S, Q));
}
BENCHMARK(BM_HermitianPencil)->Arg(8)->Arg(32)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_FrameConstants(benchmark::State& state) {
    const auto s = spaced_sum(state.range(0));
    const auto& seq = s.sequence();
    const double delta = band_delta(s);
    const SamplingGrid grid(delta, static_cast<long>(std::ceil(1.5 * pi / delta)));
    const auto cls = classify(seq);
    for (auto _ : state) benchmark::DoNotOptimize(frame_constants(seq, grid, cls));
}
BENCHMARK(BM_FrameConstants)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_CertifyConstants(benchmark::State& state) {
    const auto shape = state.range(0) == 0 ? KernelShape::direct(1.0) : KernelShape::inverse(1.0, 1.5 * pi);
    for (auto _ : state) benchmark::DoNotOptimize(certify_constants(shape, 10000));
}
BENCHMARK(BM_CertifyConstants)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_StringObservability(benchmark::State& state) {
    CoupledSystem sys;
    sys.a = std::sqrt(2.0) / 2.0;
    for (int n = 1; n <= 6; ++n) sys.left.push_back({n, 0.0, 0.0});
    for (int m = 1; m <= 2; ++m) sys.right.push_back({m, 0.0, 0.0});
    const SamplingGrid grid(0.1, 20);
    ObservabilityOptions opt;
    opt.trials = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(verify_observability(sys, grid, 0.1, opt));
}
BENCHMARK(BM_StringObservability)->Arg(0)->Arg(100)->Unit(benchmark::kMicrosecond);

} // namespace
BENCHMARK_MAIN();
