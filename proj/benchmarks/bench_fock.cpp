#include <benchmark/benchmark.h>

#include "squeezelab/fockoracle.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"

using namespace squeezelab;

static void BM_GeneratorApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    fockoracle::FockGenerator gen(m, n);
    gaussian::GaussianState vac;
    vac.cov = 0.5 * Eigen::Matrix2d::Identity();
    const auto rho = fockoracle::gaussian_to_fock(vac, n);
    for (auto _ : state) benchmark::DoNotOptimize(gen.apply(0.5, rho.rho));
}
BENCHMARK(BM_GeneratorApply)->Arg(20)->Arg(40)->Arg(80);

static void BM_IntegrateMaster(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    gaussian::GaussianState coh;
    coh.cov = 0.5 * Eigen::Matrix2d::Identity();
    coh.mean << 1.0, 0.5;
    const auto rho0 = fockoracle::gaussian_to_fock(coh, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(fockoracle::integrate_master(rho0, m, 0.1, 1e-3, n));
}
BENCHMARK(BM_IntegrateMaster)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_GaussianToFock(benchmark::State& state) {
    gaussian::GaussianState mixed;
    mixed.cov = Eigen::Matrix2d::Identity();
    mixed.mean << 0.4, -0.2;
    for (auto _ : state) benchmark::DoNotOptimize(fockoracle::gaussian_to_fock(mixed, 60));
    // mixed branch: Williamson + matrix exponentials per call
}
BENCHMARK(BM_GaussianToFock)->Unit(benchmark::kMillisecond);
