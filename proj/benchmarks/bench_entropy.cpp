#include <benchmark/benchmark.h>

#include "squeezelab/algebra.hpp"
#include "squeezelab/entropy.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"
#include "squeezelab/qubit.hpp"

using namespace squeezelab;
using Complex = std::complex<double>;

static void BM_WehrlClosedForm(benchmark::State& state) {
    const auto op = algebra::from_bogoliubov(std::sqrt(1.09), 0.3, 1.0);
    const auto s = gaussian::eigenstate_of(op, Complex(0.5, -0.2));
    for (auto _ : state) benchmark::DoNotOptimize(entropy::wehrl_gaussian(s));
}
BENCHMARK(BM_WehrlClosedForm);

static void BM_WehrlNumeric(benchmark::State& state) {
    const auto op = algebra::from_bogoliubov(std::sqrt(1.09), 0.3, 1.0);
    const auto s = gaussian::eigenstate_of(op, Complex(0.5, -0.2));
    entropy::GridSpec grid;
    grid.points = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(entropy::wehrl_numeric(s, grid));
}
BENCHMARK(BM_WehrlNumeric)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

static void BM_ScanWindow(benchmark::State& state) {
    const auto m = model::make_squeezing_model(1.0, 0.5, 1.0, 1.0, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(entropy::scan_window(m, 1.0, Complex(1.0, 0.0), 1e-3,
                                                      algebra::SplitStrategy::example_symmetric,
                                                      2.0, 1e-8));
}
BENCHMARK(BM_ScanWindow)->Unit(benchmark::kMillisecond);

static void BM_CnotGrid(benchmark::State& state) {
    const auto op = algebra::from_bogoliubov(std::sqrt(1.09), 0.3, 1.0);
    qubit::GridSpec2D spec;
    spec.n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(qubit::cnot_apply(Complex(1.0, 0.5), op, spec));
}
BENCHMARK(BM_CnotGrid)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
