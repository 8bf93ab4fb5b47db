#include <benchmark/benchmark.h>

#include "squeezelab/channels.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"

using namespace squeezelab;
using Complex = std::complex<double>;

static void BM_SymplecticFlow(benchmark::State& state) {
    const auto m = model::make_squeezing_model(1.0, 0.5, 1.0, 1.0, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(channels::symplectic_flow(m, 0.0, 2.0, 1e-10));
}
BENCHMARK(BM_SymplecticFlow);

static void BM_DpPropagate(benchmark::State& state) {
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const auto strat = algebra::SplitStrategy::q_filter;
    const auto c_star = channels::lowering_c_at(m, 1.0, strat, 1e-10);
    const auto s0 = gaussian::eigenstate_of(c_star, Complex(1.0, 0.5));
    for (auto _ : state)
        benchmark::DoNotOptimize(channels::dp_propagate(m, s0, 1.0, strat, 1e-10));
}
BENCHMARK(BM_DpPropagate);

static void BM_SchrodingerPropagate(benchmark::State& state) {
    const auto m = model::make_squeezing_model(1.0, 0.5, 1.0, 1.0, 2.0);
    const auto strat = algebra::SplitStrategy::example_symmetric;
    const auto c_star = channels::lowering_c_at(m, 1.0, strat, 1e-10);
    const auto s0 = gaussian::eigenstate_of(c_star, Complex(1.0, 0.5));
    for (auto _ : state)
        benchmark::DoNotOptimize(channels::schrodinger_propagate(m, s0, 1.0, strat, 1e-10));
}
BENCHMARK(BM_SchrodingerPropagate);
