#include <benchmark/benchmark.h>

#include "squeezelab/model.hpp"
#include "squeezelab/wsolve.hpp"

using namespace squeezelab;

static void BM_SolveW_Reference(benchmark::State& state) {
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const double tol = std::pow(10.0, -state.range(0));
    for (auto _ : state) {
        auto traj = wsolve::solve_w(m, 2.0, tol);
        benchmark::DoNotOptimize(traj.at(1.0));
    }
}
BENCHMARK(BM_SolveW_Reference)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

static void BM_SolveW_Squeezing(benchmark::State& state) {
    const auto m = model::make_squeezing_model(1.0, 0.5, 1.0, 1.0, 2.0);
    for (auto _ : state) {
        auto traj = wsolve::solve_w(m, 2.0, 1e-10);
        benchmark::DoNotOptimize(traj.at(1.7));
    }
}
BENCHMARK(BM_SolveW_Squeezing);

static void BM_DenseEval(benchmark::State& state) {
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const auto traj = wsolve::solve_w(m, 2.0, 1e-10);
    double t = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(traj.at(t));
        t = t < 1.99 ? t + 1e-4 : 0.01;
    }
}
BENCHMARK(BM_DenseEval);
