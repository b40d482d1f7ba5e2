// Serial reference vs OpenMP enumeration kernels.
#include "psdparam/definiteness.hpp"
#include "psdparam/sweep.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace psdparam;

SymMatrix random_sym(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            a.set(i, j, u(rng));
    return a;
}

ParametricSymMatrix random_problem(std::size_t n, std::size_t k_count)
{
    std::mt19937_64 rng(42);
    std::vector<SymMatrix> coeffs;
    std::vector<Interval> box;
    coeffs.push_back(SymMatrix::identity(n) * (4.0 * static_cast<double>(n)));
    box.push_back(Interval(1.0, 1.0));
    for (std::size_t k = 1; k < k_count; ++k) {
        coeffs.push_back(random_sym(n, rng));
        box.push_back(Interval(0.0, 1.0));
    }
    return ParametricSymMatrix(std::move(coeffs), ParameterBox(std::move(box)));
}

void BM_VertexSweep(benchmark::State& state, Exec exec)
{
    const auto pm = random_problem(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const VertexPlan plan(pm);
    for (auto _ : state) {
        auto r = vertex_sweep(pm, plan, Definiteness::definite, Tolerance{}, exec);
        benchmark::DoNotOptimize(r);
    }
    state.counters["vertices"] = static_cast<double>(plan.count());
}

void BM_SignSweep(benchmark::State& state, Exec exec)
{
    std::mt19937_64 rng(7);
    const auto n = static_cast<std::size_t>(state.range(0));
    const SymMatrix mid = random_sym(n, rng) + SymMatrix::identity(n) * (3.0 * static_cast<double>(n));
    Matrix rad(n, n);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            rad(i, j) = rad(j, i) = u(rng);
    for (auto _ : state) {
        auto r = sign_sweep(mid.matrix(), rad, Definiteness::semidefinite, Tolerance{}, exec);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK_CAPTURE(BM_VertexSweep, serial, Exec::serial)->Args({8, 11})->Args({20, 13})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VertexSweep, openmp, Exec::parallel)->Args({8, 11})->Args({20, 13})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SignSweep, serial, Exec::serial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SignSweep, openmp, Exec::parallel)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
