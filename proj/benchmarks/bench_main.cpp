#include <benchmark/benchmark.h>

#include <random>

#include "circon/mscs.hpp"
#include "circon/dtw.hpp"
#include "circon/reductions.hpp"

using namespace circon;

namespace {

std::vector<BinaryString> random_strings(std::size_t k, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<BinaryString> out;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = rng() & 1;
        out.emplace_back(std::move(bits));
    }
    return out;
}

TimeSeries random_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Rational> vals(n);
    for (auto& v : vals) v = static_cast<int>(rng() % 10);
    return TimeSeries{std::move(vals)};
}

void BM_dtw_sq(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const TimeSeries x = random_series(n, 1), y = random_series(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(dtw_sq(x, y));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_dtw_sq)->Range(8, 256)->Complexity(benchmark::oNSquared);

void BM_cost_of_shift(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    MscsInstance inst{random_strings(4, n, 3), tabulate_builtin(Builtin::sigma, 4), std::nullopt};
    const ShiftVector delta{{0, n / 3, n / 2, 2 * n / 3}};
    for (auto _ : state) benchmark::DoNotOptimize(cost_of_shift(inst, delta));
}
BENCHMARK(BM_cost_of_shift)->Range(64, 4096);

void BM_solve_exhaustive(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    MscsInstance inst{random_strings(3, n, 5), tabulate_builtin(Builtin::sigma, 3), std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(solve_exhaustive(inst));
}
BENCHMARK(BM_solve_exhaustive)->DenseRange(8, 32, 8);

void BM_solve_exhaustive_threads(benchmark::State& state) {
    MscsInstance inst{random_strings(3, 48, 7), tabulate_builtin(Builtin::sigma, 3), std::nullopt};
    SolveOptions opts;
    opts.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_exhaustive(inst, opts));
}
BENCHMARK(BM_solve_exhaustive_threads)->Arg(1)->Arg(2)->Arg(4);

void BM_solve_mean_exact(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<TimeSeries> inputs = {random_series(n, 11), random_series(n, 12),
                                      random_series(n, 13)};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_mean_exact(inputs, {.max_len = n, .max_transitions = 500'000'000}));
}
BENCHMARK(BM_solve_mean_exact)->DenseRange(3, 6, 1);

void BM_rmcc_to_mscs(benchmark::State& state) {
    const RmccGraph g = generate(3, 3, 4, true, 17).graph;
    for (auto _ : state)
        benchmark::DoNotOptimize(rmcc_to_mscs(g, builtin_family(Builtin::sigma)));
}
BENCHMARK(BM_rmcc_to_mscs);

}  // namespace

BENCHMARK_MAIN();
