#include <jacoframe/frame.hpp>
#include <jacoframe/gram.hpp>
#include <jacoframe/kernel.hpp>
#include <jacoframe/mask.hpp>
#include <jacoframe/measure.hpp>
#include <jacoframe/point_set.hpp>
#include <jacoframe/scattered_rule.hpp>

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace jacoframe;

const RecurrenceTable& legendre_table()
{
    static const RecurrenceTable table = build_recurrence(JacobiParams(0.0, 0.0), 2048);
    return table;
}

void bm_gauss_rule(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gauss_rule(legendre_table(), m));
}
BENCHMARK(bm_gauss_rule)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void bm_weighted_gram(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const ScatteredSet set = random_points(1024, 42);
    const std::vector<double> nodes(set.xs.rbegin(), set.xs.rend());
    const BasisMatrix basis = basis_matrix(legendre_table(), nodes, n + 1);
    std::vector<double> weights(nodes.size(), 1.0 / 1024);
    for (auto _ : state)
        benchmark::DoNotOptimize(weighted_gram(basis, weights, n + 1));
}
BENCHMARK(bm_weighted_gram)->Arg(256)->Arg(512)->Arg(1023)->Unit(benchmark::kMillisecond);

void bm_build_rule(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const ScatteredSet set = random_points(1024, 42);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_rule(legendre_table(), set, n));
}
BENCHMARK(bm_build_rule)->Arg(256)->Arg(512)->Arg(1023)->Unit(benchmark::kMillisecond);

void bm_localization_profile(benchmark::State& state)
{
    const double lambda = static_cast<double>(state.range(0));
    const MultiplierMask h = make_lowpass(4);
    const auto grid = uniform_theta_grid(256);
    for (auto _ : state)
        benchmark::DoNotOptimize(localization_profile(legendre_table(), h, lambda, grid));
}
BENCHMARK(bm_localization_profile)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_frame_analyze(benchmark::State& state)
{
    const int levels = static_cast<int>(state.range(0));
    const MultiplierMask h = make_lowpass(4);
    std::vector<double> fhat(std::size_t{1} << levels, 0.0);
    for (std::size_t k = 0; k < fhat.size(); ++k)
        fhat[k] = 1.0 / (1.0 + static_cast<double>(k));
    for (auto _ : state)
        benchmark::DoNotOptimize(analyze(legendre_table(), h, levels, fhat));
}
BENCHMARK(bm_frame_analyze)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
