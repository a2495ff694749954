#include "scdens/orbits.hpp"
#include "scdens/quantum.hpp"
#include "scdens/smooth_tf.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace scdens;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void quantum_sphere(benchmark::State& state)
{
    const auto m = sphere_billiard(3, 1.0);
    const Grid g = line_grid(0.0, 0.99, 201);
    int n = 0;
    const auto sys = make_eigensystem(m, 120);
    for (const auto& level : sys->levels()) n += m.spin * level.degeneracy;
    for (auto _ : state) benchmark::DoNotOptimize(densities(m, n, g, exec_of(state)));
}

void quantum_iho4(benchmark::State& state)
{
    const auto m = iho(4);
    const Grid g = line_grid(0.0, 10.5, 526);
    for (auto _ : state) benchmark::DoNotOptimize(densities(m, 632502, g, exec_of(state)));
}

void orbit_sum_iho3(benchmark::State& state)
{
    const auto m = iho(3);
    const double lambda = tf_lambda(m, 3080);
    const Grid g = line_grid(1.5, 5.8, 400);
    for (auto _ : state) benchmark::DoNotOptimize(scl_profile_iho(m, lambda, g, {}, exec_of(state)));
}

void image_sum_rect(benchmark::State& state)
{
    const auto m = rect_billiard(std::pow(2.0, 0.25), std::pow(3.0, 0.25));
    const double lambda = weyl_lambda(m, 2000);
    const Grid g = cut_grid(parse_cut("x=0.5"), 0.005, m.qy - 0.005, 400);
    const ImageCutoff cut = default_image_cutoff(m);
    for (auto _ : state) benchmark::DoNotOptimize(scl_profile_rect(m, lambda, g, cut, exec_of(state)));
}

void orbit_sum_quartic(benchmark::State& state)
{
    const auto m = quartic1d();
    const double lambda = tf_lambda(m, 40);
    const Grid g = line_grid(0.0, 3.0, 301);
    for (auto _ : state) benchmark::DoNotOptimize(scl_profile_1d(m, lambda, g, 200, exec_of(state)));
}

} // namespace

BENCHMARK(quantum_sphere)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(quantum_iho4)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(orbit_sum_iho3)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(image_sum_rect)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(orbit_sum_quartic)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
