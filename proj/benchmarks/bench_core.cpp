// bench_core.cpp - microbenchmarks along the hot path of one sweep point:
// Hamiltonian assembly, eigendecomposition, kernel construction, channel
// evaluation, the purity optimizer, and a whole sweep point end to end.
// The range argument is n_bath, so scaling with truncation is visible.

#include <benchmark/benchmark.h>

#include "oresim/dynamics.hpp"
#include "oresim/harness.hpp"
#include "oresim/model.hpp"
#include "oresim/optimize.hpp"
#include "oresim/resonance.hpp"
#include "oresim/spectral.hpp"

namespace {

using namespace oresim;

constexpr double k_two_pi = 6.283185307179586476925286766559;

model::HamiltonianParams params(int n_bath) {
    model::HamiltonianParams p;
    p.omega = k_two_pi * 1.0;
    p.omega0 = k_two_pi * 0.1;
    p.g_r = k_two_pi * 0.4;
    p.g_nr = k_two_pi * 1.0;
    p.g_ph = k_two_pi * 0.5;
    p.n_bath = n_bath;
    return p;
}

dynamics::OverlapTable table(int n_bath) {
    const auto p = params(n_bath);
    return dynamics::overlap_table(
        spectral::eigh(model::build_hamiltonian(p)), model::build_basis(n_bath),
        spectral::thermal_weights(p.omega, 0.025, n_bath));
}

void bm_build_hamiltonian(benchmark::State& state) {
    const auto p = params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(model::build_hamiltonian(p));
    }
}
BENCHMARK(bm_build_hamiltonian)->Arg(20)->Arg(40);

void bm_eigh(benchmark::State& state) {
    const auto h = model::build_hamiltonian(params(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral::eigh(h));
    }
}
BENCHMARK(bm_eigh)->Arg(20)->Arg(40);

void bm_kernel_build(benchmark::State& state) {
    const auto t = table(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        dynamics::ChannelKernel kernel(t);
        benchmark::DoNotOptimize(kernel);
    }
}
BENCHMARK(bm_kernel_build)->Arg(20)->Arg(40);

void bm_channel_eval(benchmark::State& state) {
    const dynamics::ChannelKernel kernel(table(static_cast<int>(state.range(0))));
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-4;  // vary the argument so nothing can be hoisted
        benchmark::DoNotOptimize(kernel.at(t));
    }
}
BENCHMARK(bm_channel_eval)->Arg(20)->Arg(40);

void bm_max_purity(benchmark::State& state) {
    const auto ch =
        dynamics::channel_matrices(table(static_cast<int>(state.range(0))), 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize::max_purity(ch));
    }
}
BENCHMARK(bm_max_purity)->Arg(20);

void bm_overlap_metric(benchmark::State& state) {
    const auto t = table(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(resonance::overlap_metric(t));
    }
}
BENCHMARK(bm_overlap_metric)->Arg(20)->Arg(40);

void bm_sweep_point(benchmark::State& state) {
    harness::SweepConfig config;
    config.g_nr_ghz = 1.0;
    config.g_ph_ghz = 0.5;
    config.n_bath = static_cast<int>(state.range(0));
    config.outputs.s_max = true;
    config.outputs.s_diff = true;
    config.outputs.a_pm = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(harness::compute_row(config, 0.4));
    }
}
BENCHMARK(bm_sweep_point)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
