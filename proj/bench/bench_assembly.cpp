// Parallel kernels against the serial reference implementations.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "npstrain/layer_ops.hpp"
#include "npstrain/resonance_sweep.hpp"
#include "npstrain/spectral.hpp"

using namespace npstrain;

namespace {

const CellGeometry& cell_for(int n) {
    static std::vector<std::pair<int, CellGeometry>> cache;
    for (const auto& [size, cell] : cache) {
        if (size == n) return cell;
    }
    cache.emplace_back(n, make_disk_cell(0.45, 1.0, n));
    return cache.back().second;
}

void single_layer_parallel(benchmark::State& state) {
    const CellGeometry& cell = cell_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_single_layer(cell));
}

void single_layer_reference(benchmark::State& state) {
    const CellGeometry& cell = cell_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::assemble_single_layer(cell));
}

void np_adjoint_parallel(benchmark::State& state) {
    const CellGeometry& cell = cell_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_np_adjoint(cell));
}

void np_adjoint_reference(benchmark::State& state) {
    const CellGeometry& cell = cell_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::assemble_np_adjoint(cell));
}

const SpectralDecomposition& spectrum() {
    static const SpectralDecomposition spec = eigendecompose(cell_for(256));
    return spec;
}

void sweep_parallel(benchmark::State& state) {
    const SpectralDecomposition& spec = spectrum();
    for (auto _ : state) benchmark::DoNotOptimize(sweep(spec, MaterialParams{}, SweepWindow{}));
}

void sweep_reference(benchmark::State& state) {
    const SpectralDecomposition& spec = spectrum();
    for (auto _ : state) benchmark::DoNotOptimize(reference::sweep(spec, MaterialParams{}, SweepWindow{}));
}

} // namespace

BENCHMARK(single_layer_parallel)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(single_layer_reference)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(np_adjoint_parallel)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(np_adjoint_reference)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(sweep_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(sweep_reference)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
