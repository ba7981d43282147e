#include <benchmark/benchmark.h>

#include "ymh/random_fields.hpp"
#include "ymh/reference.hpp"

using namespace ymh;

namespace {

TorusGeometry geometry(const benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    if (state.range(1) == 2) return TorusGeometry({n, n}, {1.0, 1.0});
    return TorusGeometry({n, n, n}, {1.0, 1.0, 1.0});
}

BundleData bundle(const TorusGeometry& g) {
    ChernMatrix c(g.dim());
    c.set(0, 1, 1);
    return build_background(g, c);
}

template <bool Parallel>
void exterior(benchmark::State& state) {
    const TorusGeometry g = geometry(state);
    FieldSampler rng(1);
    const Cochain c = rng.cochain(g, 1);
    for (auto _ : state) benchmark::DoNotOptimize(Parallel ? exterior_derivative(c) : reference::exterior_derivative(c));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(c.size()));
}

template <bool Parallel>
void codiff(benchmark::State& state) {
    const TorusGeometry g = geometry(state);
    FieldSampler rng(2);
    const Cochain c = rng.cochain(g, 2);
    for (auto _ : state) benchmark::DoNotOptimize(Parallel ? codifferential(c) : reference::codifferential(c));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(c.size()));
}

template <bool Parallel>
void energy(benchmark::State& state) {
    const TorusGeometry g = geometry(state);
    const BundleData b = bundle(g);
    FieldSampler rng(3);
    const Section u = rng.near_unit_section(g);
    const Gauge1Form a = rng.gauge(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? g_energy(u, a, b, 0.1) : reference::g_energy(u, a, b, 0.1));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.site_count()));
}

template <bool Parallel>
void gradient(benchmark::State& state) {
    const TorusGeometry g = geometry(state);
    const BundleData b = bundle(g);
    FieldSampler rng(4);
    const Section u = rng.near_unit_section(g);
    const Gauge1Form a = rng.gauge(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? g_gradient(u, a, b, 0.1) : reference::g_gradient(u, a, b, 0.1));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.site_count()));
}

void sizes(benchmark::internal::Benchmark* b) {
    b->Args({256, 2})->Args({1024, 2})->Args({32, 3})->Args({96, 3})->Unit(benchmark::kMicrosecond)->UseRealTime();
}

}  // namespace

BENCHMARK(exterior<false>)->Name("d/reference")->Apply(sizes);
BENCHMARK(exterior<true>)->Name("d/parallel")->Apply(sizes);
BENCHMARK(codiff<false>)->Name("codifferential/reference")->Apply(sizes);
BENCHMARK(codiff<true>)->Name("codifferential/parallel")->Apply(sizes);
BENCHMARK(energy<false>)->Name("g_energy/reference")->Apply(sizes);
BENCHMARK(energy<true>)->Name("g_energy/parallel")->Apply(sizes);
BENCHMARK(gradient<false>)->Name("g_gradient/reference")->Apply(sizes);
BENCHMARK(gradient<true>)->Name("g_gradient/parallel")->Apply(sizes);

BENCHMARK_MAIN();
