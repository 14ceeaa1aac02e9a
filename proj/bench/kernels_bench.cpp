// Serial reference path (workers = 1) against the OpenMP kernels on the same
// inputs. Arg 0 is the worker count; 0 means omp_get_max_threads().

#include <benchmark/benchmark.h>
#include <omp.h>

#include "posr/chain_index.hpp"
#include "posr/constructions.hpp"
#include "posr/embedding.hpp"
#include "posr/lubell.hpp"
#include "posr/ramsey.hpp"

using namespace posr;

namespace {

int workers_of(const benchmark::State& state) {
    const auto w = static_cast<int>(state.range(0));
    return w == 0 ? omp_get_max_threads() : w;
}

void BM_CopyEnumeration(benchmark::State& state) {
    const auto host = HostPoset::build(HostFamily::boolean(), 5);
    const ChainIndex chains(host, 2);
    const auto pattern = make_pograph("diamond:2", 2);
    const SearchOptions opts{kDefaultCopyCap, workers_of(state)};
    for (auto _ : state) benchmark::DoNotOptimize(copy_edge_sets(pattern, host, chains, opts));
    state.counters["workers"] = opts.workers;
}

void BM_EmbeddingCount(benchmark::State& state) {
    const auto host = HostPoset::build(HostFamily::boolean(), 6);
    const ChainIndex chains(host, 1);
    const auto pattern = make_pograph("butterfly:2x2", 1);
    const SearchOptions opts{kDefaultCopyCap, workers_of(state)};
    for (auto _ : state) benchmark::DoNotOptimize(count_embeddings(pattern, host, chains, opts));
    state.counters["workers"] = opts.workers;
}

void BM_ExactL(benchmark::State& state) {
    const auto pattern = make_pograph("butterfly:2x2", 1);
    const int w = workers_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(exact_L(pattern, 4, w));
    state.counters["workers"] = w;
}

void BM_AvoidingColoring(benchmark::State& state) {
    const auto host = HostPoset::build(HostFamily::boolean(), 4);
    const ChainIndex chains(host, 1);
    const auto pattern = make_pograph("butterfly:2x2", 1);
    const auto copies = copy_edge_sets(pattern, host, chains);
    const int w = workers_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(find_avoiding_coloring(chains.size(), {copies, copies}, w));
    state.counters["workers"] = w;
}

void BM_MonochromaticCheck(benchmark::State& state) {
    const auto c = rd_coloring(builtin_R3());
    const auto host = HostPoset::build(c.host);
    const ChainIndex chains(host, 1);
    const auto pattern = make_pograph("boolean:3", 1);
    const SearchOptions opts{kDefaultCopyCap, workers_of(state)};
    for (auto _ : state) {
        for (int color = 1; color <= 2; ++color)
            benchmark::DoNotOptimize(find_monochromatic_copy(pattern, host, chains, {c.colors, color}, opts));
    }
    state.counters["workers"] = opts.workers;
}

} // namespace

BENCHMARK(BM_CopyEnumeration)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmbeddingCount)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactL)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AvoidingColoring)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonochromaticCheck)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
