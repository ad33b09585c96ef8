#include <benchmark/benchmark.h>

#include <vector>

#include "ciliagraph/aggregate.hpp"
#include "ciliagraph/classify.hpp"
#include "ciliagraph/dataset.hpp"
#include "ciliagraph/encode.hpp"
#include "ciliagraph/hv.hpp"
#include "ciliagraph/quantize.hpp"
#include "ciliagraph/rng.hpp"

namespace {

using namespace ciliagraph;

GraphDataset synthetic_dataset(int graphs, int attrs, std::uint64_t seed) {
  Rng rng(seed);
  GraphDataset ds;
  ds.name = "bench";
  ds.attr_count = attrs;
  ds.class_count = 2;
  for (int i = 0; i < graphs; ++i) {
    const int nodes = 4 + static_cast<int>(rng.next_below(8));
    GraphInstance g;
    g.node_count = nodes;
    g.attr_count = attrs;
    g.label = i % 2;
    g.attrs.resize(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(attrs));
    const double shift = g.label == 0 ? 0.0 : 1.5;
    for (auto& a : g.attrs) a = shift + rng.next_gaussian();
    for (int u = 0; u < nodes; ++u) {
      for (int v = u + 1; v < nodes; ++v) {
        if (rng.next_unit() < 0.4) g.edges.push_back({u, v});
      }
    }
    ds.graphs.push_back(std::move(g));
  }
  return ds;
}

std::vector<LevelBank> bench_banks(int attrs, int levels, int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<AttributeCenters> centers(static_cast<std::size_t>(attrs));
  for (int a = 0; a < attrs; ++a) {
    for (int l = 0; l < levels; ++l) {
      centers[static_cast<std::size_t>(a)].centers.push_back(0.37 * l);
    }
    centers[static_cast<std::size_t>(a)].attr_index = a;
  }
  return init_all_banks(centers, dim, rng);
}

void BM_HammingBipolar(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  Rng rng(1);
  const BipolarHV a = BipolarHV::random(dim, rng);
  const BipolarHV b = BipolarHV::random(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamming(a, b));
  }
  state.SetItemsProcessed(state.iterations() * dim);
}
BENCHMARK(BM_HammingBipolar)->Arg(120)->Arg(2000)->Arg(10000);

void BM_Bind(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  Rng rng(2);
  const BipolarHV a = BipolarHV::random(dim, rng);
  const BipolarHV b = BipolarHV::random(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bind(a, b));
  }
  state.SetItemsProcessed(state.iterations() * dim);
}
BENCHMARK(BM_Bind)->Arg(120)->Arg(10000);

void BM_LevelBankInit(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  AttributeCenters centers;
  for (int l = 0; l < 8; ++l) centers.centers.push_back(0.13 * l);
  Rng rng(3);
  for (auto _ : state) {
    Rng local = rng.split(static_cast<std::uint64_t>(state.iterations()));
    benchmark::DoNotOptimize(init_level_bank(centers, dim, local));
  }
}
BENCHMARK(BM_LevelBankInit)->Arg(120)->Arg(2000)->Arg(10000);

void BM_EncodeGraph(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  const auto banks = bench_banks(8, 8, dim, 4);
  Rng rng(5);
  GraphDataset ds = synthetic_dataset(1, 8, 6);
  const GraphInstance& g = ds.graphs.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_graph_nodes(g, banks));
  }
  state.SetItemsProcessed(state.iterations() * g.node_count);
}
BENCHMARK(BM_EncodeGraph)->Arg(120)->Arg(2000);

void BM_AggregatePipeline(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  const auto banks = bench_banks(4, 8, dim, 7);
  GraphDataset ds = synthetic_dataset(1, 4, 8);
  const GraphInstance& g = ds.graphs.front();
  const auto node_hvs = encode_graph_nodes(g, banks);
  for (auto _ : state) {
    const auto p = build_hyper_weight(node_hvs, g, WeightVariant::full);
    const auto a = aggregate(node_hvs, p);
    benchmark::DoNotOptimize(graph_representation(concat_features(node_hvs, a)));
  }
}
BENCHMARK(BM_AggregatePipeline)->Arg(120)->Arg(2000);

void BM_TrainEndToEnd(benchmark::State& state) {
  const GraphDataset ds = synthetic_dataset(static_cast<int>(state.range(0)), 4, 9);
  PipelineConfig cfg;
  cfg.dim = 120;
  cfg.levels = 8;
  cfg.seed = 11;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(ds, cfg));
  }
  state.SetItemsProcessed(state.iterations() * ds.size());
}
BENCHMARK(BM_TrainEndToEnd)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
