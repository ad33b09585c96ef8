#include "ciliagraph/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "ciliagraph/errors.hpp"

namespace ciliagraph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kCodebookStreamKey = 0xC0DEu;
constexpr std::uint64_t kLevelStreamKey = 0x1E7Eu;
constexpr std::uint64_t kIdStreamKey = 0x1D5u;

// Node order by descending PageRank score, ties toward the smaller index.
std::vector<int> pagerank_ranks(const GraphInstance& graph) {
  const auto pr = pagerank(graph);
  std::vector<int> order(static_cast<std::size_t>(graph.node_count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&pr](int a, int b) {
    return pr.scores[static_cast<std::size_t>(a)] > pr.scores[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank_of(static_cast<std::size_t>(graph.node_count));
  for (int r = 0; r < graph.node_count; ++r) {
    rank_of[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
  }
  return rank_of;
}

}  // namespace

PageRankScores pagerank(const GraphInstance& graph, double damping, int max_iters,
                        double tol) {
  if (graph.node_count == 0) throw InputError("pagerank: empty graph");
  const auto n = static_cast<std::size_t>(graph.node_count);
  const double uniform = 1.0 / static_cast<double>(n);

  PageRankScores result;
  result.damping = damping;
  result.scores.assign(n, uniform);
  if (graph.node_count == 1) {
    result.scores[0] = 1.0;
    return result;
  }

  const auto deg = graph.degrees();
  const auto adj = graph.adjacency();
  std::vector<double> next(n, 0.0);
  for (int iter = 0; iter < max_iters; ++iter) {
    double dangling_mass = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (deg[u] == 0) dangling_mass += result.scores[u];
    }
    const double base = (1.0 - damping) * uniform + damping * dangling_mass * uniform;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t u = 0; u < n; ++u) {
      if (deg[u] == 0) continue;
      const double share = damping * result.scores[u] / static_cast<double>(deg[u]);
      for (const int v : adj[u]) next[static_cast<std::size_t>(v)] += share;
    }
    double change = 0.0;
    for (std::size_t u = 0; u < n; ++u) change += std::abs(next[u] - result.scores[u]);
    result.scores.swap(next);
    result.iterations_run = iter + 1;
    if (change < tol) break;
  }
  return result;
}

RealHV graphhd_encode(const GraphInstance& graph, std::span<const BipolarHV> rank_codebook) {
  if (static_cast<int>(rank_codebook.size()) < graph.node_count) {
    throw CompatError("graphhd_encode: codebook of " + std::to_string(rank_codebook.size()) +
                      " hypervectors is too small for " + std::to_string(graph.node_count) +
                      " nodes");
  }
  const int dim = rank_codebook.empty() ? 0 : rank_codebook.front().dim();
  const auto rank_of = pagerank_ranks(graph);
  RealHV rep(dim);
  for (const auto& [u, v] : graph.edges) {
    const auto& hu = rank_codebook[static_cast<std::size_t>(rank_of[static_cast<std::size_t>(u)])];
    const auto& hv = rank_codebook[static_cast<std::size_t>(rank_of[static_cast<std::size_t>(v)])];
    for (int k = 0; k < dim; ++k) {
      rep.e[static_cast<std::size_t>(k)] +=
          static_cast<double>(hu.e[static_cast<std::size_t>(k)]) *
          static_cast<double>(hv.e[static_cast<std::size_t>(k)]);
    }
  }
  return rep;
}

GraphHDModel graphhd_train(const GraphDataset& train_set, int codebook_size, int dim,
                           std::uint64_t seed) {
  if (train_set.size() == 0) throw InputError("graphhd_train: empty training set");
  const auto start = Clock::now();
  GraphHDModel model;
  model.dim = dim;
  model.seed = seed;
  Rng rng(seed);
  Rng cb_rng = rng.split(kCodebookStreamKey);
  model.codebook.reserve(static_cast<std::size_t>(codebook_size));
  for (int i = 0; i < codebook_size; ++i) {
    model.codebook.push_back(BipolarHV::random(dim, cb_rng));
  }
  std::vector<RealHV> embeddings;
  std::vector<int> labels;
  embeddings.reserve(train_set.graphs.size());
  labels.reserve(train_set.graphs.size());
  for (const auto& graph : train_set.graphs) {
    embeddings.push_back(graphhd_encode(graph, model.codebook));
    labels.push_back(graph.label);
    ++model.graphs_embedded;
  }
  model.prototypes = fit_prototypes(embeddings, labels, train_set.class_count);
  model.train_time_s = seconds_since(start);
  return model;
}

EvalReport graphhd_train_eval(const GraphDataset& dataset, const SplitSpec& split, int dim,
                              std::uint64_t seed) {
  const auto [train_set, test_set] = split_holdout(dataset, split);
  int max_nodes = 0;
  for (const auto& g : dataset.graphs) max_nodes = std::max(max_nodes, g.node_count);
  const GraphHDModel model = graphhd_train(train_set, max_nodes, dim, seed);
  return evaluate_with(
      [&model](const GraphInstance& g) { return graphhd_encode(g, model.codebook); },
      model.prototypes, test_set, model.train_time_s);
}

RecordCodebook init_record_codebook(int attr_count, int levels, int dim, Rng& rng) {
  if (attr_count < 1) throw InputError("record codebook: need at least one attribute");
  if (levels < 2) throw InputError("record codebook: need at least two levels");
  if (dim < 1) throw InputError("record codebook: dim must be positive");

  RecordCodebook cb;
  Rng level_rng = rng.split(kLevelStreamKey);
  cb.level_hvs.push_back(BipolarHV::random(dim, level_rng));

  // Fixed flips per step, positions never reused: L_1 and L_m end up
  // (m-1)*round(D/(2(m-1))) ~ D/2 bits apart.
  const int flips_per_step =
      static_cast<int>(std::llround(static_cast<double>(dim) /
                                    (2.0 * static_cast<double>(levels - 1))));
  std::vector<int> pool(static_cast<std::size_t>(dim));
  std::iota(pool.begin(), pool.end(), 0);
  level_rng.shuffle(pool);
  std::size_t cursor = 0;
  for (int step = 1; step < levels; ++step) {
    BipolarHV next = cb.level_hvs.back();
    for (int f = 0; f < flips_per_step && cursor < pool.size(); ++f) {
      const auto pos = static_cast<std::size_t>(pool[cursor++]);
      next.e[pos] = static_cast<std::int8_t>(-next.e[pos]);
    }
    cb.level_hvs.push_back(std::move(next));
  }

  Rng id_rng = rng.split(kIdStreamKey);
  cb.id_hvs.reserve(static_cast<std::size_t>(attr_count));
  for (int i = 0; i < attr_count; ++i) {
    cb.id_hvs.push_back(BipolarHV::random(dim, id_rng));
  }
  return cb;
}

IntegerHV record_encode_node(std::span<const double> attrs, const RecordCodebook& codebook,
                             std::span<const AttributeCenters> centers) {
  if (attrs.size() != codebook.id_hvs.size() || attrs.size() != centers.size()) {
    throw CompatError("record_encode_node: attribute/codebook/centers size mismatch");
  }
  IntegerHV acc(codebook.dim());
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const int level = quantize(attrs[i], centers[i]);
    bundle_into(acc, bind(codebook.id_hvs[i],
                          codebook.level_hvs[static_cast<std::size_t>(level - 1)]));
  }
  return acc;
}

RealHV RecordModel::embed(const GraphInstance& graph) const {
  if (graph.attr_count != attr_count) {
    throw CompatError("record embed: attribute count mismatch");
  }
  std::vector<IntegerHV> node_hvs;
  node_hvs.reserve(static_cast<std::size_t>(graph.node_count));
  std::vector<double> row(static_cast<std::size_t>(attr_count));
  for (int u = 0; u < graph.node_count; ++u) {
    for (int i = 0; i < attr_count; ++i) row[static_cast<std::size_t>(i)] = graph.attr(u, i);
    node_hvs.push_back(record_encode_node(row, codebook, centers));
  }
  const auto p = build_hyper_weight(node_hvs, graph, WeightVariant::full, config.hw_mode);
  const auto aggregated = aggregate(node_hvs, p);
  return graph_representation(concat_features(node_hvs, aggregated));
}

RecordModel record_train(const GraphDataset& train_set, const PipelineConfig& config) {
  if (train_set.size() == 0) throw InputError("record_train: empty training set");
  const auto start = Clock::now();
  RecordModel model;
  model.config = config;
  model.config.variant = Variant::record;
  model.attr_count = train_set.attr_count;
  model.class_count = train_set.class_count;
  model.centers = fit_all(train_set, config.levels, /*uniform=*/true);
  Rng rng(config.seed);
  model.codebook = init_record_codebook(train_set.attr_count, config.levels, config.dim, rng);

  std::vector<RealHV> embeddings;
  std::vector<int> labels;
  embeddings.reserve(train_set.graphs.size());
  labels.reserve(train_set.graphs.size());
  for (const auto& graph : train_set.graphs) {
    embeddings.push_back(model.embed(graph));
    labels.push_back(graph.label);
    ++model.graphs_embedded;
  }
  model.prototypes = fit_prototypes(embeddings, labels, train_set.class_count);
  model.train_time_s = seconds_since(start);
  return model;
}

EvalReport record_evaluate(const RecordModel& model, const GraphDataset& test_set) {
  return evaluate_with([&model](const GraphInstance& g) { return model.embed(g); },
                       model.prototypes, test_set, model.train_time_s);
}

HyperWeightMatrix ablation_hyper_weight(const GraphInstance& graph,
                                        const std::vector<IntegerHV>& node_hvs,
                                        WeightVariant variant) {
  return build_hyper_weight(node_hvs, graph, variant, HyperWeightMode::entrywise);
}

}  // namespace ciliagraph
