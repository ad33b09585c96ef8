#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ciliagraph/aggregate.hpp"
#include "ciliagraph/classify.hpp"
#include "ciliagraph/dataset.hpp"
#include "ciliagraph/hv.hpp"
#include "ciliagraph/quantize.hpp"
#include "ciliagraph/rng.hpp"

namespace ciliagraph {

struct PageRankScores {
  std::vector<double> scores;  // non-negative, sums to 1
  double damping = 0.85;
  int iterations_run = 0;
};

// Power iteration with uniform teleportation; isolated (dangling) nodes are
// treated as linking to all nodes. Stops when the L1 change drops below tol.
PageRankScores pagerank(const GraphInstance& graph, double damping = 0.85,
                        int max_iters = 100, double tol = 1e-9);

// Static-graph baseline: node u gets the codebook hypervector at its PageRank
// rank (descending score, ties by node index); the graph representation is the
// bundle over edges of bind(H_u, H_v). Node attributes are not consulted.
RealHV graphhd_encode(const GraphInstance& graph, std::span<const BipolarHV> rank_codebook);

struct GraphHDModel {
  int dim = 10000;
  std::uint64_t seed = 0;
  std::vector<BipolarHV> codebook;  // shared across graphs, sized to max node count
  PrototypeSet prototypes;
  double train_time_s = 0.0;
  long long graphs_embedded = 0;
};

GraphHDModel graphhd_train(const GraphDataset& train_set, int codebook_size, int dim,
                           std::uint64_t seed);

// Full GraphHD pipeline on a holdout split, mirroring the classifier
// structure. The codebook is sized to the whole dataset's max node count so
// test graphs always fit.
EvalReport graphhd_train_eval(const GraphDataset& dataset, const SplitSpec& split, int dim,
                              std::uint64_t seed);

// Classical record-based codebook: one shared level chain with a fixed
// round(D/(2(m-1))) bits flipped per step, plus mutually random index
// hypervectors distinguishing the attributes.
struct RecordCodebook {
  std::vector<BipolarHV> level_hvs;
  std::vector<BipolarHV> id_hvs;

  [[nodiscard]] int dim() const { return level_hvs.empty() ? 0 : level_hvs.front().dim(); }
  [[nodiscard]] int levels() const { return static_cast<int>(level_hvs.size()); }
};

RecordCodebook init_record_codebook(int attr_count, int levels, int dim, Rng& rng);

// H_u = bundle over attributes of bind(id_i, level at attribute i's uniform
// quantization level).
IntegerHV record_encode_node(std::span<const double> attrs, const RecordCodebook& codebook,
                             std::span<const AttributeCenters> centers);

// Record-based end-to-end model: swaps the node encoder, keeps the
// weight-aggregation and prototype pipeline.
struct RecordModel {
  PipelineConfig config;
  int attr_count = 0;
  int class_count = 0;
  RecordCodebook codebook;
  std::vector<AttributeCenters> centers;  // uniform [f_min, f_max] bins
  PrototypeSet prototypes;
  double train_time_s = 0.0;
  long long graphs_embedded = 0;

  [[nodiscard]] RealHV embed(const GraphInstance& graph) const;
};

RecordModel record_train(const GraphDataset& train_set, const PipelineConfig& config);
EvalReport record_evaluate(const RecordModel& model, const GraphDataset& test_set);

// The hyper-weight substitutions compared in the ablations; "without" a matrix
// replaces its values by 1 while preserving the numerical sign.
HyperWeightMatrix ablation_hyper_weight(const GraphInstance& graph,
                                        const std::vector<IntegerHV>& node_hvs,
                                        WeightVariant variant);

}  // namespace ciliagraph
