#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ciliagraph/aggregate.hpp"
#include "ciliagraph/dataset.hpp"
#include "ciliagraph/encode.hpp"
#include "ciliagraph/eval.hpp"
#include "ciliagraph/hv.hpp"
#include "ciliagraph/quantize.hpp"

namespace ciliagraph {

// End-to-end model flavor. full/p1/p2/p3/uniform_quant share the level-bank
// pipeline and model file; graphhd and record are the baseline paths.
enum class Variant { full, p1, p2, p3, uniform_quant, graphhd, record };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& name);

struct PipelineConfig {
  int dim = 120;
  int levels = 8;
  std::uint64_t seed = 0;
  Variant variant = Variant::full;
  HyperWeightMode hw_mode = HyperWeightMode::entrywise;
};

// Class prototypes: plain sums of member graph representations, kept
// real-valued; inference takes the dot product against the L2-normalized
// forms, which ranks classes exactly like cosine similarity.
struct PrototypeSet {
  std::vector<RealHV> prototypes;
  std::vector<double> norms;
  std::vector<RealHV> normalized;

  [[nodiscard]] int class_count() const noexcept { return static_cast<int>(prototypes.size()); }
};

PrototypeSet fit_prototypes(const std::vector<RealHV>& embeddings,
                            const std::vector<int>& labels, int class_count);

struct Prediction {
  int label = 0;
  bool zero_norm_warning = false;  // degenerate query fell back to class 0
};

// argmax_i dot(normalized[i], query), ties toward the smaller class index.
Prediction predict_prototype(const PrototypeSet& prototypes, const RealHV& query);

struct TrainedModel {
  PipelineConfig config;
  int attr_count = 0;
  int class_count = 0;
  std::vector<AttributeCenters> centers;
  std::vector<LevelBank> banks;
  PrototypeSet prototypes;

  // Run metadata; not part of the persisted artifact.
  double train_time_s = 0.0;
  long long graphs_embedded = 0;  // single-pass counter: one bump per training graph

  // Full pipeline for one graph: encode nodes, weight-aggregate, concatenate,
  // columnwise mean. Result has dimension 2*config.dim.
  [[nodiscard]] RealHV embed(const GraphInstance& graph) const;
};

// One-shot training: fits the quantizer on the training split, initializes the
// level banks, embeds every training graph exactly once and sums the
// embeddings into per-class prototypes. No iteration.
TrainedModel train(const GraphDataset& train_set, const PipelineConfig& config,
                   std::ostream* diag = nullptr);

Prediction predict(const TrainedModel& model, const GraphInstance& graph);

EvalReport evaluate(const TrainedModel& model, const GraphDataset& test_set);

// Shared measurement loop used by the baseline models as well.
EvalReport evaluate_with(const std::function<RealHV(const GraphInstance&)>& embed,
                         const PrototypeSet& prototypes, const GraphDataset& test_set,
                         double train_time_s);

}  // namespace ciliagraph
