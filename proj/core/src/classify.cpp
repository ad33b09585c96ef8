#include "ciliagraph/classify.hpp"

#include <chrono>
#include <ostream>

#include "ciliagraph/errors.hpp"

namespace ciliagraph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

WeightVariant weight_variant_of(Variant v) {
  switch (v) {
    case Variant::p1: return WeightVariant::p1;
    case Variant::p2: return WeightVariant::p2;
    case Variant::p3: return WeightVariant::p3;
    default: return WeightVariant::full;
  }
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::full: return "full";
    case Variant::p1: return "p1";
    case Variant::p2: return "p2";
    case Variant::p3: return "p3";
    case Variant::uniform_quant: return "uniform-quant";
    case Variant::graphhd: return "graphhd";
    case Variant::record: return "record";
  }
  throw InternalError("to_string: unknown variant");
}

Variant variant_from_string(const std::string& name) {
  if (name == "full") return Variant::full;
  if (name == "p1") return Variant::p1;
  if (name == "p2") return Variant::p2;
  if (name == "p3") return Variant::p3;
  if (name == "uniform-quant") return Variant::uniform_quant;
  if (name == "graphhd") return Variant::graphhd;
  if (name == "record") return Variant::record;
  throw InputError("unknown variant '" + name +
                   "' (expected full|p1|p2|p3|uniform-quant|graphhd|record)");
}

PrototypeSet fit_prototypes(const std::vector<RealHV>& embeddings,
                            const std::vector<int>& labels, int class_count) {
  if (embeddings.size() != labels.size()) {
    throw CompatError("fit_prototypes: embedding/label count mismatch");
  }
  if (embeddings.empty()) throw InputError("fit_prototypes: no embeddings");
  if (class_count < 2) throw InputError("fit_prototypes: need at least 2 classes");

  const int dim = embeddings.front().dim();
  PrototypeSet out;
  out.prototypes.assign(static_cast<std::size_t>(class_count), RealHV(dim));
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const int label = labels[i];
    if (label < 0 || label >= class_count) {
      throw InputError("fit_prototypes: label " + std::to_string(label) + " out of range");
    }
    auto& proto = out.prototypes[static_cast<std::size_t>(label)];
    for (std::size_t k = 0; k < proto.e.size(); ++k) proto.e[k] += embeddings[i].e[k];
  }
  out.norms.reserve(static_cast<std::size_t>(class_count));
  out.normalized.reserve(static_cast<std::size_t>(class_count));
  for (int c = 0; c < class_count; ++c) {
    const auto& proto = out.prototypes[static_cast<std::size_t>(c)];
    const double norm = l2_norm(proto);
    if (norm == 0.0) {
      throw InputError("fit_prototypes: class " + std::to_string(c) +
                       " has an all-zero prototype (empty class?)");
    }
    out.norms.push_back(norm);
    out.normalized.push_back(l2_normalize(proto));
  }
  return out;
}

Prediction predict_prototype(const PrototypeSet& prototypes, const RealHV& query) {
  if (prototypes.class_count() == 0) throw InternalError("predict: no prototypes");
  if (l2_norm(query) == 0.0) {
    return {0, true};
  }
  int best = 0;
  double best_score = dot(prototypes.normalized[0], query);
  for (int c = 1; c < prototypes.class_count(); ++c) {
    const double score = dot(prototypes.normalized[static_cast<std::size_t>(c)], query);
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return {best, false};
}

RealHV TrainedModel::embed(const GraphInstance& graph) const {
  if (graph.attr_count != attr_count) {
    throw CompatError("embed: graph has " + std::to_string(graph.attr_count) +
                      " attributes, model expects " + std::to_string(attr_count));
  }
  const auto node_hvs = encode_graph_nodes(graph, banks);
  const auto p = build_hyper_weight(node_hvs, graph, weight_variant_of(config.variant),
                                    config.hw_mode);
  const auto aggregated = aggregate(node_hvs, p);
  return graph_representation(concat_features(node_hvs, aggregated));
}

TrainedModel train(const GraphDataset& train_set, const PipelineConfig& config,
                   std::ostream* diag) {
  if (config.variant == Variant::graphhd || config.variant == Variant::record) {
    throw CompatError("train: variant '" + to_string(config.variant) +
                      "' is a baseline; use the baselines module");
  }
  if (train_set.size() == 0) throw InputError("train: empty training set");
  if (train_set.class_count < 2) throw InputError("train: need at least 2 classes");
  {
    std::vector<long long> counts(static_cast<std::size_t>(train_set.class_count), 0);
    for (const auto& g : train_set.graphs) ++counts[static_cast<std::size_t>(g.label)];
    for (int c = 0; c < train_set.class_count; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) {
        throw InputError("train: class " + std::to_string(c) + " has no training graphs");
      }
    }
  }

  const auto start = Clock::now();
  TrainedModel model;
  model.config = config;
  model.attr_count = train_set.attr_count;
  model.class_count = train_set.class_count;
  model.centers =
      fit_all(train_set, config.levels, config.variant == Variant::uniform_quant);

  Rng rng(config.seed);
  model.banks = init_all_banks(model.centers, config.dim, rng, diag);

  // Single pass: every training graph is embedded exactly once.
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

Prediction predict(const TrainedModel& model, const GraphInstance& graph) {
  return predict_prototype(model.prototypes, model.embed(graph));
}

EvalReport evaluate(const TrainedModel& model, const GraphDataset& test_set) {
  return evaluate_with([&model](const GraphInstance& g) { return model.embed(g); },
                       model.prototypes, test_set, model.train_time_s);
}

EvalReport evaluate_with(const std::function<RealHV(const GraphInstance&)>& embed,
                         const PrototypeSet& prototypes, const GraphDataset& test_set,
                         double train_time_s) {
  if (test_set.size() == 0) throw InputError("evaluate: empty test set");
  const int k = prototypes.class_count();
  EvalReport report;
  report.train_time_s = train_time_s;
  report.confusion.assign(static_cast<std::size_t>(k),
                          std::vector<long long>(static_cast<std::size_t>(k), 0));

  const auto start = Clock::now();
  long long correct = 0;
  for (const auto& graph : test_set.graphs) {
    const Prediction pred = predict_prototype(prototypes, embed(graph));
    if (graph.label < 0 || graph.label >= k) {
      throw CompatError("evaluate: test label " + std::to_string(graph.label) +
                        " out of model range");
    }
    ++report.confusion[static_cast<std::size_t>(graph.label)]
                      [static_cast<std::size_t>(pred.label)];
    if (pred.label == graph.label) ++correct;
  }
  report.infer_time_s = seconds_since(start);
  report.accuracy = static_cast<double>(correct) / static_cast<double>(test_set.size());
  report.per_class_accuracy.resize(static_cast<std::size_t>(k), 0.0);
  for (int c = 0; c < k; ++c) {
    long long row_total = 0;
    for (int p = 0; p < k; ++p) row_total += report.confusion[static_cast<std::size_t>(c)]
                                                             [static_cast<std::size_t>(p)];
    report.per_class_accuracy[static_cast<std::size_t>(c)] =
        row_total == 0 ? 0.0
                       : static_cast<double>(report.confusion[static_cast<std::size_t>(c)]
                                                             [static_cast<std::size_t>(c)]) /
                             static_cast<double>(row_total);
  }
  report.peak_memory_estimate = peak_memory_bytes();
  return report;
}

}  // namespace ciliagraph
