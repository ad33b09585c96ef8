#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ciliagraph {

// One undirected graph: node attribute matrix, unique unordered edges (u < v,
// no self-loops), class label in {0..K-1}.
struct GraphInstance {
  int node_count = 0;
  int attr_count = 0;
  std::vector<double> attrs;  // row-major node_count x attr_count
  std::vector<std::pair<int, int>> edges;
  int label = 0;

  [[nodiscard]] double attr(int node, int column) const {
    return attrs[static_cast<std::size_t>(node) * static_cast<std::size_t>(attr_count) +
                 static_cast<std::size_t>(column)];
  }

  // Neighbor counts from the undirected edge set (self-loops are never stored).
  [[nodiscard]] std::vector<int> degrees() const;
  [[nodiscard]] std::vector<std::vector<int>> adjacency() const;
};

struct GraphDataset {
  std::string name;
  int attr_count = 0;
  int class_count = 0;
  std::vector<GraphInstance> graphs;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(graphs.size()); }
};

struct SplitSpec {
  enum class Mode { holdout, kfold };
  Mode mode = Mode::holdout;
  double test_fraction = 0.1;  // holdout
  int fold_count = 0;          // kfold, >= 2
  std::uint64_t seed = 0;
  bool stratified = true;
};

// Parses the public TUDataset plain-text layout from `dir`:
//   <name>_A.txt, <name>_graph_indicator.txt, <name>_graph_labels.txt,
//   <name>_node_attributes.txt (or <name>_node_labels.txt, one-hot expanded,
//   when no attribute file exists).
// File node ids are 1-indexed; both directions of an undirected edge collapse
// into one stored pair; labels are remapped to contiguous {0..K-1}. Edge
// attribute files are ignored with a warning on `diag` when provided.
GraphDataset parse_tudataset(const std::string& dir, const std::string& name,
                             std::ostream* diag = nullptr);

// Deterministic seeded partition; disjoint and exhaustive. Stratified mode
// preserves class proportions within +/-1 graph per class.
std::pair<GraphDataset, GraphDataset> split_holdout(const GraphDataset& dataset,
                                                    const SplitSpec& spec);

// K roughly equal folds; returns (train, test) per fold. Stratified mode
// errors when a class has fewer members than fold_count.
std::vector<std::pair<GraphDataset, GraphDataset>> split_kfold(const GraphDataset& dataset,
                                                               const SplitSpec& spec);

struct DatasetStats {
  int graph_count = 0;
  std::vector<long long> class_histogram;
  int attr_count = 0;
  double mean_nodes = 0.0;
  int max_nodes = 0;
  double mean_edges = 0.0;
  int max_edges = 0;
};

DatasetStats stats(const GraphDataset& dataset);

}  // namespace ciliagraph
