#include "ciliagraph/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "ciliagraph/errors.hpp"
#include "ciliagraph/rng.hpp"

namespace ciliagraph {

namespace fs = std::filesystem;

std::vector<int> GraphInstance::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(node_count), 0);
  for (const auto& [u, v] : edges) {
    ++d[static_cast<std::size_t>(u)];
    ++d[static_cast<std::size_t>(v)];
  }
  return d;
}

std::vector<std::vector<int>> GraphInstance::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

namespace {

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("missing or unreadable file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // Trailing blank lines are common in the published files.
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) {
    lines.pop_back();
  }
  return lines;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t") == std::string::npos;
}

// Comma-separated decimal tokens, whitespace around commas tolerated.
std::vector<double> parse_numeric_line(const std::string& line, const fs::path& file,
                                       std::size_t line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    std::string token = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
    const auto begin = token.find_first_not_of(" \t");
    if (begin == std::string::npos) {
      throw InputError("format error in " + file.filename().string() + " line " +
                       std::to_string(line_no) + ": empty numeric token");
    }
    const auto end = token.find_last_not_of(" \t");
    token = token.substr(begin, end - begin + 1);
    try {
      std::size_t consumed = 0;
      const double value = std::stod(token, &consumed);
      if (consumed != token.size()) throw std::invalid_argument(token);
      out.push_back(value);
    } catch (const std::exception&) {
      throw InputError("format error in " + file.filename().string() + " line " +
                       std::to_string(line_no) + ": non-numeric token '" + token + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

long long parse_integer_token(const std::string& line, const fs::path& file,
                              std::size_t line_no) {
  const auto values = parse_numeric_line(line, file, line_no);
  if (values.size() != 1 || values[0] != std::floor(values[0])) {
    throw InputError("format error in " + file.filename().string() + " line " +
                     std::to_string(line_no) + ": expected one integer");
  }
  return static_cast<long long>(values[0]);
}

GraphDataset subset(const GraphDataset& dataset, const std::vector<int>& indices) {
  GraphDataset out;
  out.name = dataset.name;
  out.attr_count = dataset.attr_count;
  out.class_count = dataset.class_count;
  out.graphs.reserve(indices.size());
  for (const int i : indices) out.graphs.push_back(dataset.graphs[static_cast<std::size_t>(i)]);
  return out;
}

// Per-class index lists in label order, each deterministically shuffled.
std::vector<std::vector<int>> shuffled_class_groups(const GraphDataset& dataset,
                                                    std::uint64_t seed) {
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(dataset.class_count));
  for (int i = 0; i < dataset.size(); ++i) {
    groups[static_cast<std::size_t>(dataset.graphs[static_cast<std::size_t>(i)].label)]
        .push_back(i);
  }
  Rng rng(seed);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    Rng class_rng = rng.split(0x5B1u, c);
    class_rng.shuffle(groups[c]);
  }
  return groups;
}

}  // namespace

GraphDataset parse_tudataset(const std::string& dir, const std::string& name,
                             std::ostream* diag) {
  const fs::path base = fs::path(dir);
  const fs::path a_path = base / (name + "_A.txt");
  const fs::path indicator_path = base / (name + "_graph_indicator.txt");
  const fs::path labels_path = base / (name + "_graph_labels.txt");
  const fs::path attrs_path = base / (name + "_node_attributes.txt");
  const fs::path node_labels_path = base / (name + "_node_labels.txt");
  const fs::path edge_attrs_path = base / (name + "_edge_attributes.txt");
  const fs::path edge_labels_path = base / (name + "_edge_labels.txt");

  if (!fs::exists(base)) throw InputError("dataset directory not found: " + base.string());

  // graph_indicator: line i = graph id of node i (both 1-indexed in the file).
  const auto indicator_lines = read_lines(indicator_path);
  const std::size_t total_nodes = indicator_lines.size();
  std::vector<long long> node_graph_raw(total_nodes);
  for (std::size_t i = 0; i < total_nodes; ++i) {
    node_graph_raw[i] = parse_integer_token(indicator_lines[i], indicator_path, i + 1);
  }
  std::map<long long, int> graph_id_map;  // raw id -> 0-based, in sorted id order
  for (const long long g : node_graph_raw) graph_id_map.emplace(g, 0);
  {
    int next = 0;
    for (auto& [raw, idx] : graph_id_map) idx = next++;
  }
  const int graph_count = static_cast<int>(graph_id_map.size());

  // Per-graph node index (0-based by file order within the graph).
  std::vector<int> node_graph(total_nodes);
  std::vector<int> node_local(total_nodes);
  std::vector<int> graph_node_counts(static_cast<std::size_t>(graph_count), 0);
  for (std::size_t i = 0; i < total_nodes; ++i) {
    const int g = graph_id_map.at(node_graph_raw[i]);
    node_graph[i] = g;
    node_local[i] = graph_node_counts[static_cast<std::size_t>(g)]++;
  }

  // graph_labels: one per graph, remapped to contiguous {0..K-1}.
  const auto label_lines = read_lines(labels_path);
  if (static_cast<int>(label_lines.size()) != graph_count) {
    throw InputError("format error: " + labels_path.filename().string() + " has " +
                     std::to_string(label_lines.size()) + " labels for " +
                     std::to_string(graph_count) + " graphs");
  }
  std::vector<long long> labels_raw(label_lines.size());
  for (std::size_t i = 0; i < label_lines.size(); ++i) {
    labels_raw[i] = parse_integer_token(label_lines[i], labels_path, i + 1);
  }
  std::map<long long, int> label_map;
  for (const long long l : labels_raw) label_map.emplace(l, 0);
  {
    int next = 0;
    for (auto& [raw, idx] : label_map) idx = next++;
  }

  GraphDataset dataset;
  dataset.name = name;
  dataset.class_count = static_cast<int>(label_map.size());
  dataset.graphs.resize(static_cast<std::size_t>(graph_count));
  for (int g = 0; g < graph_count; ++g) {
    auto& graph = dataset.graphs[static_cast<std::size_t>(g)];
    graph.node_count = graph_node_counts[static_cast<std::size_t>(g)];
    graph.label = label_map.at(labels_raw[static_cast<std::size_t>(g)]);
  }

  // Node attributes: continuous attribute file when present, otherwise
  // categorical node labels one-hot expanded.
  if (fs::exists(attrs_path)) {
    const auto attr_lines = read_lines(attrs_path);
    if (attr_lines.size() != total_nodes) {
      throw InputError("format error: " + attrs_path.filename().string() + " has " +
                       std::to_string(attr_lines.size()) + " rows for " +
                       std::to_string(total_nodes) + " nodes");
    }
    int attr_count = -1;
    std::vector<std::vector<double>> rows(total_nodes);
    for (std::size_t i = 0; i < total_nodes; ++i) {
      if (is_blank(attr_lines[i])) {
        throw InputError("format error in " + attrs_path.filename().string() + " line " +
                         std::to_string(i + 1) + ": blank attribute row");
      }
      rows[i] = parse_numeric_line(attr_lines[i], attrs_path, i + 1);
      if (attr_count < 0) {
        attr_count = static_cast<int>(rows[i].size());
      } else if (static_cast<int>(rows[i].size()) != attr_count) {
        throw InputError("format error in " + attrs_path.filename().string() + " line " +
                         std::to_string(i + 1) + ": expected " + std::to_string(attr_count) +
                         " attributes, got " + std::to_string(rows[i].size()));
      }
    }
    dataset.attr_count = attr_count;
    for (auto& graph : dataset.graphs) {
      graph.attr_count = attr_count;
      graph.attrs.assign(static_cast<std::size_t>(graph.node_count) *
                             static_cast<std::size_t>(attr_count),
                         0.0);
    }
    for (std::size_t i = 0; i < total_nodes; ++i) {
      auto& graph = dataset.graphs[static_cast<std::size_t>(node_graph[i])];
      for (int c = 0; c < attr_count; ++c) {
        graph.attrs[static_cast<std::size_t>(node_local[i]) *
                        static_cast<std::size_t>(attr_count) +
                    static_cast<std::size_t>(c)] = rows[i][static_cast<std::size_t>(c)];
      }
    }
  } else if (fs::exists(node_labels_path)) {
    const auto nl_lines = read_lines(node_labels_path);
    if (nl_lines.size() != total_nodes) {
      throw InputError("format error: " + node_labels_path.filename().string() + " has " +
                       std::to_string(nl_lines.size()) + " rows for " +
                       std::to_string(total_nodes) + " nodes");
    }
    std::vector<long long> node_labels(total_nodes);
    std::map<long long, int> nl_map;
    for (std::size_t i = 0; i < total_nodes; ++i) {
      node_labels[i] = parse_integer_token(nl_lines[i], node_labels_path, i + 1);
      nl_map.emplace(node_labels[i], 0);
    }
    {
      int next = 0;
      for (auto& [raw, idx] : nl_map) idx = next++;
    }
    const int attr_count = static_cast<int>(nl_map.size());
    dataset.attr_count = attr_count;
    for (auto& graph : dataset.graphs) {
      graph.attr_count = attr_count;
      graph.attrs.assign(static_cast<std::size_t>(graph.node_count) *
                             static_cast<std::size_t>(attr_count),
                         0.0);
    }
    for (std::size_t i = 0; i < total_nodes; ++i) {
      auto& graph = dataset.graphs[static_cast<std::size_t>(node_graph[i])];
      graph.attrs[static_cast<std::size_t>(node_local[i]) *
                      static_cast<std::size_t>(attr_count) +
                  static_cast<std::size_t>(nl_map.at(node_labels[i]))] = 1.0;
    }
  } else {
    throw InputError("missing file: " + attrs_path.string() + " (and no " +
                     node_labels_path.filename().string() + " fallback)");
  }

  // Edges: 1-indexed "u, v" lines; both directions collapse into one unordered
  // pair; self-loops are not stored.
  const auto edge_lines = read_lines(a_path);
  std::vector<std::set<std::pair<int, int>>> edge_sets(static_cast<std::size_t>(graph_count));
  for (std::size_t i = 0; i < edge_lines.size(); ++i) {
    if (is_blank(edge_lines[i])) continue;
    const auto tokens = parse_numeric_line(edge_lines[i], a_path, i + 1);
    if (tokens.size() != 2 || tokens[0] != std::floor(tokens[0]) ||
        tokens[1] != std::floor(tokens[1])) {
      throw InputError("format error in " + a_path.filename().string() + " line " +
                       std::to_string(i + 1) + ": expected two integer node ids");
    }
    const long long a = static_cast<long long>(tokens[0]);
    const long long b = static_cast<long long>(tokens[1]);
    if (a < 1 || b < 1 || a > static_cast<long long>(total_nodes) ||
        b > static_cast<long long>(total_nodes)) {
      throw InputError("format error in " + a_path.filename().string() + " line " +
                       std::to_string(i + 1) + ": node id out of range");
    }
    const std::size_t ia = static_cast<std::size_t>(a - 1);
    const std::size_t ib = static_cast<std::size_t>(b - 1);
    if (node_graph[ia] != node_graph[ib]) {
      throw InputError("format error in " + a_path.filename().string() + " line " +
                       std::to_string(i + 1) + ": edge crosses graphs " +
                       std::to_string(node_graph[ia] + 1) + " and " +
                       std::to_string(node_graph[ib] + 1));
    }
    if (ia == ib) continue;  // self-loops are added logically during aggregation
    const int u = std::min(node_local[ia], node_local[ib]);
    const int v = std::max(node_local[ia], node_local[ib]);
    edge_sets[static_cast<std::size_t>(node_graph[ia])].insert({u, v});
  }
  for (int g = 0; g < graph_count; ++g) {
    auto& graph = dataset.graphs[static_cast<std::size_t>(g)];
    graph.edges.assign(edge_sets[static_cast<std::size_t>(g)].begin(),
                       edge_sets[static_cast<std::size_t>(g)].end());
  }

  if (diag != nullptr && (fs::exists(edge_attrs_path) || fs::exists(edge_labels_path))) {
    *diag << "warning: " << name << " ships edge attribute/label files; edge attributes are "
          << "not processed and were ignored\n";
  }

  return dataset;
}

std::pair<GraphDataset, GraphDataset> split_holdout(const GraphDataset& dataset,
                                                    const SplitSpec& spec) {
  if (spec.test_fraction <= 0.0 || spec.test_fraction >= 1.0) {
    throw InputError("holdout split requires 0 < test_fraction < 1");
  }
  if (dataset.size() == 0) throw InputError("cannot split an empty dataset");

  std::vector<int> test_idx;
  std::vector<int> train_idx;
  if (spec.stratified) {
    const auto groups = shuffled_class_groups(dataset, spec.seed);
    for (const auto& group : groups) {
      const auto n = static_cast<long long>(group.size());
      long long n_test = std::llround(spec.test_fraction * static_cast<double>(n));
      if (n > 0 && n_test >= n) n_test = n - 1;  // keep at least one training graph per class
      for (long long i = 0; i < n; ++i) {
        (i < n_test ? test_idx : train_idx).push_back(group[static_cast<std::size_t>(i)]);
      }
    }
  } else {
    std::vector<int> order(static_cast<std::size_t>(dataset.size()));
    for (int i = 0; i < dataset.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(spec.seed);
    Rng shuffle_rng = rng.split(0x5B1u, 0);
    shuffle_rng.shuffle(order);
    long long n_test = std::llround(spec.test_fraction * static_cast<double>(dataset.size()));
    n_test = std::clamp<long long>(n_test, 1, dataset.size() - 1);
    for (int i = 0; i < dataset.size(); ++i) {
      (i < n_test ? test_idx : train_idx).push_back(order[static_cast<std::size_t>(i)]);
    }
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {subset(dataset, train_idx), subset(dataset, test_idx)};
}

std::vector<std::pair<GraphDataset, GraphDataset>> split_kfold(const GraphDataset& dataset,
                                                               const SplitSpec& spec) {
  if (spec.fold_count < 2) throw InputError("kfold split requires fold_count >= 2");
  if (dataset.size() < spec.fold_count) {
    throw InputError("kfold split: dataset smaller than fold_count");
  }

  std::vector<std::vector<int>> fold_members(static_cast<std::size_t>(spec.fold_count));
  if (spec.stratified) {
    const auto groups = shuffled_class_groups(dataset, spec.seed);
    for (std::size_t c = 0; c < groups.size(); ++c) {
      if (static_cast<int>(groups[c].size()) < spec.fold_count) {
        throw InputError("stratified kfold: class " + std::to_string(c) + " has " +
                         std::to_string(groups[c].size()) + " graphs < " +
                         std::to_string(spec.fold_count) + " folds");
      }
      for (std::size_t i = 0; i < groups[c].size(); ++i) {
        fold_members[i % static_cast<std::size_t>(spec.fold_count)].push_back(groups[c][i]);
      }
    }
  } else {
    std::vector<int> order(static_cast<std::size_t>(dataset.size()));
    for (int i = 0; i < dataset.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(spec.seed);
    Rng shuffle_rng = rng.split(0x5B1u, 0);
    shuffle_rng.shuffle(order);
    for (std::size_t i = 0; i < order.size(); ++i) {
      fold_members[i % static_cast<std::size_t>(spec.fold_count)].push_back(order[i]);
    }
  }

  std::vector<std::pair<GraphDataset, GraphDataset>> folds;
  folds.reserve(static_cast<std::size_t>(spec.fold_count));
  for (int f = 0; f < spec.fold_count; ++f) {
    std::vector<int> test_idx = fold_members[static_cast<std::size_t>(f)];
    std::vector<int> train_idx;
    for (int g = 0; g < spec.fold_count; ++g) {
      if (g == f) continue;
      const auto& m = fold_members[static_cast<std::size_t>(g)];
      train_idx.insert(train_idx.end(), m.begin(), m.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    folds.emplace_back(subset(dataset, train_idx), subset(dataset, test_idx));
  }
  return folds;
}

DatasetStats stats(const GraphDataset& dataset) {
  DatasetStats s;
  s.graph_count = dataset.size();
  s.attr_count = dataset.attr_count;
  s.class_histogram.assign(static_cast<std::size_t>(std::max(0, dataset.class_count)), 0);
  if (dataset.size() == 0) return s;
  long long node_sum = 0;
  long long edge_sum = 0;
  for (const auto& g : dataset.graphs) {
    ++s.class_histogram[static_cast<std::size_t>(g.label)];
    node_sum += g.node_count;
    edge_sum += static_cast<long long>(g.edges.size());
    s.max_nodes = std::max(s.max_nodes, g.node_count);
    s.max_edges = std::max(s.max_edges, static_cast<int>(g.edges.size()));
  }
  s.mean_nodes = static_cast<double>(node_sum) / static_cast<double>(dataset.size());
  s.mean_edges = static_cast<double>(edge_sum) / static_cast<double>(dataset.size());
  return s;
}

}  // namespace ciliagraph
