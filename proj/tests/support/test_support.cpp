#include "test_support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "ciliagraph/errors.hpp"
#include "ciliagraph/quantize.hpp"

namespace ciliagraph::testing {

namespace fs = std::filesystem;

GraphInstance make_graph(int node_count, std::vector<std::pair<int, int>> edges,
                         std::vector<double> attrs, int attr_count, int label) {
  GraphInstance g;
  g.node_count = node_count;
  g.attr_count = attr_count;
  g.attrs = std::move(attrs);
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.label = label;
  return g;
}

GraphInstance triangle_graph(double attr_value) {
  return make_graph(3, {{0, 1}, {1, 2}, {0, 2}},
                    {attr_value, attr_value, attr_value}, 1);
}

GraphInstance path_graph(int nodes) {
  std::vector<std::pair<int, int>> edges;
  std::vector<double> attrs;
  for (int i = 0; i + 1 < nodes; ++i) edges.push_back({i, i + 1});
  for (int i = 0; i < nodes; ++i) attrs.push_back(static_cast<double>(i));
  return make_graph(nodes, std::move(edges), std::move(attrs), 1);
}

GraphInstance star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  std::vector<double> attrs(static_cast<std::size_t>(leaves + 1), 1.0);
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return make_graph(leaves + 1, std::move(edges), std::move(attrs), 1);
}

GraphInstance single_node_graph(double attr_value) {
  return make_graph(1, {}, {attr_value}, 1);
}

GraphInstance random_graph(int node_count, int attr_count, double edge_prob, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < node_count; ++u) {
    for (int v = u + 1; v < node_count; ++v) {
      if (rng.next_unit() < edge_prob) edges.push_back({u, v});
    }
  }
  std::vector<double> attrs(static_cast<std::size_t>(node_count) *
                            static_cast<std::size_t>(attr_count));
  for (auto& a : attrs) a = rng.next_unit();
  return make_graph(node_count, std::move(edges), std::move(attrs), attr_count);
}

GraphDataset make_blob_dataset(int class_count, int graphs_per_class, int attr_count,
                               double separation, std::uint64_t seed) {
  Rng rng(seed);
  GraphDataset ds;
  ds.name = "blobs";
  ds.attr_count = attr_count;
  ds.class_count = class_count;
  for (int c = 0; c < class_count; ++c) {
    for (int g = 0; g < graphs_per_class; ++g) {
      const int nodes = 4 + static_cast<int>(rng.next_below(5));
      GraphInstance graph = random_graph(nodes, attr_count, 0.5, rng);
      for (int u = 0; u < nodes; ++u) {
        for (int a = 0; a < attr_count; ++a) {
          const double mean = separation * static_cast<double>(c) *
                              (a % 2 == 0 ? 1.0 : -1.0);
          graph.attrs[static_cast<std::size_t>(u) * static_cast<std::size_t>(attr_count) +
                      static_cast<std::size_t>(a)] = mean + 0.25 * rng.next_gaussian();
        }
      }
      graph.label = c;
      ds.graphs.push_back(std::move(graph));
    }
  }
  return ds;
}

GraphDataset make_bimodal_dataset(int graphs_per_class, std::uint64_t seed) {
  Rng rng(seed);
  GraphDataset ds;
  ds.name = "bimodal";
  ds.attr_count = 1;
  ds.class_count = 2;
  for (int c = 0; c < 2; ++c) {
    for (int g = 0; g < graphs_per_class; ++g) {
      const int nodes = 6 + static_cast<int>(rng.next_below(3));
      GraphInstance graph = random_graph(nodes, 1, 0.4, rng);
      for (int u = 0; u < nodes; ++u) {
        double value;
        if (u < nodes / 3) {
          // background mode shared by both classes, far from the signal
          value = 1000.0 + 0.5 * rng.next_gaussian();
        } else {
          const double mode = c == 0 ? 0.0 : 0.012;
          value = mode + 0.002 * rng.next_gaussian();
        }
        graph.attrs[static_cast<std::size_t>(u)] = value;
      }
      graph.label = c;
      ds.graphs.push_back(std::move(graph));
    }
  }
  return ds;
}

GraphDataset make_random_dataset(int graph_count, int max_nodes, int attr_count,
                                 int class_count, std::uint64_t seed) {
  Rng rng(seed);
  GraphDataset ds;
  ds.name = "random";
  ds.attr_count = attr_count;
  ds.class_count = class_count;
  for (int i = 0; i < graph_count; ++i) {
    const int nodes = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_nodes)));
    GraphInstance graph = random_graph(nodes, attr_count, 0.5, rng);
    graph.label = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(class_count)));
    ds.graphs.push_back(std::move(graph));
  }
  return ds;
}

void write_tudataset(const GraphDataset& dataset, const fs::path& dir,
                     const std::string& name) {
  fs::create_directories(dir);
  std::ofstream a(dir / (name + "_A.txt"));
  std::ofstream indicator(dir / (name + "_graph_indicator.txt"));
  std::ofstream labels(dir / (name + "_graph_labels.txt"));
  std::ofstream attrs(dir / (name + "_node_attributes.txt"));

  int next_node_id = 1;  // file ids are 1-indexed and global
  for (std::size_t g = 0; g < dataset.graphs.size(); ++g) {
    const auto& graph = dataset.graphs[g];
    const int base = next_node_id;
    for (int u = 0; u < graph.node_count; ++u) {
      indicator << (g + 1) << "\n";
      std::ostringstream row;
      for (int c = 0; c < graph.attr_count; ++c) {
        if (c > 0) row << ", ";
        row.precision(17);
        row << graph.attr(u, c);
      }
      attrs << row.str() << "\n";
      ++next_node_id;
    }
    for (const auto& [u, v] : graph.edges) {
      a << (base + u) << ", " << (base + v) << "\n";
      a << (base + v) << ", " << (base + u) << "\n";
    }
    labels << graph.label << "\n";
  }
}

std::vector<double> naive_lloyd_1d(std::vector<double> values, int m) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::vector<double> centers(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    auto idx = static_cast<std::size_t>((k + 0.5) / m * static_cast<double>(n));
    if (idx >= n) idx = n - 1;
    centers[static_cast<std::size_t>(k)] = values[idx];
  }
  std::vector<int> assign(n);
  auto assign_all = [&] {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int a = naive_nearest_center(values[i], centers);
      if (a != assign[i]) {
        assign[i] = a;
        changed = true;
      }
    }
    return changed;
  };
  for (std::size_t i = 0; i < n; ++i) assign[i] = naive_nearest_center(values[i], centers);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> sum(static_cast<std::size_t>(m), 0.0);
    std::vector<int> count(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[static_cast<std::size_t>(assign[i])] += values[i];
      ++count[static_cast<std::size_t>(assign[i])];
    }
    for (int k = 0; k < m; ++k) {
      if (count[static_cast<std::size_t>(k)] > 0) {
        centers[static_cast<std::size_t>(k)] =
            sum[static_cast<std::size_t>(k)] / count[static_cast<std::size_t>(k)];
      }
    }
    if (!assign_all()) break;
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

int naive_nearest_center(double value, const std::vector<double>& centers) {
  int best = 0;
  double best_d = std::abs(value - centers[0]);
  for (std::size_t i = 1; i < centers.size(); ++i) {
    const double d = std::abs(value - centers[i]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<double> naive_pagerank(const GraphInstance& graph, double damping, int iters) {
  const auto n = static_cast<std::size_t>(graph.node_count);
  std::vector<std::vector<double>> transition(n, std::vector<double>(n, 0.0));
  const auto deg = graph.degrees();
  for (std::size_t u = 0; u < n; ++u) {
    if (deg[u] == 0) {
      for (std::size_t v = 0; v < n; ++v) transition[v][u] = 1.0 / static_cast<double>(n);
    }
  }
  for (const auto& [u, v] : graph.edges) {
    transition[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] =
        1.0 / deg[static_cast<std::size_t>(u)];
    transition[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
        1.0 / deg[static_cast<std::size_t>(v)];
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < iters; ++it) {
    std::vector<double> next(n, (1.0 - damping) / static_cast<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) next[r] += damping * transition[r][c] * x[c];
    }
    x.swap(next);
  }
  return x;
}

RealHV naive_pipeline_embed(const GraphInstance& graph,
                            const std::vector<LevelBank>& banks) {
  const auto n = static_cast<std::size_t>(graph.node_count);
  const int dim = banks.front().dim();

  // Node hypervectors: nearest-center level per attribute, summed bank rows.
  std::vector<std::vector<int>> node_hv(n, std::vector<int>(static_cast<std::size_t>(dim), 0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t a = 0; a < banks.size(); ++a) {
      const int level =
          naive_nearest_center(graph.attr(static_cast<int>(u), static_cast<int>(a)),
                               banks[a].centers.centers);
      const auto& hv = banks[a].levels[static_cast<std::size_t>(level)];
      for (int k = 0; k < dim; ++k) {
        node_hv[u][static_cast<std::size_t>(k)] += hv.e[static_cast<std::size_t>(k)];
      }
    }
  }

  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  const auto deg = graph.degrees();
  for (std::size_t u = 0; u < n; ++u) {
    w[u][u] = 1.0;
    t[u][u] = deg[u] == 0 ? 1.0 : 1.0 / static_cast<double>(deg[u]);
  }
  for (const auto& [u, v] : graph.edges) {
    int differing = 0;
    for (int k = 0; k < dim; ++k) {
      if (node_hv[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)] !=
          node_hv[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)]) {
        ++differing;
      }
    }
    const double sim = 1.0 - static_cast<double>(differing) / static_cast<double>(dim);
    w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = sim;
    w[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = sim;
    t[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
        -1.0 / deg[static_cast<std::size_t>(v)];
    t[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] =
        -1.0 / deg[static_cast<std::size_t>(u)];
  }
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) p[r][c] = w[r][c] * t[r][c];
  }

  // a_u = sign(sum_v P[u][v] H_v); concat [H_u || a_u]; columnwise mean.
  RealHV mean(2 * dim);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<double> acc(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      if (p[u][v] == 0.0) continue;
      for (int k = 0; k < dim; ++k) {
        acc[static_cast<std::size_t>(k)] +=
            p[u][v] * static_cast<double>(node_hv[v][static_cast<std::size_t>(k)]);
      }
    }
    for (int k = 0; k < dim; ++k) {
      mean.e[static_cast<std::size_t>(k)] +=
          static_cast<double>(node_hv[u][static_cast<std::size_t>(k)]);
      mean.e[static_cast<std::size_t>(dim + k)] +=
          acc[static_cast<std::size_t>(k)] < 0.0 ? -1.0 : 1.0;
    }
  }
  for (auto& x : mean.e) x /= static_cast<double>(n);
  return mean;
}

std::vector<std::string> schema_violations(const nlohmann::json& doc,
                                           const nlohmann::json& schema,
                                           const std::string& where) {
  std::vector<std::string> errors;
  const auto fail = [&](const std::string& msg) { errors.push_back(where + ": " + msg); };

  if (schema.contains("type")) {
    const std::string type = schema.at("type").get<std::string>();
    const bool ok = (type == "object" && doc.is_object()) ||
                    (type == "array" && doc.is_array()) ||
                    (type == "string" && doc.is_string()) ||
                    (type == "boolean" && doc.is_boolean()) ||
                    (type == "integer" && doc.is_number_integer()) ||
                    (type == "number" && doc.is_number());
    if (!ok) {
      fail("expected type " + type);
      return errors;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema.at("enum")) {
      if (candidate == doc) {
        found = true;
        break;
      }
    }
    if (!found) fail("value not in enum");
  }
  if (doc.is_number()) {
    if (schema.contains("minimum") && doc.get<double>() < schema.at("minimum").get<double>()) {
      fail("below minimum");
    }
    if (schema.contains("maximum") && doc.get<double>() > schema.at("maximum").get<double>()) {
      fail("above maximum");
    }
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema.at("required")) {
        if (!doc.contains(key.get<std::string>())) {
          fail("missing required field '" + key.get<std::string>() + "'");
        }
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema.at("properties").items()) {
        if (doc.contains(key)) {
          const auto child = schema_violations(doc.at(key), sub, where + "." + key);
          errors.insert(errors.end(), child.begin(), child.end());
        }
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto child = schema_violations(doc.at(i), schema.at("items"),
                                           where + "[" + std::to_string(i) + "]");
      errors.insert(errors.end(), child.begin(), child.end());
    }
  }
  return errors;
}

nlohmann::json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open JSON file: " + path.string());
  nlohmann::json doc;
  in >> doc;
  return doc;
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("ciliagraph_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace ciliagraph::testing
