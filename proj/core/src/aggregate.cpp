#include "ciliagraph/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ciliagraph/errors.hpp"

namespace ciliagraph {

namespace {

void sort_rows(SparseRows& s) {
  for (auto& row : s.rows) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
}

void require_same_support(const SparseRows& a, const SparseRows& b, const char* op) {
  if (a.node_count != b.node_count || a.rows.size() != b.rows.size()) {
    throw CompatError(std::string(op) + ": node count mismatch");
  }
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) {
      throw CompatError(std::string(op) + ": support mismatch in row " + std::to_string(r));
    }
    for (std::size_t k = 0; k < a.rows[r].size(); ++k) {
      if (a.rows[r][k].first != b.rows[r][k].first) {
        throw CompatError(std::string(op) + ": support mismatch in row " + std::to_string(r));
      }
    }
  }
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

double SparseRows::at(int r, int c) const {
  for (const auto& [col, value] : rows[static_cast<std::size_t>(r)]) {
    if (col == c) return value;
  }
  return 0.0;
}

SimilarityMatrix similarity_matrix(const std::vector<IntegerHV>& node_hvs,
                                   const GraphInstance& graph) {
  if (static_cast<int>(node_hvs.size()) != graph.node_count) {
    throw CompatError("similarity_matrix: " + std::to_string(node_hvs.size()) +
                      " hypervector rows for " + std::to_string(graph.node_count) + " nodes");
  }
  SimilarityMatrix w;
  w.m.node_count = graph.node_count;
  w.m.rows.resize(static_cast<std::size_t>(graph.node_count));
  for (int u = 0; u < graph.node_count; ++u) {
    w.m.rows[static_cast<std::size_t>(u)].push_back({u, 1.0});
  }
  const double dim = node_hvs.empty() ? 1.0 : static_cast<double>(node_hvs.front().dim());
  for (const auto& [u, v] : graph.edges) {
    const int ham = hamming(node_hvs[static_cast<std::size_t>(u)],
                            node_hvs[static_cast<std::size_t>(v)]);
    const double weight = 1.0 - static_cast<double>(ham) / dim;
    w.m.rows[static_cast<std::size_t>(u)].push_back({v, weight});
    w.m.rows[static_cast<std::size_t>(v)].push_back({u, weight});
  }
  sort_rows(w.m);
  return w;
}

TransitionMatrix transition_matrix(const GraphInstance& graph) {
  TransitionMatrix t;
  t.m.node_count = graph.node_count;
  t.m.rows.resize(static_cast<std::size_t>(graph.node_count));
  const auto deg = graph.degrees();
  for (int u = 0; u < graph.node_count; ++u) {
    const int d = deg[static_cast<std::size_t>(u)];
    const double self = d == 0 ? 1.0 : 1.0 / static_cast<double>(d);
    t.m.rows[static_cast<std::size_t>(u)].push_back({u, self});
  }
  for (const auto& [u, v] : graph.edges) {
    t.m.rows[static_cast<std::size_t>(u)].push_back(
        {v, -1.0 / static_cast<double>(deg[static_cast<std::size_t>(v)])});
    t.m.rows[static_cast<std::size_t>(v)].push_back(
        {u, -1.0 / static_cast<double>(deg[static_cast<std::size_t>(u)])});
  }
  sort_rows(t.m);
  return t;
}

HyperWeightMatrix hyper_weight(const SimilarityMatrix& w, const TransitionMatrix& t) {
  require_same_support(w.m, t.m, "hyper_weight");
  HyperWeightMatrix p;
  p.m.node_count = w.m.node_count;
  p.m.rows.resize(w.m.rows.size());
  for (std::size_t r = 0; r < w.m.rows.size(); ++r) {
    p.m.rows[r].reserve(w.m.rows[r].size());
    for (std::size_t k = 0; k < w.m.rows[r].size(); ++k) {
      p.m.rows[r].push_back(
          {w.m.rows[r][k].first, w.m.rows[r][k].second * t.m.rows[r][k].second});
    }
  }
  return p;
}

HyperWeightMatrix hyper_weight_matmul(const SimilarityMatrix& w, const TransitionMatrix& t) {
  if (w.m.node_count != t.m.node_count) {
    throw CompatError("hyper_weight_matmul: node count mismatch");
  }
  const int n = w.m.node_count;
  HyperWeightMatrix p;
  p.m.node_count = n;
  p.m.rows.resize(static_cast<std::size_t>(n));
  std::vector<double> dense(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < n; ++r) {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (const auto& [k, w_rk] : w.m.rows[static_cast<std::size_t>(r)]) {
      for (const auto& [c, t_kc] : t.m.rows[static_cast<std::size_t>(k)]) {
        dense[static_cast<std::size_t>(c)] += w_rk * t_kc;
      }
    }
    for (int c = 0; c < n; ++c) {
      if (dense[static_cast<std::size_t>(c)] != 0.0) {
        p.m.rows[static_cast<std::size_t>(r)].push_back({c, dense[static_cast<std::size_t>(c)]});
      }
    }
  }
  return p;
}

SimilarityMatrix ones_like(const SimilarityMatrix& w) {
  SimilarityMatrix out = w;
  for (auto& row : out.m.rows) {
    for (auto& [col, value] : row) value = 1.0;
  }
  return out;
}

TransitionMatrix signs_of(const TransitionMatrix& t) {
  TransitionMatrix out = t;
  for (auto& row : out.m.rows) {
    for (auto& [col, value] : row) value = sign_of(value);
  }
  return out;
}

HyperWeightMatrix build_hyper_weight(const std::vector<IntegerHV>& node_hvs,
                                     const GraphInstance& graph, WeightVariant variant,
                                     HyperWeightMode mode) {
  const TransitionMatrix t = transition_matrix(graph);
  SimilarityMatrix w = (variant == WeightVariant::p1 || variant == WeightVariant::p2)
                           ? ones_like(similarity_matrix(node_hvs, graph))
                           : similarity_matrix(node_hvs, graph);
  const TransitionMatrix t_used =
      (variant == WeightVariant::p1 || variant == WeightVariant::p3) ? signs_of(t) : t;
  return mode == HyperWeightMode::entrywise ? hyper_weight(w, t_used)
                                            : hyper_weight_matmul(w, t_used);
}

std::vector<BipolarHV> aggregate(const std::vector<IntegerHV>& node_hvs,
                                 const HyperWeightMatrix& p) {
  if (static_cast<int>(node_hvs.size()) != p.m.node_count) {
    throw CompatError("aggregate: row count mismatch");
  }
  const int dim = node_hvs.empty() ? 0 : node_hvs.front().dim();
  std::vector<BipolarHV> out;
  out.reserve(node_hvs.size());
  RealHV acc(dim);
  for (int u = 0; u < p.m.node_count; ++u) {
    std::fill(acc.e.begin(), acc.e.end(), 0.0);
    for (const auto& [v, weight] : p.m.rows[static_cast<std::size_t>(u)]) {
      const auto& hv = node_hvs[static_cast<std::size_t>(v)];
      for (int k = 0; k < dim; ++k) {
        acc.e[static_cast<std::size_t>(k)] +=
            weight * static_cast<double>(hv.e[static_cast<std::size_t>(k)]);
      }
    }
    out.push_back(sign(acc));
  }
  return out;
}

std::vector<RealHV> concat_features(const std::vector<IntegerHV>& node_hvs,
                                    const std::vector<BipolarHV>& aggregated) {
  if (node_hvs.size() != aggregated.size()) {
    throw CompatError("concat_features: row count mismatch");
  }
  std::vector<RealHV> rows;
  rows.reserve(node_hvs.size());
  for (std::size_t u = 0; u < node_hvs.size(); ++u) {
    const int dim = node_hvs[u].dim();
    if (aggregated[u].dim() != dim) {
      throw CompatError("concat_features: dimension mismatch in row " + std::to_string(u));
    }
    RealHV row(2 * dim);
    for (int k = 0; k < dim; ++k) {
      row.e[static_cast<std::size_t>(k)] =
          static_cast<double>(node_hvs[u].e[static_cast<std::size_t>(k)]);
      row.e[static_cast<std::size_t>(dim + k)] =
          static_cast<double>(aggregated[u].e[static_cast<std::size_t>(k)]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RealHV graph_representation(const std::vector<RealHV>& concat_rows) {
  if (concat_rows.empty()) throw InputError("graph_representation: empty graph");
  RealHV mean(concat_rows.front().dim());
  for (const auto& row : concat_rows) {
    if (row.dim() != mean.dim()) throw CompatError("graph_representation: ragged rows");
    for (std::size_t k = 0; k < mean.e.size(); ++k) mean.e[k] += row.e[k];
  }
  const double count = static_cast<double>(concat_rows.size());
  for (auto& x : mean.e) x /= count;
  return mean;
}

}  // namespace ciliagraph
