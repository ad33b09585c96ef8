#pragma once

#include <utility>
#include <vector>

#include "ciliagraph/dataset.hpp"
#include "ciliagraph/hv.hpp"

namespace ciliagraph {

// Sparse |V|x|V| matrix stored as per-row (column, value) lists, sorted by
// column with the diagonal entry in place. Support is the edge set plus the
// diagonal for the entrywise constructions below.
struct SparseRows {
  int node_count = 0;
  std::vector<std::vector<std::pair<int, double>>> rows;

  [[nodiscard]] double at(int r, int c) const;
};

// Similarity weights: symmetric, W[u][v] = 1 - hamming(H_u, H_v)/D in [0,1] on
// edges, W[u][u] = 1.
struct SimilarityMatrix {
  SparseRows m;
};

// Degree-normalized signed transition weights: T[u][u] = 1/d_u, T[u][v] =
// -1/d_v on edges; an isolated node keeps T[u][u] = 1 (the self-loop is its
// only edge).
struct TransitionMatrix {
  SparseRows m;
};

// Entrywise combination P = W .* T used as aggregation coefficients.
struct HyperWeightMatrix {
  SparseRows m;
};

// Hamming similarity of endpoint node hypervectors (the integer, pre-sign
// ones) on every edge.
SimilarityMatrix similarity_matrix(const std::vector<IntegerHV>& node_hvs,
                                   const GraphInstance& graph);

TransitionMatrix transition_matrix(const GraphInstance& graph);

// Entrywise product on the shared support; throws CompatError when the
// supports differ.
HyperWeightMatrix hyper_weight(const SimilarityMatrix& w, const TransitionMatrix& t);

// True matrix-product reading of W x T, kept behind a flag for comparison; the
// support widens to two-hop neighborhoods.
HyperWeightMatrix hyper_weight_matmul(const SimilarityMatrix& w, const TransitionMatrix& t);

// Substituted inputs for the hyper-weight variants: "without" a matrix means
// replacing its values by 1 while preserving the numerical sign.
SimilarityMatrix ones_like(const SimilarityMatrix& w);
TransitionMatrix signs_of(const TransitionMatrix& t);

enum class WeightVariant { full, p1, p2, p3 };
enum class HyperWeightMode { entrywise, matmul };

// P for the requested variant: full = W.*T, p1 = signs only, p2 = T,
// p3 = W with T's signs.
HyperWeightMatrix build_hyper_weight(const std::vector<IntegerHV>& node_hvs,
                                     const GraphInstance& graph, WeightVariant variant,
                                     HyperWeightMode mode = HyperWeightMode::entrywise);

// Row u = sign( sum over the row support of P[u][v] * H_v ); every node gets a
// row (symmetric aggregation), and the self-loop is part of the support.
std::vector<BipolarHV> aggregate(const std::vector<IntegerHV>& node_hvs,
                                 const HyperWeightMatrix& p);

// Row u = [H_u || a_u]: first D columns the integer node features, last D the
// bipolar aggregates. Node features are retained losslessly.
std::vector<RealHV> concat_features(const std::vector<IntegerHV>& node_hvs,
                                    const std::vector<BipolarHV>& aggregated);

// Columnwise mean of the concatenated rows; invariant under node relabeling.
RealHV graph_representation(const std::vector<RealHV>& concat_rows);

}  // namespace ciliagraph
