#pragma once

#include <vector>

#include "ciliagraph/dataset.hpp"

namespace ciliagraph {

// Ordered quantization centers for one attribute column. `degenerate` marks a
// (near-)constant attribute, where the center span collapses and the encoder
// must fall back to a constant level bank.
struct AttributeCenters {
  std::vector<double> centers;  // size m, sorted ascending
  int attr_index = 0;
  bool degenerate = false;

  [[nodiscard]] int levels() const noexcept { return static_cast<int>(centers.size()); }
  [[nodiscard]] double span() const {
    return centers.empty() ? 0.0 : centers.back() - centers.front();
  }
};

// 1-D Lloyd k-means with deterministic quantile initialization (seeds at the
// (k+0.5)/m quantiles of the sorted values), run to assignment fixpoint or 100
// iterations. m must be > 2. When fewer than m distinct values exist, the
// distinct values become centers and surplus slots duplicate the largest one.
AttributeCenters fit_kmeans_1d(const std::vector<double>& values, int m);

// Uniform centers on [min(values), max(values)]: mu_k at the midpoints of m
// equal-width bins. Used by the record-based baseline and the uniform-quant
// comparison flag.
AttributeCenters fit_uniform_1d(const std::vector<double>& values, int m);

// Nearest-center level in {1..m}; ties break toward the smaller index; values
// outside the training range clamp to the nearest center.
int quantize(double value, const AttributeCenters& centers);

// Fits attribute i's centers on the pooled values of column i across all
// graphs of `dataset` (callers pass the training split only).
std::vector<AttributeCenters> fit_all(const GraphDataset& dataset, int m,
                                      bool uniform = false);

}  // namespace ciliagraph
