#include "ciliagraph/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "ciliagraph/errors.hpp"

namespace ciliagraph {

namespace {

constexpr int kMaxLloydIterations = 100;

bool degenerate_span(const std::vector<double>& centers) {
  const double span = centers.back() - centers.front();
  return span <= 1e-12 * std::max(1.0, std::abs(centers.front()));
}

void require_fit_preconditions(const std::vector<double>& values, int m) {
  if (values.empty()) throw InputError("quantizer fit: empty value set");
  if (m <= 2) {
    throw InputError("quantizer fit: m must exceed 2 (m(m>2) clusters), got " +
                     std::to_string(m));
  }
}

// Nearest center by index, ties toward the smaller index.
std::size_t nearest_center(double value, const std::vector<double>& centers) {
  std::size_t best = 0;
  double best_dist = std::abs(value - centers[0]);
  for (std::size_t i = 1; i < centers.size(); ++i) {
    const double d = std::abs(value - centers[i]);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

AttributeCenters fit_kmeans_1d(const std::vector<double>& values, int m) {
  require_fit_preconditions(values, m);

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  std::vector<double> distinct;
  distinct.reserve(sorted.size());
  for (const double v : sorted) {
    if (distinct.empty() || v != distinct.back()) distinct.push_back(v);
  }

  AttributeCenters out;
  if (static_cast<int>(distinct.size()) < m) {
    out.centers = distinct;
    out.centers.resize(static_cast<std::size_t>(m), distinct.back());
    out.degenerate = degenerate_span(out.centers);
    return out;
  }

  // Quantile seeding biases toward approximately equal mass per cluster.
  std::vector<double> centers(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    auto idx = static_cast<std::size_t>((static_cast<double>(k) + 0.5) /
                                        static_cast<double>(m) * static_cast<double>(n));
    idx = std::min(idx, n - 1);
    centers[static_cast<std::size_t>(k)] = sorted[idx];
  }

  std::vector<std::size_t> assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) assign[i] = nearest_center(sorted[i], centers);

  for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
    std::vector<double> sums(static_cast<std::size_t>(m), 0.0);
    std::vector<std::size_t> counts(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums[assign[i]] += sorted[i];
      ++counts[assign[i]];
    }
    for (std::size_t k = 0; k < centers.size(); ++k) {
      if (counts[k] > 0) centers[k] = sums[k] / static_cast<double>(counts[k]);
    }
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = nearest_center(sorted[i], centers);
      if (a != assign[i]) {
        assign[i] = a;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::sort(centers.begin(), centers.end());
  out.centers = std::move(centers);
  out.degenerate = degenerate_span(out.centers);
  return out;
}

AttributeCenters fit_uniform_1d(const std::vector<double>& values, int m) {
  require_fit_preconditions(values, m);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  AttributeCenters out;
  out.centers.resize(static_cast<std::size_t>(m));
  const double width = (hi - lo) / static_cast<double>(m);
  for (int k = 0; k < m; ++k) {
    out.centers[static_cast<std::size_t>(k)] = lo + (static_cast<double>(k) + 0.5) * width;
  }
  out.degenerate = degenerate_span(out.centers);
  return out;
}

int quantize(double value, const AttributeCenters& centers) {
  if (centers.centers.empty()) throw InternalError("quantize: empty centers");
  return static_cast<int>(nearest_center(value, centers.centers)) + 1;
}

std::vector<AttributeCenters> fit_all(const GraphDataset& dataset, int m, bool uniform) {
  if (dataset.size() == 0) throw InputError("quantizer fit: empty dataset");
  std::vector<AttributeCenters> out;
  out.reserve(static_cast<std::size_t>(dataset.attr_count));
  for (int column = 0; column < dataset.attr_count; ++column) {
    std::vector<double> pooled;
    for (const auto& graph : dataset.graphs) {
      for (int u = 0; u < graph.node_count; ++u) pooled.push_back(graph.attr(u, column));
    }
    AttributeCenters centers = uniform ? fit_uniform_1d(pooled, m) : fit_kmeans_1d(pooled, m);
    centers.attr_index = column;
    out.push_back(std::move(centers));
  }
  return out;
}

}  // namespace ciliagraph
