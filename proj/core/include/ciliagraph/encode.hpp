#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ciliagraph/dataset.hpp"
#include "ciliagraph/hv.hpp"
#include "ciliagraph/quantize.hpp"
#include "ciliagraph/rng.hpp"

namespace ciliagraph {

// Ordered family L_1..L_m of level hypervectors for one attribute. Each level
// is obtained from the previous by flipping fresh (never-before-flipped)
// positions, so pairwise Hamming distances are exactly the cumulative flip
// differences and grow with both the level gap and the center gap.
struct LevelBank {
  std::vector<BipolarHV> levels;
  AttributeCenters centers;
  std::vector<int> flip_counts;                 // m-1 per-step counts
  std::vector<std::vector<int>> flip_positions; // m-1 pairwise-disjoint index sets

  [[nodiscard]] int dim() const { return levels.empty() ? 0 : levels.front().dim(); }
  [[nodiscard]] int level_count() const { return static_cast<int>(levels.size()); }

  // c_0 = 0, c_j = sum of the first j flip counts; hamming(L_i, L_j) == c_j - c_i.
  [[nodiscard]] std::vector<long long> cumulative_flips() const;
};

// Non-uniform dynamic initialization: L_1 uniform on {-1,+1}^D; step j-1 flips
// c_j - c_{j-1} fresh positions where the cumulative target is
//   c_j = round( sum_{i=2..j} D/(2(m-1)) * ((mu_i - mu_{i-1})/mu_cross + 1) ),
// mu_cross = mu_m - mu_1. Rounding the running sum keeps the endpoint within
// +/-1 of the closed form D*m/(2(m-1)) and every per-step count non-negative.
// Requires non-degenerate centers and dim >= 1.
LevelBank init_level_bank(const AttributeCenters& centers, int dim, Rng& rng);

// Constant-attribute fallback: all levels equal a single random L_1, all flip
// counts zero. Participates in bundling like any other bank.
LevelBank init_degenerate_bank(const AttributeCenters& centers, int dim, Rng& rng);

// One bank per attribute, each from an independently split generator stream so
// banks of different attributes are mutually quasi-orthogonal. Emits a warning
// on `diag` when dim is below minimum_dimension(m, n).
std::vector<LevelBank> init_all_banks(const std::vector<AttributeCenters>& all_centers,
                                      int dim, Rng& rng, std::ostream* diag = nullptr);

// H_u = bundle of the selected level hypervector of every attribute.
// `quantized_levels` holds 1-based level indices, one per bank.
IntegerHV encode_node(std::span<const int> quantized_levels,
                      std::span<const LevelBank> banks);

// Quantizes every node of `graph` against each bank's centers and encodes it;
// row u of the result is the node hypervector of node u.
std::vector<IntegerHV> encode_graph_nodes(const GraphInstance& graph,
                                          std::span<const LevelBank> banks);

// ceil( (m-1)^2/2 * ln(2n) ): smallest dimension that accommodates 2n
// quasi-orthogonal hypervectors at threshold epsilon = 2/(m-1).
int minimum_dimension(int m, int n);

// Quasi-orthogonality threshold 2/(m-1). At m = 3 this hits the boundary of
// the admissible range [0, 1); callers should surface a warning.
double epsilon_threshold(int m);

}  // namespace ciliagraph
