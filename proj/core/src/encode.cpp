#include "ciliagraph/encode.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "ciliagraph/errors.hpp"

namespace ciliagraph {

namespace {

constexpr std::uint64_t kBankStreamKey = 0xBA17u;

}  // namespace

std::vector<long long> LevelBank::cumulative_flips() const {
  std::vector<long long> c(flip_counts.size() + 1, 0);
  for (std::size_t i = 0; i < flip_counts.size(); ++i) {
    c[i + 1] = c[i] + flip_counts[i];
  }
  return c;
}

LevelBank init_level_bank(const AttributeCenters& centers, int dim, Rng& rng) {
  const int m = centers.levels();
  if (centers.degenerate) {
    throw InputError("init_level_bank: degenerate centers; use init_degenerate_bank");
  }
  if (m < 2) throw InputError("init_level_bank: need at least 2 levels");
  if (dim < 1) throw InputError("init_level_bank: dim must be positive");

  LevelBank bank;
  bank.centers = centers;
  bank.levels.reserve(static_cast<std::size_t>(m));
  bank.levels.push_back(BipolarHV::random(dim, rng));

  // Random permutation of positions; each step consumes the next unflipped
  // block, so bits are flipped once and remain fixed.
  std::vector<int> pool(static_cast<std::size_t>(dim));
  std::iota(pool.begin(), pool.end(), 0);
  rng.shuffle(pool);

  const double mu_cross = centers.span();
  const double base = static_cast<double>(dim) / (2.0 * static_cast<double>(m - 1));
  double running = 0.0;
  long long c_prev = 0;
  std::size_t pool_cursor = 0;
  for (int j = 2; j <= m; ++j) {
    const double gap = centers.centers[static_cast<std::size_t>(j - 1)] -
                       centers.centers[static_cast<std::size_t>(j - 2)];
    running += base * (gap / mu_cross + 1.0);
    const long long c_j = std::llround(running);
    const int flips = static_cast<int>(c_j - c_prev);
    c_prev = c_j;

    BipolarHV next = bank.levels.back();
    std::vector<int> flipped;
    flipped.reserve(static_cast<std::size_t>(flips));
    for (int f = 0; f < flips; ++f) {
      const int pos = pool[pool_cursor++];
      next.e[static_cast<std::size_t>(pos)] =
          static_cast<std::int8_t>(-next.e[static_cast<std::size_t>(pos)]);
      flipped.push_back(pos);
    }
    bank.flip_counts.push_back(flips);
    bank.flip_positions.push_back(std::move(flipped));
    bank.levels.push_back(std::move(next));
  }
  return bank;
}

LevelBank init_degenerate_bank(const AttributeCenters& centers, int dim, Rng& rng) {
  if (dim < 1) throw InputError("init_degenerate_bank: dim must be positive");
  const int m = centers.levels();
  LevelBank bank;
  bank.centers = centers;
  const BipolarHV base = BipolarHV::random(dim, rng);
  bank.levels.assign(static_cast<std::size_t>(m), base);
  bank.flip_counts.assign(static_cast<std::size_t>(m > 0 ? m - 1 : 0), 0);
  bank.flip_positions.assign(static_cast<std::size_t>(m > 0 ? m - 1 : 0), {});
  return bank;
}

std::vector<LevelBank> init_all_banks(const std::vector<AttributeCenters>& all_centers,
                                      int dim, Rng& rng, std::ostream* diag) {
  if (all_centers.empty()) throw InputError("init_all_banks: no attributes");
  const int m = all_centers.front().levels();
  const int n = static_cast<int>(all_centers.size());
  if (diag != nullptr && m > 2) {
    const int d_min = minimum_dimension(m, n);
    if (dim < d_min) {
      *diag << "warning: dim " << dim << " is below the minimum dimension " << d_min
            << " for m=" << m << ", n=" << n << "\n";
    }
  }
  std::vector<LevelBank> banks;
  banks.reserve(all_centers.size());
  for (std::size_t i = 0; i < all_centers.size(); ++i) {
    Rng bank_rng = rng.split(kBankStreamKey, static_cast<std::uint64_t>(i));
    banks.push_back(all_centers[i].degenerate
                        ? init_degenerate_bank(all_centers[i], dim, bank_rng)
                        : init_level_bank(all_centers[i], dim, bank_rng));
  }
  return banks;
}

IntegerHV encode_node(std::span<const int> quantized_levels,
                      std::span<const LevelBank> banks) {
  if (quantized_levels.size() != banks.size()) {
    throw CompatError("encode_node: got " + std::to_string(quantized_levels.size()) +
                      " levels for " + std::to_string(banks.size()) + " banks");
  }
  if (banks.empty()) throw InputError("encode_node: no banks");
  IntegerHV acc(banks.front().dim());
  for (std::size_t i = 0; i < banks.size(); ++i) {
    const int level = quantized_levels[i];
    if (level < 1 || level > banks[i].level_count()) {
      throw InputError("encode_node: level " + std::to_string(level) +
                       " out of range 1.." + std::to_string(banks[i].level_count()));
    }
    bundle_into(acc, banks[i].levels[static_cast<std::size_t>(level - 1)]);
  }
  return acc;
}

std::vector<IntegerHV> encode_graph_nodes(const GraphInstance& graph,
                                          std::span<const LevelBank> banks) {
  if (graph.attr_count != static_cast<int>(banks.size())) {
    throw CompatError("encode_graph_nodes: graph has " + std::to_string(graph.attr_count) +
                      " attributes, banks cover " + std::to_string(banks.size()));
  }
  std::vector<IntegerHV> rows;
  rows.reserve(static_cast<std::size_t>(graph.node_count));
  std::vector<int> levels(banks.size());
  for (int u = 0; u < graph.node_count; ++u) {
    for (std::size_t i = 0; i < banks.size(); ++i) {
      levels[i] = quantize(graph.attr(u, static_cast<int>(i)), banks[i].centers);
    }
    rows.push_back(encode_node(levels, banks));
  }
  return rows;
}

int minimum_dimension(int m, int n) {
  if (m <= 2) throw InputError("minimum_dimension: m must exceed 2");
  if (n < 1) throw InputError("minimum_dimension: n must be at least 1");
  const double d = (static_cast<double>(m - 1) * static_cast<double>(m - 1) / 2.0) *
                   std::log(2.0 * static_cast<double>(n));
  return static_cast<int>(std::ceil(d));
}

double epsilon_threshold(int m) {
  if (m <= 2) throw InputError("epsilon_threshold: m must exceed 2");
  return 2.0 / static_cast<double>(m - 1);
}

}  // namespace ciliagraph
