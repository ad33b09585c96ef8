#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ciliagraph/rng.hpp"

namespace ciliagraph {

// Bipolar hypervector: every entry is exactly -1 or +1.
struct BipolarHV {
  std::vector<std::int8_t> e;

  BipolarHV() = default;
  explicit BipolarHV(int dim) : e(static_cast<std::size_t>(dim), std::int8_t{1}) {}

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(e.size()); }

  // Uniform draw from {-1,+1}^dim, 64 entries per generator word.
  static BipolarHV random(int dim, Rng& rng);

  friend bool operator==(const BipolarHV&, const BipolarHV&) = default;
};

// Integer hypervector; produced by bundling. Entry magnitudes are bounded by
// the number of bundled operands.
struct IntegerHV {
  std::vector<std::int32_t> e;

  IntegerHV() = default;
  explicit IntegerHV(int dim) : e(static_cast<std::size_t>(dim), 0) {}
  explicit IntegerHV(const BipolarHV& b);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(e.size()); }

  friend bool operator==(const IntegerHV&, const IntegerHV&) = default;
};

// Real hypervector (dimension D, or 2D after concatenation).
struct RealHV {
  std::vector<double> e;

  RealHV() = default;
  explicit RealHV(int dim) : e(static_cast<std::size_t>(dim), 0.0) {}

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(e.size()); }

  friend bool operator==(const RealHV&, const RealHV&) = default;
};

// --- Binding / bundling ---

// Elementwise product of two bipolar hypervectors. Throws CompatError on
// dimension mismatch.
BipolarHV bind(const BipolarHV& a, const BipolarHV& b);

// Elementwise sums. Throws InputError on an empty sequence and CompatError on
// mixed dimensions.
IntegerHV bundle(std::span<const BipolarHV> vs);
IntegerHV bundle(std::span<const IntegerHV> vs);

// Accumulating form used by encoders; acc must match v's dimension.
void bundle_into(IntegerHV& acc, const BipolarHV& v);

// --- Sign ---

// Maps entries to +1/-1; sign(0) = +1 by convention so results are
// deterministic across runs.
BipolarHV sign(const IntegerHV& v);
BipolarHV sign(const RealHV& v);

// --- Distances and similarities ---

// Positionwise count of differing entries. Defined for bipolar and for the
// non-binary (integer) node hypervectors alike.
int hamming(const BipolarHV& a, const BipolarHV& b);
int hamming(const IntegerHV& a, const IntegerHV& b);

double dot(const BipolarHV& a, const BipolarHV& b);
double dot(const IntegerHV& a, const IntegerHV& b);
double dot(const RealHV& a, const RealHV& b);

// dot / (|a| |b|); throws InputError when either operand has zero norm.
double cosine(const BipolarHV& a, const BipolarHV& b);
double cosine(const IntegerHV& a, const IntegerHV& b);
double cosine(const RealHV& a, const RealHV& b);

double l2_norm(const RealHV& v);

// Unit-length copy; throws InputError on the zero vector.
RealHV l2_normalize(const RealHV& v);

BipolarHV negate(const BipolarHV& v);

}  // namespace ciliagraph
