#include "ciliagraph/hv.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "ciliagraph/errors.hpp"

namespace ciliagraph {

namespace {

void require_same_dim(int a, int b, const char* op) {
  if (a != b) {
    throw CompatError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                      " vs " + std::to_string(b) + ")");
  }
}

template <typename HV>
double dot_impl(const HV& a, const HV& b, const char* op) {
  require_same_dim(a.dim(), b.dim(), op);
  double acc = 0.0;
  for (std::size_t k = 0; k < a.e.size(); ++k) {
    acc += static_cast<double>(a.e[k]) * static_cast<double>(b.e[k]);
  }
  return acc;
}

template <typename HV>
double sq_norm_impl(const HV& v) {
  double acc = 0.0;
  for (const auto x : v.e) acc += static_cast<double>(x) * static_cast<double>(x);
  return acc;
}

template <typename A, typename B>
double cosine_impl(const A& a, const B& b, const char* op) {
  require_same_dim(a.dim(), b.dim(), op);
  double ab = 0.0;
  for (std::size_t k = 0; k < a.e.size(); ++k) {
    ab += static_cast<double>(a.e[k]) * static_cast<double>(b.e[k]);
  }
  const double na = std::sqrt(sq_norm_impl(a));
  const double nb = std::sqrt(sq_norm_impl(b));
  if (na == 0.0 || nb == 0.0) {
    throw InputError("cosine: zero-norm operand (degenerate vector)");
  }
  return ab / (na * nb);
}

template <typename HV>
int hamming_impl(const HV& a, const HV& b, const char* op) {
  require_same_dim(a.dim(), b.dim(), op);
  int differing = 0;
  for (std::size_t k = 0; k < a.e.size(); ++k) {
    differing += static_cast<int>(a.e[k] != b.e[k]);
  }
  return differing;
}

template <typename HV>
IntegerHV bundle_impl(std::span<const HV> vs) {
  if (vs.empty()) throw InputError("bundle: empty sequence");
  IntegerHV acc(vs.front().dim());
  for (const auto& v : vs) {
    require_same_dim(acc.dim(), v.dim(), "bundle");
    for (std::size_t k = 0; k < acc.e.size(); ++k) {
      acc.e[k] += static_cast<std::int32_t>(v.e[k]);
    }
  }
  return acc;
}

template <typename HV>
BipolarHV sign_impl(const HV& v) {
  BipolarHV out(v.dim());
  for (std::size_t k = 0; k < v.e.size(); ++k) {
    out.e[k] = (v.e[k] < 0) ? std::int8_t{-1} : std::int8_t{1};
  }
  return out;
}

}  // namespace

BipolarHV BipolarHV::random(int dim, Rng& rng) {
  BipolarHV out(dim);
  std::uint64_t bits = 0;
  for (int k = 0; k < dim; ++k) {
    if (k % 64 == 0) bits = rng.next_u64();
    out.e[static_cast<std::size_t>(k)] = (bits & 1ULL) ? std::int8_t{1} : std::int8_t{-1};
    bits >>= 1;
  }
  return out;
}

IntegerHV::IntegerHV(const BipolarHV& b) : e(b.e.begin(), b.e.end()) {}

BipolarHV bind(const BipolarHV& a, const BipolarHV& b) {
  require_same_dim(a.dim(), b.dim(), "bind");
  BipolarHV out(a.dim());
  for (std::size_t k = 0; k < out.e.size(); ++k) {
    out.e[k] = static_cast<std::int8_t>(a.e[k] * b.e[k]);
  }
  return out;
}

IntegerHV bundle(std::span<const BipolarHV> vs) { return bundle_impl(vs); }
IntegerHV bundle(std::span<const IntegerHV> vs) { return bundle_impl(vs); }

void bundle_into(IntegerHV& acc, const BipolarHV& v) {
  require_same_dim(acc.dim(), v.dim(), "bundle_into");
  for (std::size_t k = 0; k < acc.e.size(); ++k) {
    acc.e[k] += static_cast<std::int32_t>(v.e[k]);
  }
}

BipolarHV sign(const IntegerHV& v) { return sign_impl(v); }
BipolarHV sign(const RealHV& v) { return sign_impl(v); }

int hamming(const BipolarHV& a, const BipolarHV& b) { return hamming_impl(a, b, "hamming"); }
int hamming(const IntegerHV& a, const IntegerHV& b) { return hamming_impl(a, b, "hamming"); }

double dot(const BipolarHV& a, const BipolarHV& b) { return dot_impl(a, b, "dot"); }
double dot(const IntegerHV& a, const IntegerHV& b) { return dot_impl(a, b, "dot"); }
double dot(const RealHV& a, const RealHV& b) { return dot_impl(a, b, "dot"); }

double cosine(const BipolarHV& a, const BipolarHV& b) { return cosine_impl(a, b, "cosine"); }
double cosine(const IntegerHV& a, const IntegerHV& b) { return cosine_impl(a, b, "cosine"); }
double cosine(const RealHV& a, const RealHV& b) { return cosine_impl(a, b, "cosine"); }

double l2_norm(const RealHV& v) { return std::sqrt(sq_norm_impl(v)); }

RealHV l2_normalize(const RealHV& v) {
  const double n = l2_norm(v);
  if (n == 0.0) throw InputError("l2_normalize: zero vector");
  RealHV out(v.dim());
  for (std::size_t k = 0; k < v.e.size(); ++k) out.e[k] = v.e[k] / n;
  return out;
}

BipolarHV negate(const BipolarHV& v) {
  BipolarHV out(v.dim());
  for (std::size_t k = 0; k < v.e.size(); ++k) {
    out.e[k] = static_cast<std::int8_t>(-v.e[k]);
  }
  return out;
}

}  // namespace ciliagraph
