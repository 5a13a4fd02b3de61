#pragma once

#include <cstdint>
#include <random>

#include "selectra/complex.hpp"

namespace selectra {

/// Seeded generator with platform-independent draws (no std distributions,
/// whose output is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  bool coin() { return (engine_() & 1u) != 0; }
  /// p/den with p uniform in [lo·den, hi·den].
  Rational rational(long lo, long hi, long den) {
    return make_rational(uniform(lo * den, hi * den), den);
  }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<long>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

/// Strictly positive rational barycentric weights of the given length.
Vec random_barycentric(Rng& rng, std::size_t n, long resolution = 16);

/// Random rational point of |K|: a random maximal cell, then random positive
/// barycentric weights, occasionally snapped onto a random face.
Vec random_point(Rng& rng, const SimplicialComplex& k);

}  // namespace selectra
