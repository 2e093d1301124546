#pragma once

#include <cstdint>
#include <random>

#include "wbary/interpolate.hpp"

namespace wbary {

/// Seeded random source. The engine is the fully specified mt19937_64 and
/// all conversions are hand-rolled, so streams reproduce bit-for-bit from
/// the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double exponential() { return -std::log(1.0 - uniform()); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Atoms uniform in a bounded chart region of the given extent, weights from
/// a symmetric Dirichlet.
DiscreteMeasure random_measure(const Space& space, int atoms, double extent, Rng& rng);

/// One random tangent per atom with metric norm at most max_norm.
VectorField random_vector_field(const DiscreteMeasure& m, double max_norm, Rng& rng);

/// A random isometry of the space (bounded translations where applicable).
Isometry random_isometry(const Space& space, Rng& rng);

}  // namespace wbary
