#pragma once

#include "mixent/core.hpp"

#include <cstdint>
#include <random>

namespace mixent {

enum class SampleKind {
  interior,  // radius U^{1/(bd)} times a cone-measure direction
  boundary,  // norm exactly 1
  sparse,    // few nonzero rows and entries, on the boundary
};

/// Draws points of the unit ball of ℓ_p^b(ℓ_q^d) from one seeded generator.
class BallSampler {
 public:
  BallSampler(Exponent p, Exponent q, Shape shape, std::uint64_t seed);

  /// Writes a row-major b×d point into out.
  void draw(double* out, SampleKind kind);
  MixedMatrix draw(SampleKind kind);
  /// Cycles interior, boundary, interior, sparse.
  void draw_mixed(double* out, std::size_t index);

  std::mt19937_64& rng() { return rng_; }

 private:
  /// |t|^e-distributed magnitudes, normalised to unit ℓ_e norm.
  void unit_direction(double* v, int n, Exponent e, bool sparse);

  Exponent p_, q_;
  Shape shape_;
  std::mt19937_64 rng_;
  std::vector<double> outer_;
};

}  // namespace mixent
