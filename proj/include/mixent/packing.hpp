#pragma once

#include "mixent/bound_curve.hpp"
#include "mixent/core.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace mixent {

/// Points of B_X, pairwise Y-separated by at least `separation`, each with Y-norm ≥ min_norm.
struct BasePacking {
  RowMajorMatrix points;  // one point per row
  double separation = 0.0;
  double min_norm = 0.0;
  Exponent x_exp;  // X = ℓ_x^dim
  Exponent y_exp;  // Y = ℓ_y^dim

  [[nodiscard]] int dim() const { return int(points.cols()); }
  [[nodiscard]] std::size_t size() const { return std::size_t(points.rows()); }
  /// Throws VerificationError on the first violated invariant.
  void verify() const;
};

struct PackingCertificate {
  std::string construction;
  ExponentTuple params;
  Shape shape;
  int s = 0;
  int t = 0;
  std::uint64_t seed = 0;
  double claimed_separation = 0.0;
  std::size_t advertised_count = 1;
  double constructible_count = 0.0;  // size of the full construction; points may hold a prefix
  RowMajorMatrix points;             // one flattened row-major b×d matrix per row
  std::map<std::string, double> metadata;

  [[nodiscard]] std::size_t size() const { return std::size_t(points.rows()); }
  [[nodiscard]] MixedMatrix point(std::size_t i) const;
};

struct PackingOptions {
  std::size_t max_points = 1024;
  std::uint64_t seed = 0x5eed;
};

struct PackingReport {
  bool ok = true;
  std::size_t count = 0;
  double min_distance = std::numeric_limits<double>::infinity();
  std::size_t worst_i = 0, worst_j = 0;
  double max_norm = 0.0;
  std::string message;
};

inline constexpr double kRelativeTolerance = 1e-9;
inline constexpr double kBallTolerance = 1e-12;

/// Recomputes ball membership, all pairwise target distances and the cardinality claim.
PackingReport verify_packing(const PackingCertificate& cert);

/// 2s-block-sparse points of B_{ℓ_p^b(X)} separated in ℓ_r^b(Y).
PackingCertificate block_sparse_packing(const BasePacking& base, Exponent p, Exponent r, int b, int s,
                                        QuasiNormConstant alpha_Y, const PackingOptions& options = {});

/// (2s,2t)-sparse matrices built by nesting block_sparse_packing twice.
PackingCertificate two_level_sparse_packing(const ExponentTuple& params, int b, int d, int s, int t,
                                            const PackingOptions& options = {});

/// Matrices whose nonzero rows (a subset family member) are copies of (2s)^{−1/p} x.
PackingCertificate row_replication_packing(const Eigen::VectorXd& witness, const ExponentTuple& params, int b,
                                           int s, const PackingOptions& options = {});

/// ±E_ij, all 2bd signed unit matrices.
PackingCertificate signed_unit_packing(const ExponentTuple& params, Shape shape);

/// ±x for an x in the source ball with ‖x‖_{r,u} = ‖id‖.
PackingCertificate antipodal_packing(const ExponentTuple& params, Shape shape);

/// n^{bd} points of the cube inscribed along the diagonal of the unit ball, n levels per entry.
PackingCertificate cube_lattice_packing(const ExponentTuple& params, Shape shape, int levels,
                                        const PackingOptions& options = {});

/// Largest k with 2^{k−1} < M, valued separation/(2α) in the target quasi-norm.
BoundCurve packing_to_entropy_lower(const PackingCertificate& cert);

}  // namespace mixent
