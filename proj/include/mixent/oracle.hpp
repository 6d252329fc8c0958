#pragma once

#include "mixent/bound_curve.hpp"
#include "mixent/core.hpp"

#include <cstdint>
#include <vector>

namespace mixent {

/// All points of (δℤ)^{b×d} with mixed norm ≤ 1, δ = 1/n, stored as integer coordinates.
struct DiscretizedBall {
  Exponent p, q;
  Shape shape;
  int n = 1;
  std::vector<std::int16_t> coords;  // size() × bd, row-major per point

  [[nodiscard]] double delta() const { return 1.0 / n; }
  [[nodiscard]] int width() const { return shape.size(); }
  [[nodiscard]] std::size_t size() const { return coords.size() / std::size_t(width()); }
  [[nodiscard]] const std::int16_t* at(std::size_t i) const { return coords.data() + i * width(); }
  [[nodiscard]] std::vector<double> point(std::size_t i) const;
  /// Every ball point lies within δ·‖ones‖_{r,u} of a mesh point (truncate entries toward zero).
  [[nodiscard]] double slack(Exponent r, Exponent u) const;
};

inline constexpr std::size_t kDefaultMeshPoints = 200000;
inline constexpr int kMaxMeshCells = 200;

/// Throws PreconditionError when the mesh would exceed max_points.
DiscretizedBall discretize_ball(Exponent p, Exponent q, Shape shape, int n,
                                std::size_t max_points = kDefaultMeshPoints);

/// Number of mesh points, or max_points + 1 once the budget is exceeded.
std::size_t count_mesh_points(Exponent p, Exponent q, Shape shape, int n, std::size_t max_points);

/// Largest n ≤ n_cap whose mesh fits the point budget.
int finest_mesh(Exponent p, Exponent q, Shape shape, std::size_t max_points, int n_cap = kMaxMeshCells);

/// n with δ ≤ ε/10 when that fits the budget, else the finest mesh within budget.
int mesh_for_eps(Exponent p, Exponent q, Shape shape, double eps, std::size_t max_points);

struct PackingResult {
  std::vector<std::size_t> indices;
  double min_distance = 0.0;  // +∞ for fewer than two points
  std::string method;         // which greedy order won
};

/// Best of farthest-point-first and index-order sweep; pairwise distances > ε.
PackingResult greedy_packing(const DiscretizedBall& ball, double eps, Exponent r, Exponent u);

/// Greedy max-coverage set cover of the mesh at radius ε (lowest index wins ties); the maximal
/// packing at ε is also a cover, so the smaller of the two is returned.
std::vector<std::size_t> greedy_covering(const DiscretizedBall& ball, double eps, Exponent r, Exponent u);

/// Farthest-point-first order with the distance each point had to its predecessors at insertion.
struct FarthestPointOrder {
  std::vector<std::size_t> order;
  std::vector<double> insertion_distance;  // first entry +∞
  /// Covering radius of the mesh by the first j points (0 once every point is used).
  [[nodiscard]] double covering_radius(std::size_t j) const;
};

FarthestPointOrder farthest_point_order(const DiscretizedBall& ball, Exponent r, Exponent u,
                                        std::size_t max_centers);

struct SandwichCounts {
  std::size_t packing_2eps = 0, covering_eps = 0, packing_eps = 0;
  [[nodiscard]] bool holds() const;
};

SandwichCounts oracle_sandwich(const DiscretizedBall& ball, double eps, Exponent r, Exponent u);

struct EntropyBracket {
  BoundCurve lower, upper;
  int n = 0;
  double slack = 0.0;
  std::size_t mesh_points = 0;
};

struct OracleOptions {
  int mesh_cells = 0;  // 0 picks the finest mesh within max_points
  std::size_t max_points = kDefaultMeshPoints;
  std::size_t sweep_max_points = 20000;  // index-order sweeps (for lower bounds) only below this size
};

inline constexpr int kMaxOracleSize = 6;

/// Two-sided e_k evidence for k = 1..kmax, both curves nonincreasing and lower ≤ upper.
EntropyBracket empirical_entropy_curve(const ExponentTuple& params, Shape shape, int kmax,
                                       const OracleOptions& options = {});

}  // namespace mixent
