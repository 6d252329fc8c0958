#pragma once

#include "mixent/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mixent {

/// v = (2^{k_1}, …, 2^{k_b}) / b.
struct GridVector {
  int b = 1;
  std::vector<int> levels;

  [[nodiscard]] double component(int i) const { return std::ldexp(1.0, levels[i]) / b; }
  [[nodiscard]] Eigen::VectorXd components() const;
  [[nodiscard]] double l1_mass() const;
  /// Σ_{k_i ≥ 1} 2^{k_i−1} ≤ b − 1
  [[nodiscard]] bool is_admissible() const;
  /// Components as reduced fractions "num/den".
  [[nodiscard]] std::vector<std::string> rationals() const;

  friend bool operator==(const GridVector&, const GridVector&) = default;
};

struct SimplexPoint {
  Eigen::VectorXd coords;
  explicit SimplexPoint(Eigen::VectorXd x);
};

/// Smallest power of two ≥ max(t, 1).
double upsilon0(double t);
GridVector upsilon(const SimplexPoint& x);

inline constexpr int kMaxGridDimension = 14;

/// The full grid Γ(b), stored as a flat level table.
class DyadicGrid {
 public:
  explicit DyadicGrid(int b) : b_(b) {}

  [[nodiscard]] int b() const { return b_; }
  [[nodiscard]] std::size_t size() const { return levels_.size() / static_cast<std::size_t>(b_); }
  [[nodiscard]] GridVector at(std::size_t index) const;
  [[nodiscard]] int level(std::size_t index, int i) const { return levels_[index * b_ + i]; }
  [[nodiscard]] bool contains(const GridVector& v) const;
  [[nodiscard]] double max_l1_mass() const;

  void append(const std::vector<int>& levels);

 private:
  int b_;
  std::vector<std::uint8_t> levels_;
};

/// Exact enumeration of Γ(b) through the admissibility characterisation, lexicographic in levels.
DyadicGrid enumerate_grid(int b);

/// Γ(b,p): rows v^{1/p}, deduplicated (p = ∞ collapses to a single all-ones row).
RowMajorMatrix transform_grid(const DyadicGrid& grid, Exponent p);

}  // namespace mixent
