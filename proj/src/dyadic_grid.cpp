#include "mixent/dyadic_grid.hpp"

#include <numeric>

namespace mixent {

Eigen::VectorXd GridVector::components() const {
  Eigen::VectorXd v(b);
  for (int i = 0; i < b; ++i) v(i) = component(i);
  return v;
}

double GridVector::l1_mass() const {
  long long num = 0;
  for (int k : levels) num += 1LL << k;
  return double(num) / b;
}

bool GridVector::is_admissible() const {
  long long load = 0;
  for (int k : levels) {
    if (k < 0) return false;
    if (k >= 1) load += 1LL << (k - 1);
  }
  return int(levels.size()) == b && load <= b - 1;
}

std::vector<std::string> GridVector::rationals() const {
  std::vector<std::string> out;
  out.reserve(levels.size());
  for (int k : levels) {
    long long num = 1LL << k;
    long long den = b;
    long long g = std::gcd(num, den);
    out.push_back(std::to_string(num / g) + "/" + std::to_string(den / g));
  }
  return out;
}

SimplexPoint::SimplexPoint(Eigen::VectorXd x) : coords(std::move(x)) {
  if (coords.size() < 1) throw PreconditionError("simplex point needs b >= 1");
  if ((coords.array() < 0.0).any() || !coords.allFinite())
    throw PreconditionError("simplex coordinates must be finite and nonnegative");
  if (coords.sum() > 1.0 + 1e-12) throw PreconditionError("simplex coordinates must sum to at most 1");
}

double upsilon0(double t) {
  if (!(t >= 0.0)) throw PreconditionError("upsilon0 needs a nonnegative argument");
  double p = 1.0;
  while (p < t) p *= 2.0;
  return p;
}

GridVector upsilon(const SimplexPoint& x) {
  const int b = int(x.coords.size());
  GridVector v{b, std::vector<int>(b)};
  for (int i = 0; i < b; ++i) {
    const double p = upsilon0(b * x.coords(i));
    v.levels[i] = std::ilogb(p);
  }
  return v;
}

GridVector DyadicGrid::at(std::size_t index) const {
  GridVector v{b_, std::vector<int>(b_)};
  for (int i = 0; i < b_; ++i) v.levels[i] = level(index, i);
  return v;
}

void DyadicGrid::append(const std::vector<int>& levels) {
  for (int k : levels) levels_.push_back(static_cast<std::uint8_t>(k));
}

bool DyadicGrid::contains(const GridVector& v) const {
  if (v.b != b_) return false;
  // levels are stored in lexicographic order
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    int cmp = 0;
    for (int i = 0; i < b_ && cmp == 0; ++i) cmp = (level(mid, i) > v.levels[i]) - (level(mid, i) < v.levels[i]);
    if (cmp == 0) return true;
    if (cmp < 0) lo = mid + 1;
    else hi = mid;
  }
  return false;
}

double DyadicGrid::max_l1_mass() const {
  double best = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    long long num = 0;
    for (int i = 0; i < b_; ++i) num += 1LL << level(j, i);
    best = std::max(best, double(num) / b_);
  }
  return best;
}

namespace {

void enumerate_levels(int b, int pos, long long budget, std::vector<int>& levels, DyadicGrid& out) {
  if (pos == b) {
    out.append(levels);
    return;
  }
  for (int k = 0;; ++k) {
    const long long cost = k == 0 ? 0 : 1LL << (k - 1);
    if (cost > budget) break;
    levels[pos] = k;
    enumerate_levels(b, pos + 1, budget - cost, levels, out);
  }
}

}  // namespace

DyadicGrid enumerate_grid(int b) {
  if (b < 1) throw PreconditionError("enumerate_grid: b must be positive");
  if (b > kMaxGridDimension)
    throw PreconditionError("enumerate_grid: b=" + std::to_string(b) + " exceeds the enumeration cap " +
                            std::to_string(kMaxGridDimension));
  DyadicGrid grid(b);
  std::vector<int> levels(b, 0);
  enumerate_levels(b, 0, b - 1, levels, grid);
  return grid;
}

RowMajorMatrix transform_grid(const DyadicGrid& grid, Exponent p) {
  const int b = grid.b();
  if (p.is_inf()) return RowMajorMatrix::Ones(1, b);
  // v ↦ v^{1/p} is injective for finite p, so no deduplication is needed
  RowMajorMatrix out(grid.size(), b);
  const double e = p.reciprocal();
  for (std::size_t j = 0; j < grid.size(); ++j)
    for (int i = 0; i < b; ++i) out(j, i) = std::pow(std::ldexp(1.0, grid.level(j, i)) / b, e);
  return out;
}

}  // namespace mixent
