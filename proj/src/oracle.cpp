#include "mixent/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>

namespace mixent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMeshTolerance = 1e-12;

double root(double s, Exponent e) {
  if (e.is_inf() || e.value() == 1.0) return s;
  if (e.value() == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / e.value());
}

/// ‖a − b‖_{r,u} for integer coordinate vectors, in mesh units.
class IntMetric {
 public:
  IntMetric(Exponent r, Exponent u, Shape shape, int max_diff) : r_(r), u_(u), b_(shape.b), d_(shape.d) {
    if (!u.is_inf()) {
      inner_.resize(std::size_t(max_diff) + 1);
      for (int t = 0; t <= max_diff; ++t) inner_[t] = t == 0 ? 0.0 : std::pow(double(t), u.value());
    }
  }

  template <typename A, typename B>
  double operator()(const A* a, const B* b) const {
    double outer = 0.0;
    for (int i = 0; i < b_; ++i) {
      double s = 0.0;
      for (int j = 0; j < d_; ++j) {
        const int t = std::abs(int(a[i * d_ + j]) - int(b[i * d_ + j]));
        if (u_.is_inf()) s = std::max(s, double(t));
        else s += inner_[t];
      }
      // s is the row norm raised to u (or the row norm itself for u = ∞)
      if (r_.is_inf()) outer = std::max(outer, s);
      else if (u_.is_inf()) outer += r_.value() == 1.0 ? s : std::pow(s, r_.value());
      else if (r_ == u_) outer += s;
      else if (s > 0.0) outer += std::pow(s, r_.value() / u_.value());
    }
    if (r_.is_inf()) return root(outer, u_);
    return root(outer, r_);
  }

 private:
  Exponent r_, u_;
  int b_, d_;
  std::vector<double> inner_;
};

/// Visits w ∈ {−W..W}^{b×d} with ‖w‖_{p,q} ≤ R in lexicographic order until visit returns false.
bool enumerate_lattice(Exponent p, Exponent q, Shape shape, int W, double R,
                       const std::function<bool(const std::int16_t*)>& visit) {
  const int width = shape.size();
  std::vector<std::int16_t> w(width, 0);
  std::vector<double> buf(width, 0.0);
  const std::vector<double> zero(width, 0.0);
  const double limit = R * (1.0 + kMeshTolerance);
  auto prefix_norm = [&](int upto) {
    for (int j = 0; j < width; ++j) buf[j] = j <= upto ? double(w[j]) : 0.0;
    return mixed_distance(buf.data(), zero.data(), shape.b, shape.d, p, q);
  };
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == width) return visit(w.data());
    for (int v = -W; v <= W; ++v) {
      w[pos] = std::int16_t(v);
      if (prefix_norm(pos) > limit) continue;
      if (!rec(pos + 1)) return false;
    }
    w[pos] = 0;
    return true;
  };
  return rec(0);
}

class MeshIndex {
 public:
  explicit MeshIndex(const DiscretizedBall& ball) : n_(ball.n), width_(ball.width()) {
    double cells = 1.0;
    for (int j = 0; j < width_; ++j) cells *= 2.0 * n_ + 1.0;
    dense_ = cells <= 4e6;
    if (dense_) table_.assign(std::size_t(cells), -1);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const std::uint64_t key = encode(ball.at(i));
      if (dense_) table_[key] = std::int64_t(i);
      else map_.emplace(key, i);
    }
  }

  /// Index of point + offset, or −1.
  [[nodiscard]] std::int64_t find(const std::int16_t* point, const std::int16_t* offset) const {
    std::uint64_t key = 0;
    for (int j = 0; j < width_; ++j) {
      const int c = point[j] + offset[j];
      if (c < -n_ || c > n_) return -1;
      key = key * std::uint64_t(2 * n_ + 1) + std::uint64_t(c + n_);
    }
    if (dense_) return table_[key];
    const auto it = map_.find(key);
    return it == map_.end() ? -1 : std::int64_t(it->second);
  }

  [[nodiscard]] bool dense() const { return dense_; }
  /// Dense lookup by key; only for keys of in-box coordinates.
  [[nodiscard]] std::int64_t at_key(std::uint64_t key) const { return table_[key]; }
  /// Key shift produced by adding offset w (in-box results only).
  [[nodiscard]] std::int64_t key_shift(const std::int16_t* w) const {
    std::int64_t shift = 0;
    for (int j = 0; j < width_; ++j) shift = shift * (2 * n_ + 1) + w[j];
    return shift;
  }

  [[nodiscard]] std::uint64_t encode(const std::int16_t* c) const {
    std::uint64_t key = 0;
    for (int j = 0; j < width_; ++j) key = key * std::uint64_t(2 * n_ + 1) + std::uint64_t(c[j] + n_);
    return key;
  }


 private:
  int n_, width_;
  bool dense_ = false;
  std::vector<std::int64_t> table_;
  std::unordered_map<std::uint64_t, std::size_t> map_;
};

/// Offsets within metric radius `units`, or nothing if there would be more than cap of them.
std::optional<std::vector<std::int16_t>> build_stencil(const DiscretizedBall& ball, Exponent r, Exponent u,
                                                       double units, std::size_t cap) {
  const int W = std::min(2 * ball.n, int(std::floor(units * (1.0 + kMeshTolerance))));
  std::vector<std::int16_t> offsets;
  const int width = ball.width();
  std::size_t count = 0;
  const bool complete = enumerate_lattice(r, u, ball.shape, W, units, [&](const std::int16_t* w) {
    if (++count > cap) return false;
    offsets.insert(offsets.end(), w, w + width);
    return true;
  });
  if (!complete) return std::nullopt;
  return offsets;
}

/// Calls f(j) for every mesh point j with ‖x_i − x_j‖ ≤ eps, via a stencil when it is small.
class Neighborhood {
 public:
  Neighborhood(const DiscretizedBall& ball, const MeshIndex& index, const IntMetric& metric, Exponent r,
               Exponent u, double eps)
      : ball_(ball), index_(index), metric_(metric), units_(eps / ball.delta()) {
    stencil_ = build_stencil(ball, r, u, units_, std::max<std::size_t>(1, ball.size() / 4));
    if (stencil_ && index.dense()) {
      const int width = ball.width();
      for (std::size_t s = 0; s < stencil_->size(); s += width) {
        shifts_.push_back(index.key_shift(stencil_->data() + s));
        for (int j = 0; j < width; ++j) reach_ = std::max(reach_, std::abs(int((*stencil_)[s + j])));
      }
    }
  }

  template <typename F>
  void for_each(std::size_t i, F&& f) const {
    const int width = ball_.width();
    if (!shifts_.empty()) {
      // points at least `reach` inside the box need no per-coordinate bounds checks
      const std::int16_t* c = ball_.at(i);
      bool inside = true;
      for (int j = 0; j < width && inside; ++j) inside = std::abs(int(c[j])) + reach_ <= ball_.n;
      if (inside) {
        const std::int64_t key = std::int64_t(index_.encode(c));
        for (std::int64_t shift : shifts_) {
          const std::int64_t j = index_.at_key(std::uint64_t(key + shift));
          if (j >= 0) f(std::size_t(j));
        }
        return;
      }
    }
    if (stencil_) {
      for (std::size_t s = 0; s < stencil_->size(); s += width) {
        const std::int64_t j = index_.find(ball_.at(i), stencil_->data() + s);
        if (j >= 0) f(std::size_t(j));
      }
      return;
    }
    const double limit = units_ * (1.0 + kMeshTolerance);
    for (std::size_t j = 0; j < ball_.size(); ++j)
      if (metric_(ball_.at(i), ball_.at(j)) <= limit) f(j);
  }

  [[nodiscard]] bool uses_stencil() const { return stencil_.has_value(); }

 private:
  const DiscretizedBall& ball_;
  const MeshIndex& index_;
  const IntMetric& metric_;
  double units_;
  std::optional<std::vector<std::int16_t>> stencil_;
  std::vector<std::int64_t> shifts_;
  int reach_ = 0;
};

void require_fine_mesh(const DiscretizedBall& ball, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  if (ball.delta() > eps / 2.0 * (1.0 + kMeshTolerance))
    throw PreconditionError("mesh too coarse: need delta <= eps/2");
  if (ball.size() == 0) throw PreconditionError("empty mesh");
}

std::size_t origin_index(const DiscretizedBall& ball) {
  const MeshIndex index(ball);
  const std::vector<std::int16_t> zero(ball.width(), 0);
  return std::size_t(index.find(zero.data(), zero.data()));
}

/// Farthest-point-first from the origin; ties go to the lowest index. Stops after max_centers
/// points or once the next insertion distance would be ≤ stop_eps.
FarthestPointOrder fpf(const DiscretizedBall& ball, Exponent r, Exponent u, std::size_t max_centers,
                       double stop_eps) {
  const IntMetric metric(r, u, ball.shape, 2 * ball.n);
  const MeshIndex index(ball);
  const std::size_t N = ball.size();
  FarthestPointOrder out;
  std::vector<double> mind(N, kInf);

  using Entry = std::pair<double, std::size_t>;
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  std::optional<std::vector<std::int16_t>> stencil;
  double stencil_units = kInf;
  const double stop_units = stop_eps / ball.delta();

  std::size_t next = origin_index(ball);
  double next_dist = kInf;
  while (out.order.size() < max_centers) {
    out.order.push_back(next);
    out.insertion_distance.push_back(next_dist * ball.delta());
    mind[next] = 0.0;
    if (stencil) {
      const int width = ball.width();
      for (std::size_t s = 0; s < stencil->size(); s += width) {
        const std::int64_t j = index.find(ball.at(next), stencil->data() + s);
        if (j < 0) continue;
        const double dj = metric(ball.at(next), ball.at(std::size_t(j)));
        if (dj < mind[j]) {
          mind[j] = dj;
          heap.emplace(dj, std::size_t(j));
        }
      }
    } else {
      for (std::size_t j = 0; j < N; ++j) {
        const double dj = metric(ball.at(next), ball.at(j));
        if (dj < mind[j]) {
          mind[j] = dj;
          if (out.order.size() > 1) heap.emplace(dj, j);
        }
      }
      if (out.order.size() == 1)
        for (std::size_t j = 0; j < N; ++j) heap.emplace(mind[j], j);
    }
    // drop stale entries
    while (!heap.empty() && heap.top().first != mind[heap.top().second]) heap.pop();
    if (heap.empty() || heap.top().first <= 0.0) break;
    next = heap.top().second;
    next_dist = heap.top().first;
    heap.pop();
    if (next_dist <= stop_units * (1.0 + kMeshTolerance)) break;
    // updates only reach points within the current maximum of mind
    if (next_dist < 0.7 * stencil_units) {
      auto s = build_stencil(ball, r, u, next_dist, std::max<std::size_t>(1, N / 4));
      stencil_units = next_dist;
      if (s) stencil = std::move(s);
    }
  }
  // trailing distance: covering radius of the mesh by the chosen points
  double tail = 0.0;
  if (out.order.size() < N) {
    for (std::size_t j = 0; j < N; ++j) tail = std::max(tail, mind[j]);
  }
  out.insertion_distance.push_back(tail * ball.delta());
  return out;
}

PackingResult finish(const DiscretizedBall& ball, const MeshIndex& index, const IntMetric& metric, Exponent r,
                     Exponent u, double eps, std::vector<std::size_t> idx, std::string method) {
  PackingResult out;
  out.min_distance = kInf;
  // every pair within 2ε shows up through the stencil; only if none does is a full scan needed
  const Neighborhood nb(ball, index, metric, r, u, 2.0 * eps);
  bool found = false;
  if (nb.uses_stencil()) {
    std::vector<char> chosen(ball.size(), 0);
    for (std::size_t i : idx) chosen[i] = 1;
    for (std::size_t i : idx)
      nb.for_each(i, [&](std::size_t j) {
        if (j == i || !chosen[j]) return;
        found = true;
        out.min_distance = std::min(out.min_distance, metric(ball.at(i), ball.at(j)) * ball.delta());
      });
  }
  if (!found)
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t c = a + 1; c < idx.size(); ++c)
        out.min_distance = std::min(out.min_distance, metric(ball.at(idx[a]), ball.at(idx[c])) * ball.delta());
  if (idx.size() > 1 && !(out.min_distance > eps))
    throw VerificationError("greedy packing has a pair at distance <= eps");
  out.indices = std::move(idx);
  out.method = std::move(method);
  return out;
}

std::vector<std::size_t> sweep_packing(const DiscretizedBall& ball, const MeshIndex& index, const IntMetric& metric,
                                       Exponent r, Exponent u, double eps, std::size_t stop_after) {
  const Neighborhood nb(ball, index, metric, r, u, eps);
  std::vector<std::size_t> chosen;
  const double limit = eps / ball.delta() * (1.0 + kMeshTolerance);
  if (nb.uses_stencil()) {
    std::vector<char> blocked(ball.size(), 0);
    for (std::size_t i = 0; i < ball.size() && chosen.size() < stop_after; ++i) {
      if (blocked[i]) continue;
      chosen.push_back(i);
      nb.for_each(i, [&](std::size_t j) { blocked[j] = 1; });
    }
  } else {
    for (std::size_t i = 0; i < ball.size() && chosen.size() < stop_after; ++i) {
      bool ok = true;
      for (std::size_t c : chosen)
        if (metric(ball.at(i), ball.at(c)) <= limit) {
          ok = false;
          break;
        }
      if (ok) chosen.push_back(i);
    }
  }
  return chosen;
}

}  // namespace

std::vector<double> DiscretizedBall::point(std::size_t i) const {
  std::vector<double> x(static_cast<std::size_t>(width()));
  for (int j = 0; j < width(); ++j) x[j] = at(i)[j] * delta();
  return x;
}

double DiscretizedBall::slack(Exponent r, Exponent u) const {
  return delta() * std::pow(double(shape.b), r.reciprocal()) * std::pow(double(shape.d), u.reciprocal());
}

std::size_t count_mesh_points(Exponent p, Exponent q, Shape shape, int n, std::size_t max_points) {
  if (n < 1 || shape.b < 1 || shape.d < 1) throw PreconditionError("mesh needs n, b, d >= 1");
  std::size_t count = 0;
  enumerate_lattice(p, q, shape, n, double(n), [&](const std::int16_t*) { return ++count <= max_points; });
  return count;
}

DiscretizedBall discretize_ball(Exponent p, Exponent q, Shape shape, int n, std::size_t max_points) {
  if (n < 1 || n > 16000) throw PreconditionError("mesh cells per unit must be in [1, 16000]");
  if (shape.b < 1 || shape.d < 1) throw PreconditionError("shape needs b, d >= 1");
  DiscretizedBall ball;
  ball.p = p;
  ball.q = q;
  ball.shape = shape;
  ball.n = n;
  const int width = shape.size();
  std::size_t count = 0;
  const bool complete = enumerate_lattice(p, q, shape, n, double(n), [&](const std::int16_t* w) {
    if (++count > max_points) return false;
    ball.coords.insert(ball.coords.end(), w, w + width);
    return true;
  });
  if (!complete) throw PreconditionError("mesh exceeds the point budget");
  return ball;
}

int finest_mesh(Exponent p, Exponent q, Shape shape, std::size_t max_points, int n_cap) {
  if (count_mesh_points(p, q, shape, 1, max_points) > max_points)
    throw PreconditionError("even the coarsest mesh exceeds the point budget");
  int lo = 1, hi = 2;
  while (hi <= n_cap && count_mesh_points(p, q, shape, hi, max_points) <= max_points) {
    lo = hi;
    hi *= 2;
  }
  hi = std::min(hi, n_cap + 1);
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (count_mesh_points(p, q, shape, mid, max_points) <= max_points) lo = mid;
    else hi = mid;
  }
  return lo;
}

int mesh_for_eps(Exponent p, Exponent q, Shape shape, double eps, std::size_t max_points) {
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  const int wanted = int(std::ceil(10.0 / eps - 1e-9));
  if (wanted <= kMaxMeshCells && count_mesh_points(p, q, shape, wanted, max_points) <= max_points) return wanted;
  return finest_mesh(p, q, shape, max_points, std::min(wanted, kMaxMeshCells));
}

double FarthestPointOrder::covering_radius(std::size_t j) const {
  if (j == 0) return kInf;
  if (j >= insertion_distance.size()) return insertion_distance.empty() ? kInf : insertion_distance.back();
  return insertion_distance[j];
}

FarthestPointOrder farthest_point_order(const DiscretizedBall& ball, Exponent r, Exponent u,
                                        std::size_t max_centers) {
  if (ball.size() == 0) throw PreconditionError("empty mesh");
  if (max_centers == 0) throw PreconditionError("need at least one center");
  return fpf(ball, r, u, std::min(max_centers, ball.size()), -1.0);
}

namespace {

PackingResult packing_impl(const DiscretizedBall& ball, const MeshIndex& index, const IntMetric& metric, double eps,
                           Exponent r, Exponent u) {
  const FarthestPointOrder order = fpf(ball, r, u, ball.size(), eps);
  auto sweep = sweep_packing(ball, index, metric, r, u, eps, ball.size());
  if (sweep.size() > order.order.size()) return finish(ball, index, metric, r, u, eps, std::move(sweep), "sweep");
  return finish(ball, index, metric, r, u, eps, order.order, "farthest_point");
}

/// Lazy greedy max-coverage: heap keys are upper bounds on the residual gain and are refreshed
/// on pop, so the pick is the largest true gain with ties to the lowest index.
std::vector<std::size_t> set_cover(const DiscretizedBall& ball, const MeshIndex& index, const IntMetric& metric,
                                   double eps, Exponent r, Exponent u) {
  const Neighborhood nb(ball, index, metric, r, u, eps);
  const std::size_t N = ball.size();
  std::vector<char> covered(N, 0);
  auto gain = [&](std::size_t c) {
    std::size_t g = 0;
    nb.for_each(c, [&](std::size_t v) { g += covered[v] ? 0 : 1; });
    return g;
  };

  using Entry = std::pair<std::size_t, std::size_t>;  // (gain bound, index)
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < N; ++i) heap.emplace(N, i);

  std::size_t remaining = N;
  std::vector<std::size_t> centers;
  while (remaining > 0) {
    const std::size_t c = heap.top().second;
    heap.pop();
    const std::size_t g = gain(c);
    if (g == 0) continue;
    if (!heap.empty() && worse(Entry{g, c}, heap.top())) {
      heap.emplace(g, c);
      continue;
    }
    centers.push_back(c);
    nb.for_each(c, [&](std::size_t v) {
      if (!covered[v]) {
        covered[v] = 1;
        --remaining;
      }
    });
  }
  return centers;
}

}  // namespace

PackingResult greedy_packing(const DiscretizedBall& ball, double eps, Exponent r, Exponent u) {
  require_fine_mesh(ball, eps);
  const IntMetric metric(r, u, ball.shape, 2 * ball.n);
  const MeshIndex index(ball);
  return packing_impl(ball, index, metric, eps, r, u);
}

std::vector<std::size_t> greedy_covering(const DiscretizedBall& ball, double eps, Exponent r, Exponent u) {
  require_fine_mesh(ball, eps);
  const IntMetric metric(r, u, ball.shape, 2 * ball.n);
  const MeshIndex index(ball);
  auto centers = set_cover(ball, index, metric, eps, r, u);
  // a maximal ε-packing also covers at radius ε
  auto packing = packing_impl(ball, index, metric, eps, r, u);
  if (packing.indices.size() < centers.size()) return std::move(packing.indices);
  return centers;
}

bool SandwichCounts::holds() const {
  return sandwich_check((long long)packing_2eps, (long long)covering_eps, (long long)packing_eps);
}

SandwichCounts oracle_sandwich(const DiscretizedBall& ball, double eps, Exponent r, Exponent u) {
  require_fine_mesh(ball, eps);
  const IntMetric metric(r, u, ball.shape, 2 * ball.n);
  const MeshIndex index(ball);
  SandwichCounts out;
  out.packing_2eps = packing_impl(ball, index, metric, 2.0 * eps, r, u).indices.size();
  out.packing_eps = packing_impl(ball, index, metric, eps, r, u).indices.size();
  out.covering_eps = std::min(set_cover(ball, index, metric, eps, r, u).size(), out.packing_eps);
  return out;
}

EntropyBracket empirical_entropy_curve(const ExponentTuple& params, Shape shape, int kmax,
                                       const OracleOptions& options) {
  if (shape.b < 1 || shape.d < 1) throw PreconditionError("shape needs b, d >= 1");
  if (shape.size() > kMaxOracleSize) throw PreconditionError("oracle limited to b*d <= 6");
  if (kmax < 1 || kmax > 24) throw PreconditionError("kmax must be in [1, 24]");

  const int n = options.mesh_cells > 0 ? options.mesh_cells
                                       : finest_mesh(params.p, params.q, shape, options.max_points);
  const DiscretizedBall ball = discretize_ball(params.p, params.q, shape, n, options.max_points);
  const double alpha = mixed_quasi_norm_constant(params.r, params.u).alpha;
  const double id_norm = identity_norm(params, shape);
  const double sigma = ball.slack(params.r, params.u);
  const std::size_t N = ball.size();

  const std::size_t J_max = std::size_t(1) << (kmax - 1);
  const FarthestPointOrder order = farthest_point_order(ball, params.r, params.u, std::min(N, J_max + 1));

  const IntMetric metric(params.r, params.u, shape, 2 * n);
  const MeshIndex index(ball);
  const double diameter = 2.0 * alpha * id_norm * (1.0 + 1e-9) + ball.delta();

  // coarser meshes (1/m)ℤ^{bd} ∩ B are 1/m-separated; only counts up to J_max + 1 matter
  std::vector<std::size_t> coarse_count(std::size_t(n) + 1, 0);
  for (int m = 1; m <= n; ++m) coarse_count[std::size_t(m)] = count_mesh_points(params.p, params.q, shape, m, J_max + 1);

  std::vector<double> lower(kmax), upper(kmax);
  for (int k = 1; k <= kmax; ++k) {
    const std::size_t J = std::size_t(1) << (k - 1);
    const double radius = J >= N ? 0.0 : order.covering_radius(J);
    upper[k - 1] = std::min(alpha * (radius + sigma), id_norm);

    double lo = 0.0;
    if (J + 1 <= order.order.size()) lo = order.covering_radius(J) / (2.0 * alpha);
    // the mesh is symmetric: the farthest point x and −x are 2‖x‖ apart
    if (J == 1 && N > 1) lo = std::max(lo, order.covering_radius(1) / alpha);
    for (int m = 1; m <= n; ++m)
      if (coarse_count[std::size_t(m)] > J) {
        lo = std::max(lo, 1.0 / (2.0 * alpha * m));
        break;
      }
    if (N <= options.sweep_max_points && J + 1 <= N) {
      // largest ε found by bisection whose index-order sweep still exceeds J points
      double a = 0.0, b = diameter;
      double best = 0.0;
      for (int it = 0; it < 30 && b - a > 1e-6 * diameter; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid < ball.delta()) {
          a = mid;
          continue;
        }
        auto pts = sweep_packing(ball, index, metric, params.r, params.u, mid, J + 1);
        if (pts.size() > J) {
          a = mid;
          double dmin = kInf;
          for (std::size_t x = 0; x < pts.size(); ++x)
            for (std::size_t y = x + 1; y < pts.size(); ++y)
              dmin = std::min(dmin, metric(ball.at(pts[x]), ball.at(pts[y])) * ball.delta());
          best = std::max(best, dmin);
        } else {
          b = mid;
        }
      }
      lo = std::max(lo, best / (2.0 * alpha));
    }
    lower[k - 1] = std::min(lo, id_norm);
  }
  for (int k = kmax - 1; k >= 1; --k) lower[k - 1] = std::max(lower[k - 1], lower[k]);
  for (int k = 2; k <= kmax; ++k) upper[k - 1] = std::min(upper[k - 1], upper[k - 2]);

  EntropyBracket out;
  out.n = n;
  out.slack = sigma;
  out.mesh_points = N;
  for (int k = 1; k <= kmax; ++k) {
    out.lower.push(k, lower[k - 1], "oracle_lower");
    out.upper.push(k, upper[k - 1], "oracle_upper");
  }
  return out;
}

}  // namespace mixent
