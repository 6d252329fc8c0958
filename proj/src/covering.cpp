#include "mixent/covering.hpp"

#include "mixent/designs.hpp"
#include "mixent/dyadic_grid.hpp"
#include "mixent/sampling.hpp"

namespace mixent {

RowSet IntervalProvider::cover(int m) const {
  if (m < 1 || m > kMaxBudget) throw PreconditionError("interval provider budget out of range");
  const long long n = 1LL << (m - 1);
  RowSet set;
  set.centers.resize(n, 1);
  for (long long j = 0; j < n; ++j) set.centers(j, 0) = -1.0 + (2.0 * j + 1.0) / double(n);
  set.radius = radius(m);
  return set;
}

double IntervalProvider::radius(int m) const {
  if (m < 1) throw PreconditionError("interval provider budget out of range");
  return std::ldexp(1.0, -(std::min(m, kMaxBudget) - 1));
}

LatticeProvider::LatticeProvider(Exponent q, Exponent u, int d) : q_(q), u_(u), d_(d) {
  if (d < 1) throw PreconditionError("lattice provider needs d >= 1");
  if (q > u) throw PreconditionError("lattice provider needs q <= u");
  id_norm_ = std::pow(double(d), std::max(0.0, u.reciprocal() - q.reciprocal()));
}

namespace {

// Visits every cell (as per-axis indices 0..n−1) of [−1,1]^d whose closest-to-origin point lies in B_q.
template <typename Visit>
void for_each_kept_cell(int n, int d, Exponent q, Visit&& visit) {
  std::vector<int> idx(d, 0);
  const double h = 2.0 / n;
  for (;;) {
    LpAccumulator<double> acc(q);
    for (int i = 0; i < d; ++i) {
      const double a = -1.0 + h * idx[i], b = a + h;
      acc.add(a <= 0.0 && b >= 0.0 ? 0.0 : std::min(std::abs(a), std::abs(b)));
    }
    if (acc.result() <= 1.0 + 1e-12) visit(idx);
    int pos = d - 1;
    while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
    if (pos < 0) return;
  }
}

}  // namespace

std::size_t LatticeProvider::kept_cells(int n) const {
  std::size_t count = 0;
  for_each_kept_cell(n, d_, q_, [&](const std::vector<int>&) { ++count; });
  return count;
}

int LatticeProvider::cells_per_axis(int m) const {
  if (m < 1) throw PreconditionError("lattice provider budget must be positive");
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = cells_cache_.find(m); it != cells_cache_.end()) return it->second;
  const double cap = std::ldexp(1.0, m - 1);
  int n = std::max(1, int(std::floor(std::exp2((m - 1.0) / d_) + 1e-9)));
  while (std::pow(double(n), d_) > kMaxCells && n > 1) --n;
  while (std::pow(n + 1.0, d_) <= kMaxCells && double(kept_cells(n + 1)) <= cap) ++n;
  cells_cache_[m] = n;
  return n;
}

double LatticeProvider::radius(int m) const {
  const int n = cells_per_axis(m);
  return std::min(std::pow(double(d_), u_.reciprocal()) / n, n == 1 ? id_norm_ : std::numeric_limits<double>::infinity());
}

RowSet LatticeProvider::cover(int m) const {
  const int n = cells_per_axis(m);
  RowSet set;
  const double lattice_radius = std::pow(double(d_), u_.reciprocal()) / n;
  if (n == 1 && id_norm_ <= lattice_radius) {
    set.centers = RowMajorMatrix::Zero(1, d_);
    set.radius = id_norm_;
    return set;
  }
  std::vector<double> flat;
  const double h = 2.0 / n;
  for_each_kept_cell(n, d_, q_, [&](const std::vector<int>& idx) {
    for (int i = 0; i < d_; ++i) flat.push_back(-1.0 + h * (idx[i] + 0.5));
  });
  set.centers = Eigen::Map<RowMajorMatrix>(flat.data(), Eigen::Index(flat.size() / d_), d_);
  set.radius = lattice_radius;
  return set;
}

std::uint64_t CoveringCertificate::recompute_count() const {
  constexpr std::uint64_t limit = std::uint64_t(1) << 62;
  std::uint64_t total = 0;
  for (const auto& blk : blocks) {
    if (int(blk.size()) != shape.b) throw VerificationError("block length does not match b");
    std::uint64_t prod = 1;
    for (int id : blk) {
      if (id < 0 || id >= int(row_sets.size())) throw VerificationError("block refers to a missing row set");
      if (__builtin_mul_overflow(prod, std::uint64_t(row_sets[id].rows()), &prod) || prod > limit)
        throw VerificationError("center count overflows");
    }
    total += prod;
    if (total > limit) throw VerificationError("center count overflows");
  }
  return total;
}

RowMajorMatrix CoveringCertificate::materialize(std::size_t max_count) const {
  const std::uint64_t n = recompute_count();
  if (n > max_count) throw PreconditionError("covering too large to materialise");
  const int b = shape.b, d = shape.d;
  RowMajorMatrix out(Eigen::Index(n), Eigen::Index(b) * d);
  Eigen::Index row = 0;
  for (const auto& blk : blocks) {
    std::vector<Eigen::Index> digit(b, 0);
    for (;;) {
      for (int i = 0; i < b; ++i) out.row(row).segment(i * d, d) = row_sets[blk[i]].row(digit[i]);
      ++row;
      int pos = b - 1;
      while (pos >= 0 && ++digit[pos] == row_sets[blk[pos]].rows()) digit[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

int index_for_count(std::uint64_t count) {
  if (count == 0) throw PreconditionError("a covering needs at least one center");
  int k = 0;
  while ((std::uint64_t(1) << k) < count) ++k;
  return 1 + k;
}

NearestCenter::NearestCenter(const CoveringCertificate& cert) : cert_(cert) {
  sorted_.resize(cert.row_sets.size());
  for (std::size_t s = 0; s < cert.row_sets.size(); ++s) {
    const auto& c = cert.row_sets[s];
    bool ok = c.cols() == 1;
    for (Eigen::Index i = 1; ok && i < c.rows(); ++i) ok = c(i - 1, 0) <= c(i, 0);
    sorted_[s] = ok;
  }
  memo_.resize(cert.row_sets.size() * cert.shape.b);
}

double NearestCenter::operator()(const double* x) {
  const int b = cert_.shape.b, d = cert_.shape.d;
  const std::size_t nsets = cert_.row_sets.size();
  std::fill(memo_.begin(), memo_.end(), -1.0);
  const Exponent r = cert_.params.r, u = cert_.params.u;

  auto row_distance = [&](int i, int s) {
    double& slot = memo_[std::size_t(i) * nsets + s];
    if (slot >= 0.0) return slot;
    const auto& c = cert_.row_sets[s];
    const double* xi = x + i * d;
    double best = std::numeric_limits<double>::infinity();
    if (sorted_[s]) {
      const double* first = c.data();
      const double* last = first + c.rows();
      const double* it = std::lower_bound(first, last, xi[0]);
      if (it != last) best = std::min(best, std::abs(*it - xi[0]));
      if (it != first) best = std::min(best, std::abs(*(it - 1) - xi[0]));
    } else {
      for (Eigen::Index j = 0; j < c.rows(); ++j) {
        LpAccumulator<double> acc(u);
        const double* cj = c.data() + j * d;
        for (int t = 0; t < d; ++t) acc.add(std::abs(xi[t] - cj[t]));
        best = std::min(best, acc.result());
      }
    }
    return slot = best;
  };

  double best = std::numeric_limits<double>::infinity();
  for (const auto& blk : cert_.blocks) {
    LpAccumulator<double> acc(r);
    for (int i = 0; i < b; ++i) acc.add(row_distance(i, blk[i]));
    best = std::min(best, acc.result());
  }
  return best;
}

CoverageEvidence verify_covering(const CoveringCertificate& cert, std::size_t samples, std::uint64_t seed) {
  const std::uint64_t count = cert.recompute_count();
  if (count != cert.count)
    throw VerificationError("stored count " + std::to_string(cert.count) + " differs from recomputed " +
                            std::to_string(count));
  if (index_for_count(count) > cert.certified_index)
    throw VerificationError("certified index is smaller than the center count allows");

  CoverageEvidence ev;
  ev.samples = samples;
  ev.seed = seed;
  BallSampler sampler(cert.params.p, cert.params.q, cert.shape, seed);
  NearestCenter nearest(cert);
  std::vector<double> x(std::size_t(cert.shape.size()));
  const double tol = cert.claimed_radius * (1.0 + kCoverTolerance);
  for (std::size_t n = 0; n < samples; ++n) {
    sampler.draw_mixed(x.data(), n);
    const double dist = nearest(x.data());
    ev.max_distance = std::max(ev.max_distance, dist);
    if (dist > tol) ++ev.misses;
  }
  return ev;
}

void attach_evidence(CoveringCertificate& cert, std::size_t samples, std::uint64_t seed) {
  cert.evidence = verify_covering(cert, samples, seed);
  if (cert.evidence.misses > 0)
    throw VerificationError(std::to_string(cert.evidence.misses) + " samples lie outside the claimed radius");
}

CoveringCertificate trivial_covering(const ExponentTuple& params, Shape shape) {
  CoveringCertificate cert;
  cert.construction = "trivial";
  cert.params = params;
  cert.shape = shape;
  cert.row_sets = {RowMajorMatrix::Zero(1, shape.d)};
  cert.blocks = {std::vector<int>(shape.b, 0)};
  cert.claimed_radius = identity_norm(params, shape);
  cert.budget = 1;
  cert.count = cert.recompute_count();
  cert.certified_index = index_for_count(cert.count);
  return cert;
}

namespace {

double lr_combine(double a, double b, Exponent r) {
  if (r.is_inf()) return std::max(a, b);
  return std::pow(std::pow(a, r.value()) + std::pow(b, r.value()), 1.0 / r.value());
}

RowMajorMatrix scaled(const RowSet& set, double factor) { return set.centers * factor; }

}  // namespace

CoveringCertificate cuboid_covering(const InnerCoveringProvider& provider, Exponent p, Exponent r, int b, int k) {
  if (b < 1) throw PreconditionError("cuboid_covering needs b >= 1");
  if (k < 8 * b) throw PreconditionError("cuboid_covering requires k >= 8b");
  if (p > r) throw PreconditionError("cuboid_covering requires p <= r");
  const ExponentTuple params{p, provider.x_exp(), r, provider.y_exp()};
  const double gamma = p.reciprocal() - r.reciprocal();
  const int factor = int(std::floor((double(k) / b - 2.0) / 2.0));

  // p = ∞ needs only v = (1/b, …, 1/b)
  DyadicGrid grid(b);
  if (p.is_inf()) grid.append(std::vector<int>(b, 0));
  else grid = enumerate_grid(b);

  int max_level = 0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    for (int i = 0; i < b; ++i) max_level = std::max(max_level, grid.level(j, i));

  CoveringCertificate cert;
  cert.construction = "cuboid";
  cert.params = params;
  cert.shape = {b, provider.dim()};
  cert.budget = k;
  std::vector<double> level_radius;
  for (int level = 0; level <= max_level; ++level) {
    const int m = factor << level;  // ⌊(k/b−2)/2⌋·b·v_i with v_i = 2^level/b
    const double v = std::ldexp(1.0, level) / b;
    const double scale = std::pow(v, p.reciprocal());
    const RowSet set = provider.cover(m);
    cert.row_sets.push_back(scaled(set, scale));
    level_radius.push_back(scale * set.radius);
  }
  double exact = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::vector<int> blk(b);
    LpAccumulator<double> acc(r);
    for (int i = 0; i < b; ++i) {
      blk[i] = grid.level(j, i);
      acc.add(level_radius[blk[i]]);
    }
    exact = std::max(exact, acc.result());
    cert.blocks.push_back(std::move(blk));
  }

  double best = 0.0;
  for (int m = std::max(1, (3 * k) / (8 * b)); m <= k; ++m)
    best = std::max(best, std::pow(double(m) / k, gamma) * provider.radius(m));
  cert.claimed_radius = std::pow(3.0, r.reciprocal()) * std::pow(8.0, gamma) * best;
  if (exact > cert.claimed_radius * (1.0 + kCoverTolerance))
    throw ConstructionError("cuboid block radius exceeds the claimed bound");

  cert.count = cert.recompute_count();
  cert.certified_index = index_for_count(cert.count);
  cert.metadata["exact_radius"] = exact;
  cert.metadata["grid_size"] = double(grid.size());
  cert.metadata["budget_factor"] = factor;
  return cert;
}

CoveringCertificate et_sparse_covering(const InnerCoveringProvider& row_provider, Exponent p, Exponent r, int b,
                                       int k, SparseMode mode) {
  const int d = row_provider.dim();
  if (b < 1) throw PreconditionError("et_sparse_covering needs b >= 1");
  if (p > r) throw PreconditionError("et_sparse_covering requires p <= r");
  if (double(k) < std::max(std::log(double(b)), double(d)) || k > b * d)
    throw PreconditionError("et_sparse_covering requires max(log b, d) <= k <= bd");
  const double gamma = p.reciprocal() - r.reciprocal();
  const ExponentTuple params{p, row_provider.x_exp(), r, row_provider.y_exp()};

  CoveringCertificate cert;
  cert.params = params;
  cert.shape = {b, d};
  cert.budget = k;

  int s = 0;
  double inner_radius = 0.0;
  std::vector<std::vector<int>> inner_blocks;  // over s rows, indices into cert.row_sets
  if (mode == SparseMode::product) {
    cert.construction = "et_sparse";
    s = std::clamp(int(std::floor(k / (std::log(M_E * b / k) + d))), 1, b);
    if (binomial(b, s) > kMaxSparseBlocks) throw PreconditionError("et_sparse_covering: too many supports");
    const int m_row = std::max(1, 1 + int(std::floor((k - 1 - std::log2(binomial(b, s))) / s)));
    const RowSet set = row_provider.cover(m_row);
    cert.row_sets.push_back(set.centers);
    inner_radius = std::pow(double(s), r.reciprocal()) * set.radius;
    inner_blocks.push_back(std::vector<int>(s, 0));
    cert.metadata["row_budget"] = m_row;
  } else {
    cert.construction = "et_sparse_cuboid";
    if (k > b) throw PreconditionError("cuboid mode requires k <= b");
    const int s_max = std::min(b, int(std::floor(k / std::log(M_E * b / k))));
    CoveringCertificate inner;
    for (s = s_max; s >= 1; --s) {
      if (binomial(b, s) > kMaxSparseBlocks) continue;
      const int k_inner = k - int(std::ceil(std::log2(binomial(b, s))));
      if (k_inner >= 8 * s) {
        inner = cuboid_covering(row_provider, p, r, s, k_inner);
        cert.metadata["inner_budget"] = k_inner;
        break;
      }
    }
    if (s < 1) throw PreconditionError("cuboid mode: no support size admits an inner cuboid covering");
    cert.row_sets = inner.row_sets;
    inner_radius = inner.claimed_radius;
    inner_blocks = inner.blocks;
  }
  const int zero = int(cert.row_sets.size());
  cert.row_sets.push_back(RowMajorMatrix::Zero(1, d));

  const double tail = s < b ? std::pow(double(s), -gamma) : 0.0;
  cert.claimed_radius = lr_combine(inner_radius, tail, r);

  // all s-subsets of [b] in lexicographic order
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  for (;;) {
    for (const auto& ib : inner_blocks) {
      std::vector<int> blk(b, zero);
      for (int i = 0; i < s; ++i) blk[idx[i]] = ib[i];
      cert.blocks.push_back(std::move(blk));
    }
    int pos = s - 1;
    while (pos >= 0 && idx[pos] == b - s + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
  }
  cert.count = cert.recompute_count();
  cert.certified_index = index_for_count(cert.count);
  cert.metadata["s"] = s;
  cert.metadata["inner_radius"] = inner_radius;
  cert.metadata["tail_radius"] = tail;
  return cert;
}

KlssResult klss_bound(const std::vector<InnerEntropyProfile>& profiles, const std::vector<int>& budgets,
                      Exponent p, Exponent r) {
  const int b = int(profiles.size());
  if (b < 1 || int(budgets.size()) != b) throw PreconditionError("klss_bound needs one budget per profile");
  KlssResult res;
  LpAccumulator<double> acc(r);
  for (int j = 1; j <= b; ++j) {
    const int n = budgets[j - 1];
    if (n < 1) throw PreconditionError("klss_bound budgets must be positive");
    res.index += n;
    // j^{−1/p} e_{n_j}, combined in ℓ_r
    acc.add(std::pow(double(j), -p.reciprocal()) * profiles[j - 1].value(n));
  }
  res.index += int(std::ceil(b * std::log2(double(b)) - 1e-12));
  res.value = acc.result();
  return res;
}

std::vector<int> klss_budgets(int b, int k, double alpha) {
  const int overhead = int(std::ceil(b * std::log2(double(b)) - 1e-12));
  const int available = k - overhead;
  if (available < b) throw PreconditionError("klss_budgets: k too small for b unit budgets");
  auto make = [&](double c) {
    std::vector<int> n(b);
    for (int j = 1; j <= b; ++j) n[j - 1] = std::max(1, int(std::lround(c * std::pow(double(j), -alpha))));
    return n;
  };
  auto total = [](const std::vector<int>& n) {
    long long t = 0;
    for (int v : n) t += v;
    return t;
  };
  double lo = 0.0, hi = double(available) + 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (total(make(mid)) <= available) lo = mid;
    else hi = mid;
  }
  return make(lo);
}

}  // namespace mixent
