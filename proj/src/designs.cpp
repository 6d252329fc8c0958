#include "mixent/designs.hpp"

#include <bit>
#include <random>

namespace mixent {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double GVCode::gv_fraction() const {
  const int s = min_distance;
  double denom = 0.0;
  for (int k = 0; k < s; ++k) denom += binomial(length, k) * std::pow(alphabet_size - 1.0, k);
  return std::pow(double(alphabet_size), length) / denom;
}

namespace {

int hamming(const int* a, const int* b, int len) {
  int d = 0;
  for (int i = 0; i < len; ++i) d += a[i] != b[i];
  return d;
}

}  // namespace

int GVCode::verified_min_distance() const {
  int best = length + 1;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) best = std::min(best, hamming(word(i), word(j), length));
  return best;
}

GVCode build_gv_code(int m, int s, std::size_t limit) {
  if (m < 1 || s < 1) throw PreconditionError("build_gv_code: need m >= 1 and s >= 1");
  const int len = 2 * s;
  const double space = std::pow(double(m), len);
  if (limit == 0 && space > kMaxGVSearchSpace)
    throw PreconditionError("build_gv_code: m^{2s} = " + std::to_string(space) + " exceeds the enumeration cap");

  GVCode code{m, len, s, {}, true};
  std::vector<int> cand(len, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < code.size() && ok; ++i) ok = hamming(code.word(i), cand.data(), len) >= s;
    if (ok) {
      code.words.insert(code.words.end(), cand.begin(), cand.end());
      if (limit != 0 && code.size() >= limit) {
        code.complete = false;
        break;
      }
    }
    // odometer increment, last position fastest
    int pos = len - 1;
    while (pos >= 0 && ++cand[pos] == m) cand[pos--] = 0;
    if (pos < 0) break;
  }
  if (code.complete && code.verified_min_distance() < s) throw ConstructionError("GV code failed distance check");
  if (code.complete && double(code.size()) < code.gv_fraction() * (1 - 1e-12))
    throw ConstructionError("GV code below the Gilbert-Varshamov fraction");
  return code;
}

std::size_t SubsetFamily::target() const {
  return static_cast<std::size_t>(std::ceil(std::pow(double(ground_size) / (8.0 * s), s) - 1e-12));
}

int SubsetFamily::verified_max_intersection() const {
  int worst = 0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) worst = std::max(worst, std::popcount(sets[i] & sets[j]));
  return worst;
}

std::vector<int> SubsetFamily::members(std::size_t i) const {
  std::vector<int> out;
  for (std::uint64_t m = sets[i]; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

namespace {

bool compatible(const std::vector<std::uint64_t>& sets, std::uint64_t cand, int s) {
  for (auto set : sets)
    if (std::popcount(set & cand) >= s) return false;
  return true;
}

void lexicographic_family(int n, int s, SubsetFamily& fam) {
  const int size = 2 * s;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  for (;;) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= std::uint64_t(1) << i;
    if (compatible(fam.sets, mask, s)) fam.sets.push_back(mask);
    int pos = size - 1;
    while (pos >= 0 && idx[pos] == n - size + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
  }
}

std::uint64_t random_subset(int n, int size, std::mt19937_64& rng) {
  // Floyd's algorithm
  std::uint64_t mask = 0;
  for (int j = n - size; j < n; ++j) {
    std::uniform_int_distribution<int> pick(0, j);
    int t = pick(rng);
    std::uint64_t bit = std::uint64_t(1) << t;
    mask |= (mask & bit) ? (std::uint64_t(1) << j) : bit;
  }
  return mask;
}

}  // namespace

SubsetFamily build_subset_family(int n, int s, std::uint64_t seed) {
  if (s < 1 || 2 * s >= n) throw PreconditionError("build_subset_family: need 0 < s < n/2");
  if (n > kMaxSubsetGround)
    throw PreconditionError("build_subset_family: ground set larger than " + std::to_string(kMaxSubsetGround));
  SubsetFamily fam{n, s, {}, seed, false};
  const std::size_t target = std::max<std::size_t>(1, fam.target());

  if (binomial(n, 2 * s) <= kLexicographicSubsetLimit) {
    lexicographic_family(n, s, fam);
  } else {
    fam.randomized = true;
    const std::size_t budget = std::max<std::size_t>(2000, 50 * target);
    constexpr int kRestarts = 8;
    std::vector<std::uint64_t> best;
    for (int attempt = 0; attempt < kRestarts && best.size() < target; ++attempt) {
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
      std::vector<std::uint64_t> sets;
      for (std::size_t c = 0; c < budget; ++c) {
        const std::uint64_t mask = random_subset(n, 2 * s, rng);
        if (compatible(sets, mask, s)) sets.push_back(mask);
      }
      if (sets.size() > best.size()) best = std::move(sets);
    }
    fam.sets = std::move(best);
  }

  if (fam.sets.size() < target)
    throw ConstructionError("subset family of size " + std::to_string(fam.sets.size()) + " misses target " +
                            std::to_string(target));
  if (fam.verified_max_intersection() >= s) throw ConstructionError("subset family failed intersection check");
  return fam;
}

}  // namespace mixent
