#pragma once

#include "mixent/core.hpp"

#include <cstdint>
#include <vector>

namespace mixent {

/// Words of length 2s over [m] with pairwise Hamming distance ≥ s.
struct GVCode {
  int alphabet_size = 1;
  int length = 2;
  int min_distance = 1;
  std::vector<int> words;  // row-major, size() × length
  bool complete = true;    // false when the greedy scan stopped at a size limit

  [[nodiscard]] std::size_t size() const { return words.size() / static_cast<std::size_t>(length); }
  [[nodiscard]] const int* word(std::size_t i) const { return words.data() + i * length; }
  /// m^{2s} / Σ_{k<s} C(2s,k)(m−1)^k
  [[nodiscard]] double gv_fraction() const;
  /// Smallest pairwise distance, or length+1 for fewer than two words.
  [[nodiscard]] int verified_min_distance() const;
};

inline constexpr double kMaxGVSearchSpace = 1e7;

/// Lexicographic greedy code. With limit > 0 the scan stops after that many words and the
/// search-space cap is lifted; the result is then flagged incomplete.
GVCode build_gv_code(int m, int s, std::size_t limit = 0);

/// 2s-subsets of [n] (as bitmasks) with pairwise intersections of size < s.
struct SubsetFamily {
  int ground_size = 0;
  int s = 1;
  std::vector<std::uint64_t> sets;
  std::uint64_t seed = 0;
  bool randomized = false;

  [[nodiscard]] std::size_t size() const { return sets.size(); }
  /// ⌈(n/(8s))^s⌉
  [[nodiscard]] std::size_t target() const;
  [[nodiscard]] int verified_max_intersection() const;
  [[nodiscard]] std::vector<int> members(std::size_t i) const;
};

inline constexpr int kMaxSubsetGround = 64;
inline constexpr double kLexicographicSubsetLimit = 2e5;

/// Lexicographic greedy when C(n,2s) is small, otherwise seeded random candidates with restarts.
SubsetFamily build_subset_family(int n, int s, std::uint64_t seed = 0x5eed);

double binomial(int n, int k);

}  // namespace mixent
