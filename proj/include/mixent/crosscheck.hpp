#pragma once

#include "mixent/bound_curve.hpp"
#include "mixent/core.hpp"
#include "mixent/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mixent {

/// For each k ≤ kmax the largest sep/(2α) over verified packings with more than 2^{k−1} points;
/// 0 with regime "none" where nothing certifies.
BoundCurve best_packing_curve(const ExponentTuple& params, Shape shape, int kmax);

/// For each k ≤ kmax the smallest claimed radius over sample-verified coverings of index ≤ k.
BoundCurve best_covering_curve(const ExponentTuple& params, Shape shape, int kmax, std::size_t samples,
                               std::uint64_t seed);

struct CrosscheckOptions {
  std::size_t samples = 4000;
  std::uint64_t seed = 0x5eed;
  bool oracle = true;
  OracleOptions oracle_options{0, 60000, 20000};
};

struct CrosscheckRow {
  int k = 1;
  double formula = 0.0;  // NaN when the formula does not apply
  std::string regime;
  double scan = 0.0;  // NaN when the scan does not apply
  double covering_upper = 0.0;
  std::string covering;
  double packing_lower = 0.0;
  std::string packing;
  double oracle_lower = 0.0;  // NaN without an oracle run
  double oracle_upper = 0.0;
};

std::vector<CrosscheckRow> crosscheck(const ExponentTuple& params, Shape shape, int kmin, int kmax,
                                      const CrosscheckOptions& options = {});

/// Header and rows: the five estimates followed by their pairwise ratios (oracle as the geometric
/// mean of its bracket).
std::string crosscheck_csv(const std::vector<CrosscheckRow>& rows);

}  // namespace mixent
