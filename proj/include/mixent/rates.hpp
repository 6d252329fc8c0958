#pragma once

#include "mixent/core.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mixent {

/// Value of a ≍-formula with implied constants 1 and the case that produced it.
struct RegimeResult {
  double value = 0.0;
  std::string regime;
  bool boundary = false;  // several regimes applied; value is their max
  static constexpr const char* constants_convention = "implied-constant=1";
};

/// ℓ ↦ e_ℓ(id: X → Y), assumed nonincreasing.
struct InnerEntropyProfile {
  std::function<double(int)> value;
  int first = 1;
  int last = std::numeric_limits<int>::max();

  static InnerEntropyProfile constant(double c);
  static InnerEntropyProfile schuett(Exponent q, Exponent u, int d);
  static InnerEntropyProfile table(std::vector<double> values);  // values[ℓ−1]
};

/// e_k(id: ℓ_p^b → ℓ_q^b) up to constants.
RegimeResult schuett_rate(Exponent p, Exponent q, int k, int b);

/// max_{m ≤ ℓ ≤ k} (ℓ/k)^{1/p−1/r} e_ℓ
double edne_D(int m, int k, Exponent p, Exponent r, const InnerEntropyProfile& profile);

/// max{‖id‖ (log(eb/k)/k)^{1/p−1/r}, D(1,k)}
double edne_A(int k, int b, Exponent p, Exponent r, double op_norm, const InnerEntropyProfile& profile);

/// e_k(id: ℓ_p^b(ℓ_q^d) → ℓ_r^b(ℓ_u^d)) through the full case tree.
RegimeResult matching_rate(const ExponentTuple& params, int b, int d, int k);

/// A(k,b) for k ≤ b, D(⌈k/b⌉, k) beyond, with Schütt's rate as the inner profile.
double proof_scan_rate(const ExponentTuple& params, int b, int d, int k);
/// proof_scan_rate for k = 1..kmax in one pass.
std::vector<double> proof_scan_curve(const ExponentTuple& params, int b, int d, int kmax);

/// vol(B_{ℓ_p^b(X)})^{1/(bd)} from vol(B_X)^{1/d}.
double mixed_ball_volume_root(Exponent p, int b, int d, double vol_BX_root);

/// b^{−(1/p−1/r)} 2^{−(k−1)/(bd)}, for k ≥ bd.
double volumetric_entropy_bound(Exponent p, Exponent r, int b, int d, int k);

enum class WeightedRegime { large_k, small_k };

/// k^{−(α−β+1/q−1/u)} under the hypotheses of the chosen regime.
double weighted_block_rate(double alpha, double beta, const ExponentTuple& params,
                           const std::vector<std::pair<long long, long long>>& dims, long long k,
                           WeightedRegime regime);

/// Ratio of the two formulas meeting at a regime boundary.
struct BoundaryRatio {
  std::string name;
  double at = 0.0;
  double ratio = 1.0;
};

std::vector<BoundaryRatio> schuett_boundary_ratios(Exponent p, Exponent q, int b);
std::vector<BoundaryRatio> matching_boundary_ratios(const ExponentTuple& params, int b, int d);

}  // namespace mixent
