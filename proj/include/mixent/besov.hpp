#pragma once

#include "mixent/core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mixent {

/// Smoothness and integrability of s^{r0}_{p0,q0} → s^{r1}_{p1,q1} over an n-dimensional domain.
struct SmoothnessParams {
  double r0 = 0.0, r1 = 0.0;
  Exponent p0, p1, q0, q1;
  int n = 1;

  /// r0 − r1 − (1/p0 − 1/p1)
  [[nodiscard]] double delta() const { return r0 - r1 - (p0.reciprocal() - p1.reciprocal()); }
  [[nodiscard]] bool is_compact() const { return delta() > 0.0; }
  /// 1/p0 − 1/p1 < r0 − r1 ≤ 1/q0 − 1/q1
  [[nodiscard]] bool is_small_smoothness() const;
  [[nodiscard]] std::string str() const;
};

/// Level μ of the block model: b_μ = (μ+1)^{n−1} rows of length d_μ = 2^μ.
struct BlockModel {
  int n = 1;
  static constexpr long long kSaturation = 1LL << 62;

  /// Both saturate at 2^62.
  [[nodiscard]] long long rows(int mu) const;
  [[nodiscard]] long long cols(int mu) const;
  /// 2^{μ(r − 1/p)}
  [[nodiscard]] static double weight(int mu, double r, Exponent p);
  [[nodiscard]] std::vector<std::pair<long long, long long>> dims(int mu_lo, int mu_hi) const;
  /// Smallest μ₀ with d_μ ≥ b_μ for all μ ≥ μ₀.
  [[nodiscard]] int mu0() const;
};

/// 2^{−μ(r0−r1−1/p0+1/p1)}; throws HypothesisError for non-compact parameters.
double block_operator_norm(const SmoothnessParams& params, int mu);

enum class BesovFlavor { bb, bf, fb };

BesovFlavor parse_flavor(const std::string& text);
std::string flavor_name(BesovFlavor flavor);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PipelineResult {
  double value = 0.0;
  long long certified_index = 0;  // 2m
  double low_term = 0.0;          // levels 0..L_m
  double middle_term = 0.0;       // levels L_m+1..L_m+M_m
  double tail = 0.0;              // Σ ‖id_μ‖^ϱ over the remaining levels
  double rho = 1.0;
  int L = 0;
  long long M = 0;
  std::string route;
  std::vector<HypothesisCheck> log;
};

/// Hypotheses of the flavor that do not depend on m, in evaluation order.
std::vector<HypothesisCheck> check_hypotheses(const SmoothnessParams& params, BesovFlavor flavor);

/// Which factorization the flavor uses for these exponents.
std::string route_description(const SmoothnessParams& params, BesovFlavor flavor);

/// Upper bound for e_{2m}; throws HypothesisError at the first failed check.
PipelineResult besov_upper_pipeline(const SmoothnessParams& params, long long m, BesovFlavor flavor);

/// Smallest m from which the pipeline succeeds for every larger m (scanned up to 2^12; beyond that
/// m ≥ 8(⌊log2 m⌋+1) holds trivially).
long long besov_m0(const SmoothnessParams& params, BesovFlavor flavor);

/// Least-squares slope of log(value) against log(m).
double fit_rate_slope(const std::vector<std::pair<double, double>>& samples);

/// Pipeline on m = 2^{lo}, ..., 2^{hi}, then fitted.
double fit_rate_slope(const SmoothnessParams& params, BesovFlavor flavor, int log2_lo, int log2_hi);

}  // namespace mixent
