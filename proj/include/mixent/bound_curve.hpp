#pragma once

#include "mixent/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mixent {

struct CurvePoint {
  int k = 1;
  double value = 0.0;
  std::string regime;
};

/// k ↦ (value, regime) with strictly increasing k.
class BoundCurve {
 public:
  BoundCurve() = default;
  explicit BoundCurve(std::vector<CurvePoint> points);

  /// Appends a point; k must exceed the last stored index.
  void push(int k, double value, std::string regime = {});

  [[nodiscard]] const std::vector<CurvePoint>& points() const { return points_; }
  [[nodiscard]] bool empty() const { return points_.empty(); }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] std::optional<double> value_at(int k) const;
  [[nodiscard]] bool is_nonincreasing(double tol = 0.0) const;

  /// CSV with header "k,value,regime".
  [[nodiscard]] std::string to_csv() const;

 private:
  std::vector<CurvePoint> points_;
};

/// e_{k1+k2−1}(T1+T2)^ϑ ≤ e_{k1}(T1)^ϑ + e_{k2}(T2)^ϑ, minimised over splits.
BoundCurve sum_rule(const BoundCurve& curve1, const BoundCurve& curve2, Exponent vartheta);

/// e_{k1+k2−1}(R∘S) ≤ e_{k1}(R)·e_{k2}(S), minimised over splits.
BoundCurve composition_rule(const BoundCurve& curveR, const BoundCurve& curveS);

/// e_k(R∘S) ≤ e_k(R)·‖S‖.
BoundCurve compose_with_norm(const BoundCurve& curveR, double norm_S);

}  // namespace mixent
