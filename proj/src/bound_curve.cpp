#include "mixent/bound_curve.hpp"

#include <cstdio>
#include <map>

namespace mixent {

BoundCurve::BoundCurve(std::vector<CurvePoint> points) {
  for (auto& pt : points) push(pt.k, pt.value, std::move(pt.regime));
}

void BoundCurve::push(int k, double value, std::string regime) {
  if (k < 1) throw PreconditionError("curve index must be positive");
  if (!points_.empty() && k <= points_.back().k)
    throw PreconditionError("curve indices must be strictly increasing");
  if (!(value >= 0.0)) throw PreconditionError("curve values must be nonnegative");
  points_.push_back({k, value, std::move(regime)});
}

std::optional<double> BoundCurve::value_at(int k) const {
  for (const auto& pt : points_)
    if (pt.k == k) return pt.value;
  return std::nullopt;
}

bool BoundCurve::is_nonincreasing(double tol) const {
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (points_[i].value > points_[i - 1].value * (1.0 + tol)) return false;
  return true;
}

std::string BoundCurve::to_csv() const {
  std::string out = "k,value,regime\n";
  char buf[64];
  for (const auto& pt : points_) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,", pt.k, pt.value);
    out += buf;
    out += pt.regime;
    out += '\n';
  }
  return out;
}

namespace {

template <typename Combine>
BoundCurve combine_over_splits(const BoundCurve& a, const BoundCurve& b, Combine combine, const char* tag) {
  struct Best {
    double value;
    int k1, k2;
  };
  std::map<int, Best> best;
  for (const auto& pa : a.points()) {
    for (const auto& pb : b.points()) {
      const int k = pa.k + pb.k - 1;
      const double v = combine(pa.value, pb.value);
      auto it = best.find(k);
      if (it == best.end() || v < it->second.value) best[k] = {v, pa.k, pb.k};
    }
  }
  BoundCurve out;
  for (const auto& [k, entry] : best)
    out.push(k, entry.value,
             std::string(tag) + "(k1=" + std::to_string(entry.k1) + ";k2=" + std::to_string(entry.k2) + ")");
  return out;
}

}  // namespace

BoundCurve sum_rule(const BoundCurve& curve1, const BoundCurve& curve2, Exponent vartheta) {
  if (vartheta.value() > 1.0) throw PreconditionError("sum_rule: vartheta must lie in (0, 1]");
  const double t = vartheta.value();
  return combine_over_splits(
      curve1, curve2,
      [t](double v1, double v2) {
        if (t == 1.0) return v1 + v2;
        return std::pow(std::pow(v1, t) + std::pow(v2, t), 1.0 / t);
      },
      "sum");
}

BoundCurve composition_rule(const BoundCurve& curveR, const BoundCurve& curveS) {
  return combine_over_splits(curveR, curveS, [](double vr, double vs) { return vr * vs; }, "comp");
}

BoundCurve compose_with_norm(const BoundCurve& curveR, double norm_S) {
  if (!(norm_S >= 0.0)) throw PreconditionError("operator norm must be nonnegative");
  BoundCurve out;
  for (const auto& pt : curveR.points()) out.push(pt.k, pt.value * norm_S, pt.regime);
  return out;
}

}  // namespace mixent
