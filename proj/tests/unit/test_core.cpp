#include "mixent/bound_curve.hpp"
#include "mixent/core.hpp"

#include <doctest.h>

#include <random>

using namespace mixent;

TEST_CASE("exponent parsing") {
  CHECK(Exponent::parse("inf").is_inf());
  CHECK(Exponent::parse("1/2").value() == doctest::Approx(0.5));
  CHECK(Exponent::parse(" 2 ").value() == 2.0);
  CHECK_THROWS_AS(Exponent::parse("abc"), PreconditionError);
  CHECK_THROWS_AS(Exponent::parse("1/0"), PreconditionError);
  CHECK_THROWS_AS(Exponent(-1.0), PreconditionError);
  CHECK(Exponent::parse(Exponent(0.25).str()) == Exponent(0.25));
}

TEST_CASE("mixed norm hand values") {
  MixedMatrix x = MixedMatrix::Ones(2, 2);
  CHECK(mixed_norm(MixedMatrix::Zero(3, 2), Exponent(1.0), Exponent(2.0)) == 0.0);
  CHECK(mixed_norm(x, Exponent(1.0), Exponent(2.0)) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(mixed_norm(x, Exponent::infinity(), Exponent::infinity()) == 1.0);

  // brute force against the definition, general exponents
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  MixedMatrix y(3, 4);
  for (int i = 0; i < y.size(); ++i) y(i) = g(rng);
  const double p = 0.7, q = 3.0;
  double outer = 0.0;
  for (int i = 0; i < 3; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 4; ++j) inner += std::pow(std::abs(y(i, j)), q);
    outer += std::pow(std::pow(inner, 1.0 / q), p);
  }
  CHECK(mixed_norm(y, Exponent(p), Exponent(q)) == doctest::Approx(std::pow(outer, 1.0 / p)).epsilon(1e-12));
  CHECK(mixed_distance(y.data(), y.data(), 3, 4, Exponent(p), Exponent(q)) == 0.0);
}

TEST_CASE("quasi-norm constant") {
  CHECK(quasi_norm_constant(Exponent(2.0)).alpha == 1.0);
  CHECK(quasi_norm_constant(Exponent(1.0)).alpha == 1.0);
  CHECK(quasi_norm_constant(Exponent(0.5)).alpha == doctest::Approx(2.0));
  CHECK(mixed_quasi_norm_constant(Exponent(2.0), Exponent(0.5)).alpha == doctest::Approx(2.0));

  // ‖x+y‖_{1/2} ≤ 2(‖x‖+‖y‖) on random pairs
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  const Exponent half(0.5);
  for (int t = 0; t < 2000; ++t) {
    Eigen::VectorXd x(5), y(5);
    for (int i = 0; i < 5; ++i) x(i) = U(rng), y(i) = U(rng);
    CHECK(lp_norm(Eigen::VectorXd(x + y), half) <= 2.0 * (lp_norm(x, half) + lp_norm(y, half)) * (1 + 1e-12));
  }
}

TEST_CASE("identity norm attained at a vertex") {
  // ‖id‖ is attained by a flat or a unit matrix; check both candidates directly
  const Exponent e[] = {Exponent(0.5), Exponent(1.0), Exponent(2.0), Exponent::infinity()};
  for (Exponent p : e)
    for (Exponent q : e)
      for (Exponent r : e)
        for (Exponent u : e) {
          const ExponentTuple t{p, q, r, u};
          const int b = 3, d = 4;
          double best = 0.0;
          for (bool all_rows : {false, true})
            for (bool all_cols : {false, true}) {
              MixedMatrix x = MixedMatrix::Zero(b, d);
              x.topLeftCorner(all_rows ? b : 1, all_cols ? d : 1).setOnes();
              best = std::max(best, mixed_norm(x, r, u) / mixed_norm(x, p, q));
            }
          CHECK(identity_norm(t, {b, d}) == doctest::Approx(best));
        }
}

TEST_CASE("sandwich check") {
  CHECK(sandwich_check(2, 3, 5));
  CHECK_FALSE(sandwich_check(4, 3, 5));
  CHECK_THROWS_AS(sandwich_check(-1, 3, 5), PreconditionError);
}

namespace {
BoundCurve scalar_curve(int kmax) {
  BoundCurve c;
  for (int k = 1; k <= kmax; ++k) c.push(k, std::ldexp(1.0, -(k - 1)));
  return c;
}
}  // namespace

TEST_CASE("sum rule on scalar curves") {
  const BoundCurve c = scalar_curve(10);
  const BoundCurve s = sum_rule(c, c, Exponent(1.0));
  // value at 2k−1 is 2·2^{−(k−1)}
  for (int k = 1; k <= 10; ++k) CHECK(*s.value_at(2 * k - 1) == doctest::Approx(std::ldexp(1.0, -(k - 2))));
  // bounds the exact e_j(2·id_ℝ) = 2·2^{−(j−1)} from above
  for (const auto& pt : s.points()) CHECK(pt.value >= std::ldexp(2.0, -(pt.k - 1)) - 1e-15);

  BoundCurve zero;
  for (int k = 1; k <= 10; ++k) zero.push(k, 0.0);
  const BoundCurve z = sum_rule(c, zero, Exponent(1.0));
  for (int k = 1; k <= 10; ++k) CHECK(*z.value_at(k) == doctest::Approx(*c.value_at(k)));
}

TEST_CASE("composition rule") {
  const BoundCurve c = scalar_curve(8);
  const BoundCurve comp = composition_rule(c, c);
  for (int k1 = 1; k1 <= 8; ++k1)
    for (int k2 = 1; k2 <= 8; ++k2) CHECK(*comp.value_at(k1 + k2 - 1) <= std::ldexp(1.0, -(k1 + k2 - 2)) + 1e-15);

  BoundCurve ones;
  for (int k = 1; k <= 8; ++k) ones.push(k, 1.0);
  const BoundCurve same = composition_rule(ones, c);
  for (int k = 1; k <= 8; ++k) CHECK(*same.value_at(k) == doctest::Approx(*c.value_at(k)));

  const BoundCurve scaled = compose_with_norm(c, 3.0);
  CHECK(*scaled.value_at(4) == doctest::Approx(3.0 / 8));
}

TEST_CASE("bound curve bookkeeping") {
  BoundCurve c;
  c.push(1, 1.0, "a");
  c.push(3, 0.5, "b");
  CHECK_THROWS_AS(c.push(2, 0.4), PreconditionError);
  CHECK(c.is_nonincreasing());
  CHECK_FALSE(c.value_at(2).has_value());
  CHECK(c.to_csv().rfind("k,value,regime\n", 0) == 0);
}
