#include "mixent/oracle.hpp"
#include "mixent/rates.hpp"

#include <doctest.h>

using namespace mixent;

namespace {
const Exponent kInfE = Exponent::infinity();
}

TEST_CASE("one-dimensional packing and covering are exact") {
  const DiscretizedBall ball = discretize_ball(kInfE, kInfE, {1, 1}, 100);
  CHECK(ball.size() == 201);
  CHECK(greedy_packing(ball, 1.0, kInfE, kInfE).indices.size() == 2);
  CHECK(greedy_packing(ball, 0.5, kInfE, kInfE).indices.size() == 4);
  CHECK(greedy_packing(ball, 5.0, kInfE, kInfE).indices.size() == 1);
  CHECK(greedy_covering(ball, 1.0, kInfE, kInfE).size() == 1);
  CHECK(greedy_covering(ball, 0.5, kInfE, kInfE).size() == 2);
}

TEST_CASE("greedy outputs are separated and covering") {
  const DiscretizedBall ball = discretize_ball(Exponent(1.0), Exponent(1.0), {2, 1}, 12);
  for (double eps : {0.3, 0.5}) {
    const PackingResult pk = greedy_packing(ball, eps, kInfE, kInfE);
    for (std::size_t a = 0; a < pk.indices.size(); ++a)
      for (std::size_t b = a + 1; b < pk.indices.size(); ++b) {
        const auto x = ball.point(pk.indices[a]), y = ball.point(pk.indices[b]);
        CHECK(std::max(std::abs(x[0] - y[0]), std::abs(x[1] - y[1])) > eps);
      }
    const auto cov = greedy_covering(ball, eps, kInfE, kInfE);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      double best = 1e9;
      const auto x = ball.point(i);
      for (std::size_t c : cov) {
        const auto y = ball.point(c);
        best = std::min(best, std::max(std::abs(x[0] - y[0]), std::abs(x[1] - y[1])));
      }
      CHECK(best <= eps + 1e-12);
    }
  }
  CHECK_THROWS_AS(greedy_packing(ball, 0.05, kInfE, kInfE), PreconditionError);
}

TEST_CASE("sandwich on the l1 ball in the max metric") {
  const DiscretizedBall ball = discretize_ball(Exponent(1.0), Exponent(1.0), {2, 1}, 20);
  const SandwichCounts s = oracle_sandwich(ball, 0.5, kInfE, kInfE);
  CHECK(s.holds());
  CHECK(sandwich_check(long(s.packing_2eps), long(s.covering_eps), long(s.packing_eps)));
}

TEST_CASE("mesh policy") {
  CHECK(count_mesh_points(Exponent(1.0), Exponent(1.0), {2, 1}, 2, 1000) == 13);
  const int n = finest_mesh(kInfE, kInfE, {1, 2}, 1000);
  CHECK((2 * n + 1) * (2 * n + 1) <= 1000);
  CHECK((2 * n + 3) * (2 * n + 3) > 1000);
  CHECK(mesh_for_eps(kInfE, kInfE, {1, 1}, 0.5, 1000) == 20);
}

TEST_CASE("farthest point order") {
  const DiscretizedBall ball = discretize_ball(kInfE, kInfE, {1, 1}, 8);
  const FarthestPointOrder fpf = farthest_point_order(ball, kInfE, kInfE, 5);
  CHECK(fpf.order.front() == 8);  // the origin, in the middle of −8..8
  CHECK(fpf.covering_radius(1) == doctest::Approx(1.0));
  for (std::size_t j = 2; j < fpf.insertion_distance.size(); ++j)
    CHECK(fpf.insertion_distance[j] <= fpf.insertion_distance[j - 1] + 1e-12);
}

TEST_CASE("entropy bracket properties") {
  const ExponentTuple t{Exponent(1.0), Exponent(1.0), kInfE, kInfE};
  const EntropyBracket br = empirical_entropy_curve(t, {2, 1}, 8, OracleOptions{0, 20000, 5000});
  CHECK(br.lower.is_nonincreasing());
  CHECK(br.upper.is_nonincreasing());
  for (int k = 1; k <= 8; ++k) CHECK(*br.lower.value_at(k) <= *br.upper.value_at(k) + 1e-12);
  CHECK(*br.upper.value_at(1) == doctest::Approx(1.0));

  // the ℓ1 → ℓ∞ value at k = 2 lies inside the bracket up to a factor 8
  const double formula = schuett_rate(Exponent(1.0), kInfE, 2, 2).value;
  CHECK(*br.upper.value_at(2) <= 8 * formula);
  CHECK(*br.lower.value_at(2) >= formula / 8);
}

TEST_CASE("oracle rejects large shapes") {
  const ExponentTuple t{Exponent(1.0), Exponent(1.0), kInfE, kInfE};
  CHECK_THROWS_AS(empirical_entropy_curve(t, {7, 1}, 4), PreconditionError);
}
