#include "mixent/packing.hpp"

#include <doctest.h>

using namespace mixent;

namespace {

const Exponent kInfE = Exponent::infinity();

// Independent O(M²) recomputation of the minimum distance and maximum source norm.
std::pair<double, double> brute_stats(const PackingCertificate& c) {
  const int b = c.shape.b, d = c.shape.d;
  double dmin = std::numeric_limits<double>::infinity(), nmax = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double* x = c.points.row(Eigen::Index(i)).data();
    double outer = 0.0;
    LpAccumulator<double> acc(c.params.p);
    for (int r = 0; r < b; ++r) {
      LpAccumulator<double> in(c.params.q);
      for (int s = 0; s < d; ++s) in.add(std::abs(x[r * d + s]));
      acc.add(in.result());
    }
    outer = acc.result();
    nmax = std::max(nmax, outer);
    for (std::size_t j = i + 1; j < c.size(); ++j)
      dmin = std::min(dmin, mixed_distance(x, c.points.row(Eigen::Index(j)).data(), b, d, c.params.r, c.params.u));
  }
  return {dmin, nmax};
}

BasePacking signs(Exponent x, Exponent y) {
  BasePacking base;
  base.points = RowMajorMatrix(2, 1);
  base.points << -1.0, 1.0;
  base.separation = 2.0;
  base.min_norm = 1.0;
  base.x_exp = x;
  base.y_exp = y;
  return base;
}

}  // namespace

TEST_CASE("block sparse packing over signs") {
  const auto cert = block_sparse_packing(signs(Exponent(1.0), Exponent(1.0)), Exponent(1.0), Exponent(1.0), 8, 1,
                                         QuasiNormConstant{1.0});
  CHECK(cert.size() >= 4);
  const auto [dmin, nmax] = brute_stats(cert);
  CHECK(dmin >= 1.0 - 1e-12);
  CHECK(dmin >= cert.claimed_separation * (1 - 1e-9));
  CHECK(nmax <= 1.0 + 1e-12);
  CHECK(verify_packing(cert).ok);
  CHECK_THROWS_AS(block_sparse_packing(signs(Exponent(1.0), Exponent(1.0)), Exponent(1.0), Exponent(1.0), 4, 1,
                                       QuasiNormConstant{1.0}),
                  PreconditionError);
}

TEST_CASE("two-level sparse packing re-verifies from raw points") {
  const ExponentTuple t{Exponent(1.0), Exponent(1.0), kInfE, kInfE};
  const auto cert = two_level_sparse_packing(t, 8, 8, 1, 1);
  const auto [dmin, nmax] = brute_stats(cert);
  CHECK(dmin >= cert.claimed_separation * (1 - 1e-9));
  CHECK(nmax <= 1.0 + 1e-12);
  CHECK(cert.size() >= cert.advertised_count);

  CHECK_THROWS_AS(two_level_sparse_packing(t, 8, 8, 1, 1, PackingOptions{cert.advertised_count - 1, 1}),
                  PreconditionError);
  CHECK_THROWS_AS(two_level_sparse_packing(t, 8, 8, 2, 1), PreconditionError);
}

TEST_CASE("two-level sparse packing under quasi-norms") {
  const ExponentTuple t{Exponent(0.5), Exponent(2.0), Exponent(1.0), Exponent(0.5)};
  const auto cert = two_level_sparse_packing(t, 16, 8, 2, 1, PackingOptions{128, 3});
  const auto [dmin, nmax] = brute_stats(cert);
  CHECK(dmin >= cert.claimed_separation * (1 - 1e-9));
  CHECK(nmax <= 1.0 + 1e-9);
}

TEST_CASE("row replication packing") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
  e1(0) = 1.0;
  const ExponentTuple t{Exponent(1.0), kInfE, kInfE, kInfE};
  const auto small = row_replication_packing(e1, t, 8, 1);
  CHECK(small.size() >= 1);
  CHECK(verify_packing(small).ok);
  const auto wide = row_replication_packing(e1, t, 64, 2);
  CHECK(wide.size() >= 16);
  const auto [dmin, nmax] = brute_stats(wide);
  CHECK(dmin >= wide.claimed_separation * (1 - 1e-9));
  CHECK_THROWS_AS(row_replication_packing(Eigen::VectorXd::Zero(3), t, 8, 1), PreconditionError);
}

TEST_CASE("simple packings") {
  const ExponentTuple t{Exponent(1.0), kInfE, kInfE, kInfE};
  const auto anti = antipodal_packing(t, {2, 2});
  CHECK(anti.size() == 2);
  CHECK(anti.claimed_separation == doctest::Approx(2.0 * identity_norm(t, {2, 2})));
  CHECK(verify_packing(anti).ok);
  const auto units = signed_unit_packing(t, {2, 2});
  CHECK(units.size() == 8);
  CHECK(verify_packing(units).ok);
  const auto cube = cube_lattice_packing(t, {2, 2}, 3);
  CHECK(cube.size() == 81);
  const auto [dmin, nmax] = brute_stats(cube);
  CHECK(dmin == doctest::Approx(cube.claimed_separation));
  CHECK(nmax <= 1.0 + 1e-12);
}

TEST_CASE("verification rejects a perturbed certificate") {
  const ExponentTuple t{Exponent(1.0), Exponent(1.0), kInfE, kInfE};
  auto cert = two_level_sparse_packing(t, 8, 8, 1, 1, PackingOptions{16, 1});
  cert.points.row(1) = cert.points.row(0);
  const PackingReport rep = verify_packing(cert);
  CHECK_FALSE(rep.ok);
  CHECK(rep.worst_i == 0);
  CHECK(rep.worst_j == 1);

  auto outside = antipodal_packing(t, {2, 2});
  outside.points *= 2.0;
  CHECK_FALSE(verify_packing(outside).ok);
}

TEST_CASE("packing to entropy lower bound index arithmetic") {
  PackingCertificate c;
  c.params = {Exponent(1.0), Exponent(1.0), Exponent(1.0), Exponent(1.0)};
  c.shape = {1, 1};
  c.claimed_separation = 1.0;
  c.points = RowMajorMatrix(4, 1);
  const BoundCurve four = packing_to_entropy_lower(c);
  REQUIRE(four.size() == 1);
  CHECK(four.points()[0].k == 2);
  CHECK(four.points()[0].value == doctest::Approx(0.5));

  c.points = RowMajorMatrix(1, 1);
  CHECK(packing_to_entropy_lower(c).empty());

  c.points = RowMajorMatrix(1025, 1);
  c.claimed_separation = 0.2;
  const BoundCurve many = packing_to_entropy_lower(c);
  CHECK(many.points()[0].k == 11);
  CHECK(many.points()[0].value == doctest::Approx(0.1));
}
