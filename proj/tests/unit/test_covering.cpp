#include "mixent/covering.hpp"
#include "mixent/sampling.hpp"

#include <doctest.h>

using namespace mixent;

namespace {
const Exponent kInfE = Exponent::infinity();

// Nearest center by brute force over the materialised set.
double brute_distance(const CoveringCertificate& c, const RowMajorMatrix& centers, const double* x) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < centers.rows(); ++i)
    best = std::min(best, mixed_distance(x, centers.row(i).data(), c.shape.b, c.shape.d, c.params.r, c.params.u));
  return best;
}
}  // namespace

TEST_CASE("interval provider") {
  const IntervalProvider iv;
  const RowSet s = iv.cover(3);
  CHECK(s.size() == 4);
  CHECK(s.radius == doctest::Approx(0.25));
  for (double x = -1.0; x <= 1.0; x += 0.001) {
    double best = 1e9;
    for (std::size_t i = 0; i < s.size(); ++i) best = std::min(best, std::abs(x - s.centers(Eigen::Index(i), 0)));
    CHECK(best <= s.radius + 1e-12);
  }
}

TEST_CASE("lattice provider covers its ball") {
  const LatticeProvider lp(Exponent(1.0), kInfE, 2);
  for (int m : {1, 3, 6}) {
    const RowSet s = lp.cover(m);
    CHECK(double(s.size()) <= std::ldexp(1.0, m - 1));
    BallSampler sampler(Exponent(1.0), Exponent(1.0), {1, 2}, 5);
    double x[2];
    for (int t = 0; t < 3000; ++t) {
      sampler.draw(x, t % 2 ? SampleKind::boundary : SampleKind::interior);
      double best = 1e9;
      for (std::size_t i = 0; i < s.size(); ++i)
        best = std::min(best, std::max(std::abs(x[0] - s.centers(Eigen::Index(i), 0)),
                                       std::abs(x[1] - s.centers(Eigen::Index(i), 1))));
      CHECK(best <= s.radius + 1e-9);
    }
  }
  CHECK_THROWS_AS(LatticeProvider(kInfE, Exponent(1.0), 2), PreconditionError);
}

TEST_CASE("cuboid covering with an interval provider") {
  const IntervalProvider iv;
  CoveringCertificate cert = cuboid_covering(iv, Exponent(1.0), kInfE, 2, 16);
  CHECK(double(cert.count) <= std::ldexp(1.0, 16));
  CHECK(cert.recompute_count() == cert.count);
  const CoverageEvidence ev = verify_covering(cert, 20000, 3);
  CHECK(ev.misses == 0);
  CHECK(ev.max_distance <= cert.claimed_radius + 1e-9);

  // brute force on a few samples against the fully materialised set
  const RowMajorMatrix all = cert.materialize();
  BallSampler sampler(Exponent(1.0), Exponent(1.0), {2, 1}, 9);
  double x[2];
  for (int t = 0; t < 200; ++t) {
    sampler.draw(x, SampleKind::boundary);
    CHECK(brute_distance(cert, all, x) <= cert.claimed_radius + 1e-9);
  }
  CHECK_THROWS_AS(cuboid_covering(iv, Exponent(1.0), kInfE, 2, 8), PreconditionError);
  CHECK_THROWS_AS(cuboid_covering(iv, kInfE, Exponent(1.0), 2, 16), PreconditionError);
}

TEST_CASE("cuboid covering for p = r") {
  const IntervalProvider iv;
  const CoveringCertificate cert = cuboid_covering(iv, Exponent(2.0), Exponent(2.0), 2, 16);
  CHECK(verify_covering(cert, 5000, 1).misses == 0);
  const CoveringCertificate one = cuboid_covering(iv, Exponent(1.0), kInfE, 1, 10);
  CHECK(one.count == (1u << ((10 - 2) / 2 - 1)));
}

TEST_CASE("sparse covering") {
  const LatticeProvider lp(Exponent(1.0), kInfE, 2);
  CoveringCertificate cert = et_sparse_covering(lp, Exponent(1.0), kInfE, 8, 16);
  CHECK(cert.metadata.at("s") == 6);
  CHECK(verify_covering(cert, 20000, 4).misses == 0);
  const CoveringCertificate edge = et_sparse_covering(lp, Exponent(1.0), kInfE, 8, 3);
  CHECK(edge.metadata.at("s") >= 1);
  CHECK(verify_covering(edge, 5000, 4).misses == 0);
  // log 8 > 2
  CHECK_THROWS_AS(et_sparse_covering(lp, Exponent(1.0), kInfE, 8, 2), PreconditionError);
  const IntervalProvider iv;
  const CoveringCertificate cub = et_sparse_covering(iv, Exponent(1.0), kInfE, 16, 12, SparseMode::cuboid);
  CHECK(cub.certified_index <= 12);
  CHECK(verify_covering(cub, 5000, 4).misses == 0);
  // small k leaves no room for an inner cuboid
  CHECK_THROWS_AS(et_sparse_covering(iv, Exponent(1.0), kInfE, 16, 8, SparseMode::cuboid), PreconditionError);
}

TEST_CASE("evidence and tampering") {
  const ExponentTuple t{Exponent(1.0), Exponent(1.0), kInfE, kInfE};
  CoveringCertificate cert = trivial_covering(t, {2, 2});
  CHECK(cert.count == 1);
  attach_evidence(cert, 1000, 1);
  CHECK(cert.evidence.misses == 0);
  cert.claimed_radius *= 0.5;
  CHECK_THROWS_AS(attach_evidence(cert, 1000, 1), VerificationError);
}

TEST_CASE("klss bound") {
  std::vector<InnerEntropyProfile> ones(2, InnerEntropyProfile::constant(1.0));
  const KlssResult r = klss_bound(ones, {1, 1}, Exponent(1.0), Exponent(2.0));
  CHECK(r.index == 4);
  CHECK(r.value == doctest::Approx(std::sqrt(1.25)));
  const KlssResult single = klss_bound({InnerEntropyProfile::table({1.0, 0.5, 0.25})}, {3}, Exponent(1.0), kInfE);
  CHECK(single.index == 3);
  CHECK(single.value == doctest::Approx(0.25));

  const std::vector<int> n = klss_budgets(8, 64, 1.5);
  CHECK(n.size() == 8);
  for (std::size_t j = 1; j < n.size(); ++j) CHECK(n[j] <= n[j - 1]);
}

TEST_CASE("index for count") {
  CHECK(index_for_count(1) == 1);
  CHECK(index_for_count(2) == 2);
  CHECK(index_for_count(3) == 3);
  CHECK(index_for_count(4) == 3);
  CHECK(index_for_count(5) == 4);
}
