#include "mixent/crosscheck.hpp"
#include "mixent/serialization.hpp"

#include <doctest.h>

using namespace mixent;

namespace {
const Exponent kInfE = Exponent::infinity();
}

TEST_CASE("exponents round-trip through json") {
  CHECK(exponent_to_json(kInfE) == "inf");
  CHECK(exponent_from_json(Json("1/2")).value() == doctest::Approx(0.5));
  CHECK(exponent_from_json(Json(3)).value() == 3.0);
  CHECK_THROWS_AS(exponent_from_json(Json::array()), PreconditionError);
}

TEST_CASE("packing certificate round-trip") {
  const ExponentTuple t{Exponent(1.0), Exponent(1.0), kInfE, kInfE};
  const PackingCertificate a = two_level_sparse_packing(t, 8, 8, 1, 1, PackingOptions{32, 4});
  const PackingCertificate b = packing_from_json(Json::parse(to_json(a).dump()));
  CHECK(b.points == a.points);
  CHECK(b.claimed_separation == a.claimed_separation);
  CHECK(b.params.r.is_inf());
  CHECK(verify_packing(b).ok);

  Json broken = to_json(a);
  broken["points"][0].erase(0);
  CHECK_THROWS_AS(packing_from_json(broken), PreconditionError);
  CHECK_THROWS_AS(packing_from_json(Json{{"points", 1}}), PreconditionError);
}

TEST_CASE("covering certificate round-trip") {
  const LatticeProvider lp(Exponent(1.0), kInfE, 2);
  CoveringCertificate a = et_sparse_covering(lp, Exponent(1.0), kInfE, 8, 8);
  attach_evidence(a, 500, 2);
  const CoveringCertificate b = covering_from_json(Json::parse(to_json(a).dump()));
  CHECK(b.count == a.count);
  CHECK(b.recompute_count() == a.count);
  CHECK(b.blocks == a.blocks);
  CHECK(verify_covering(b, 500, 2).misses == 0);

  Json broken = to_json(a);
  broken["blocks"][0][0] = 100000;
  CHECK_THROWS_AS(covering_from_json(broken), PreconditionError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(csv_line({"a", "b"}) == "a,b\n");
}

TEST_CASE("crosscheck chain on a small instance") {
  const ExponentTuple t{Exponent(1.0), kInfE, kInfE, kInfE};
  const auto rows = crosscheck(t, {2, 1}, 1, 6);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.packing_lower <= r.oracle_lower + 1e-12);
    CHECK(r.oracle_lower <= r.oracle_upper + 1e-12);
    CHECK(r.oracle_upper <= r.covering_upper + 1e-12);
  }
  const std::string csv = crosscheck_csv(rows);
  CHECK(csv.find("formula/scan") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  // identical inputs give identical bytes
  CHECK(crosscheck_csv(crosscheck(t, {2, 1}, 1, 6)) == csv);
}

TEST_CASE("best curves are monotone") {
  const ExponentTuple t{Exponent(1.0), Exponent(1.0), Exponent(2.0), Exponent(2.0)};
  const BoundCurve pk = best_packing_curve(t, {2, 2}, 10);
  const BoundCurve cv = best_covering_curve(t, {2, 2}, 10, 500, 1);
  CHECK(pk.is_nonincreasing());
  CHECK(cv.is_nonincreasing());
  for (int k = 1; k <= 10; ++k) CHECK(*pk.value_at(k) <= *cv.value_at(k) + 1e-12);
}
