#include "mixent/rates.hpp"

#include <doctest.h>

using namespace mixent;

namespace {
const Exponent kInfE = Exponent::infinity();
}

TEST_CASE("schuett examples") {
  const RegimeResult r2 = schuett_rate(Exponent(1.0), kInfE, 8, 8);
  CHECK(r2.value == doctest::Approx(std::log(2.0) / 8));
  CHECK(r2.regime == "regime2");
  const RegimeResult r3 = schuett_rate(Exponent(1.0), Exponent(2.0), 9, 4);
  CHECK(r3.value == doctest::Approx(0.125));
  CHECK(r3.regime == "regime3");
  for (int k = 1; k <= 20; ++k) {
    const double v = schuett_rate(Exponent(2.0), Exponent(2.0), k, 5).value;
    CHECK(v == doctest::Approx(k <= 5 ? 1.0 : std::exp2(-(k - 1.0) / 5)));
  }
  CHECK_THROWS_AS(schuett_rate(kInfE, Exponent(1.0), 3, 3), PreconditionError);
}

TEST_CASE("schuett regime 2 is scale-free in (k, b)") {
  for (int c : {2, 3, 5}) {
    const double a = schuett_rate(Exponent(1.0), kInfE, 6, 16).value;
    const double b = schuett_rate(Exponent(1.0), kInfE, 6 * c, 16 * c).value;
    // (log(1+b/k)/k)^g: only the 1/k factor scales
    CHECK(b == doctest::Approx(a / c));
  }
}

TEST_CASE("abstract D and A") {
  const auto ones = InnerEntropyProfile::constant(1.0);
  CHECK(edne_D(1, 10, Exponent(1.0), kInfE, ones) == doctest::Approx(1.0));
  const auto table = InnerEntropyProfile::table({1.0, 0.6, 0.5, 0.3, 0.2});
  CHECK(edne_D(2, 5, Exponent(2.0), Exponent(2.0), table) == doctest::Approx(0.6));
  CHECK(edne_A(4, 8, Exponent(2.0), Exponent(2.0), 1.0, ones) == doctest::Approx(1.0));
  const double first = edne_A(6, 6, Exponent(1.0), Exponent(2.0), 1.0, InnerEntropyProfile::constant(0.0));
  CHECK(first == doctest::Approx(std::pow(6.0, -0.5)));

  // exhaustive scan of max_l (l/k)^g e_l for a Schütt inner profile
  const auto prof = InnerEntropyProfile::schuett(Exponent(1.0), kInfE, 16);
  double best = 0.0;
  for (int l = 1; l <= 8; ++l) best = std::max(best, std::pow(l / 8.0, 0.5) * schuett_rate(Exponent(1.0), kInfE, l, 16).value);
  CHECK(edne_D(1, 8, Exponent(1.0), Exponent(2.0), prof) == doctest::Approx(best));
}

TEST_CASE("matching rate examples") {
  const ExponentTuple ib{Exponent(1.0), Exponent(2.0), kInfE, kInfE};
  CHECK(matching_rate(ib, 4, 16, 32).value == doctest::Approx(0.125));
  const ExponentTuple ii{Exponent(2.0), Exponent(1.0), Exponent(2.0), kInfE};
  CHECK(matching_rate(ii, 4, 16, 32).value == doctest::Approx(4 * std::log(2 * M_E) / 32).epsilon(1e-4));
  const ExponentTuple flat{Exponent(2.0), Exponent(2.0), Exponent(2.0), Exponent(2.0)};
  for (int k = 1; k <= 40; ++k)
    CHECK(matching_rate(flat, 4, 4, k).value == doctest::Approx(k <= 16 ? 1.0 : std::exp2(-(k - 1.0) / 16)));
}

TEST_CASE("matching rate tracks the scan") {
  const Exponent e[] = {Exponent(0.5), Exponent(1.0), Exponent(2.0), kInfE};
  for (Exponent p : e)
    for (Exponent q : e)
      for (Exponent r : e)
        for (Exponent u : e) {
          const ExponentTuple t{p, q, r, u};
          if (!t.is_embedding_monotone()) continue;
          const std::vector<double> scan = proof_scan_curve(t, 8, 4, 40);
          for (int k = 1; k <= 40; ++k) {
            const double v = matching_rate(t, 8, 4, k).value;
            if (k >= 5 && k <= 32) {
              CHECK(v / scan[k - 1] <= 16.0);
              CHECK(v / scan[k - 1] >= 1.0 / 16);
            }
            CHECK(scan[k - 1] == doctest::Approx(proof_scan_rate(t, 8, 4, k)));
          }
        }
}

TEST_CASE("boundary ratios stay bounded") {
  const ExponentTuple t{Exponent(0.5), Exponent(1.0), kInfE, kInfE};
  for (const auto& br : matching_boundary_ratios(t, 16, 16)) {
    CHECK(br.ratio <= 8.0);
    CHECK(br.ratio >= 1.0 / 8);
  }
  for (const auto& br : schuett_boundary_ratios(Exponent(1.0), kInfE, 64)) CHECK(br.ratio == doctest::Approx(1.0).epsilon(1.0));
}

TEST_CASE("volumes") {
  CHECK(mixed_ball_volume_root(Exponent(2.0), 2, 1, 2.0) == doctest::Approx(std::sqrt(M_PI)));
  CHECK(mixed_ball_volume_root(Exponent(1.0), 2, 1, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(mixed_ball_volume_root(kInfE, 5, 3, 1.7) == 1.7);
  // ℓ2^3 ball: 4π/3
  CHECK(mixed_ball_volume_root(Exponent(2.0), 3, 1, 2.0) == doctest::Approx(std::cbrt(4 * M_PI / 3)));
}

TEST_CASE("volumetric bound") {
  CHECK(volumetric_entropy_bound(Exponent(1.0), kInfE, 2, 3, 7) == doctest::Approx(0.5 * std::exp2(-1.0)));
  CHECK(volumetric_entropy_bound(Exponent(2.0), Exponent(2.0), 2, 3, 13) == doctest::Approx(std::exp2(-2.0)));
  CHECK_THROWS_AS(volumetric_entropy_bound(Exponent(1.0), kInfE, 2, 3, 5), PreconditionError);
}

TEST_CASE("weighted block rate") {
  const ExponentTuple t{Exponent(0.5), Exponent(1.0), kInfE, kInfE};
  const std::vector<std::pair<long long, long long>> one = {{4, 16}};
  CHECK(weighted_block_rate(0.4, 0.0, t, one, 256, WeightedRegime::large_k) == doctest::Approx(std::pow(256.0, -1.4)));
  const std::vector<std::pair<long long, long long>> four(4, {1, 8});
  CHECK_THROWS_AS(weighted_block_rate(0.4, 0.0, t, four, 16, WeightedRegime::large_k), HypothesisError);
  const ExponentTuple same{Exponent(0.5), Exponent(1.0), kInfE, Exponent(1.0)};
  CHECK(weighted_block_rate(0.3, 0.3, same, one, 64, WeightedRegime::large_k) == doctest::Approx(1.0));
  // small_k needs k within the inner dimensions and α > β
  const std::vector<std::pair<long long, long long>> wide = {{1, 1024}};
  CHECK(weighted_block_rate(0.4, 0.0, t, wide, 64, WeightedRegime::small_k) > 0.0);
  CHECK_THROWS_AS(weighted_block_rate(0.0, 0.0, t, wide, 64, WeightedRegime::small_k), HypothesisError);
}
