#include "mixent/designs.hpp"

#include <doctest.h>

#include <set>

using namespace mixent;

TEST_CASE("gv code examples") {
  const GVCode c22 = build_gv_code(2, 1);
  CHECK(c22.size() == 4);
  const GVCode c32 = build_gv_code(3, 2);
  CHECK(c32.size() >= 9);
  CHECK(c32.verified_min_distance() >= 2);
  CHECK(build_gv_code(1, 3).size() == 1);
}

TEST_CASE("gv code meets the fraction and the distance") {
  for (int m = 2; m <= 5; ++m)
    for (int s = 1; s <= 3; ++s) {
      const GVCode c = build_gv_code(m, s);
      CHECK(double(c.size()) >= c.gv_fraction() - 1e-9);
      // exhaustive pairwise distance, independent of the library's helper
      int best = c.length + 1;
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          int h = 0;
          for (int x = 0; x < c.length; ++x) h += c.word(i)[x] != c.word(j)[x];
          best = std::min(best, h);
        }
      if (c.size() > 1) CHECK(best >= s);
    }
  CHECK(build_gv_code(10, 4, 5).complete == false);
  CHECK_THROWS_AS(build_gv_code(0, 1), PreconditionError);
}

TEST_CASE("subset family examples") {
  const SubsetFamily f3 = build_subset_family(3, 1);
  CHECK(f3.size() >= 1);
  const SubsetFamily f16 = build_subset_family(16, 1);
  CHECK(f16.size() == 8);
  CHECK(f16.verified_max_intersection() == 0);
  const SubsetFamily f64 = build_subset_family(64, 2);
  CHECK(f64.size() >= 16);
  for (std::size_t i = 0; i < f64.size(); ++i) CHECK(f64.members(i).size() == 4);
  CHECK(f64.verified_max_intersection() <= 1);
  CHECK_THROWS_AS(build_subset_family(65, 1), PreconditionError);
}

TEST_CASE("subset families are deterministic in the seed") {
  const SubsetFamily a = build_subset_family(60, 4, 9);
  const SubsetFamily b = build_subset_family(60, 4, 9);
  CHECK(a.sets == b.sets);
  CHECK(a.size() >= a.target());
  CHECK(a.verified_max_intersection() < 4);
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(64, 8) == doctest::Approx(4426165368.0));
  CHECK(binomial(3, 5) == 0.0);
}
