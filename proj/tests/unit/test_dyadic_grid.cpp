#include "mixent/dyadic_grid.hpp"

#include <doctest.h>

#include <functional>
#include <random>
#include <set>

using namespace mixent;

TEST_CASE("upsilon0") {
  CHECK(upsilon0(0.3) == 1.0);
  CHECK(upsilon0(4.0) == 4.0);
  CHECK(upsilon0(5.0) == 8.0);
  CHECK(upsilon0(0.0) == 1.0);
}

TEST_CASE("upsilon examples") {
  auto comps = [](std::initializer_list<double> xs) {
    Eigen::VectorXd x(int(xs.size()));
    int i = 0;
    for (double v : xs) x(i++) = v;
    return upsilon(SimplexPoint(x)).components();
  };
  Eigen::VectorXd a = comps({0.3, 0.3});
  CHECK(a(0) == 0.5);
  CHECK(a(1) == 0.5);
  Eigen::VectorXd b = comps({0.8, 0.1});
  CHECK(b(0) == 1.0);
  CHECK(b(1) == 0.5);
  Eigen::VectorXd c = comps({0.9, 0, 0, 0});
  CHECK(c(0) == 1.0);
  CHECK(c(3) == 0.25);
  CHECK_THROWS_AS(SimplexPoint(Eigen::VectorXd::Constant(2, 0.7)), PreconditionError);
}

// Image of υ over a fine simplex mesh, as level vectors.
std::set<std::vector<int>> mesh_image(int b, int steps) {
  std::set<std::vector<int>> out;
  std::vector<int> counts(b, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == b - 1) {
      counts[i] = left;
      Eigen::VectorXd x(b);
      for (int j = 0; j < b; ++j) x(j) = double(counts[j]) / steps;
      out.insert(upsilon(SimplexPoint(x)).levels);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, steps);
  return out;
}

TEST_CASE("enumeration matches the simplex-mesh image for small b") {
  for (int b = 1; b <= 4; ++b) {
    const DyadicGrid grid = enumerate_grid(b);
    std::set<std::vector<int>> listed;
    for (std::size_t i = 0; i < grid.size(); ++i) listed.insert(grid.at(i).levels);
    // 2^−8-fine mesh plus points just above each breakpoint
    std::set<std::vector<int>> image = mesh_image(b, 256 * b);
    std::mt19937_64 rng(b);
    std::exponential_distribution<double> e;
    for (int t = 0; t < 20000; ++t) {
      Eigen::VectorXd x(b);
      for (int j = 0; j < b; ++j) x(j) = e(rng);
      x /= x.sum();
      image.insert(upsilon(SimplexPoint(x)).levels);
    }
    CHECK(image == listed);
  }
}

TEST_CASE("grid sizes and admissibility") {
  CHECK(enumerate_grid(1).size() == 1);
  const DyadicGrid g2 = enumerate_grid(2);
  CHECK(g2.size() == 3);
  for (int b = 1; b <= 10; ++b) {
    const DyadicGrid g = enumerate_grid(b);
    CHECK(double(g.size()) <= std::ldexp(1.0, 3 * b));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const GridVector v = g.at(i);
      CHECK(v.is_admissible());
      CHECK(v.l1_mass() < 3.0);
    }
  }
  CHECK_THROWS_AS(enumerate_grid(0), PreconditionError);
}

TEST_CASE("rationals") {
  const GridVector v{2, {1, 0}};
  CHECK(v.rationals() == std::vector<std::string>{"1/1", "1/2"});
}

TEST_CASE("transform grid") {
  const DyadicGrid g = enumerate_grid(2);
  const RowMajorMatrix one = transform_grid(g, Exponent(1.0));
  CHECK(one.rows() == 3);
  const RowMajorMatrix inf = transform_grid(g, Exponent::infinity());
  CHECK(inf.rows() == 1);
  CHECK(inf(0, 0) == 1.0);
  const RowMajorMatrix two = transform_grid(g, Exponent(2.0));
  bool found = false;
  for (Eigen::Index i = 0; i < two.rows(); ++i)
    found = found || (two(i, 0) == doctest::Approx(1.0) && two(i, 1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(found);
}
