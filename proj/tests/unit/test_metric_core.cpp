#include <array>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "treerep/distance_matrix.hpp"
#include "treerep/graph.hpp"
#include "treerep/gromov.hpp"
#include "treerep/io.hpp"

using namespace treerep;

namespace {

DistanceMatrix line(const std::vector<double>& xs) {
  DistanceMatrix d(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) d.set(i, j, std::abs(xs[i] - xs[j]));
  return d;
}

DistanceMatrix constant(std::size_t n, double v) {
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) d.set(i, j, v);
  return d;
}

DistanceMatrix cycle4() {
  Graph g(4);
  for (std::size_t i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  return bfs_apsp(g);
}

}  // namespace

TEST_SUITE("metric-core") {
  TEST_CASE("gromov product of a point on the geodesic is zero") {
    const auto d = line({0.0, 2.0, 1.0});
    CHECK(gromov_product(d, 0, 1, 2) == 0.0);
  }

  TEST_CASE("gromov product on the equilateral triangle") {
    CHECK(gromov_product(constant(3, 2.0), 1, 2, 0) == doctest::Approx(1.0));
  }

  TEST_CASE("gromov product with x = y collapses to the distance") {
    const auto d = line({0.0, 3.5, 1.25});
    CHECK(gromov_product(d, 1, 1, 2) == doctest::Approx(d(2, 1)));
  }

  TEST_CASE("gromov product rejects bad indices") {
    CHECK_THROWS_AS(gromov_product(constant(3, 1.0), 0, 1, 3), std::out_of_range);
  }

  TEST_CASE("gromov product is symmetric and bounded on random metrics") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
      const auto d = gen::euclidean(7, 3, rng);
      for (std::size_t w = 0; w < 7; ++w)
        for (std::size_t x = 0; x < 7; ++x)
          for (std::size_t y = 0; y < 7; ++y) {
            const double g = gromov_product(d, x, y, w);
            CHECK(g == gromov_product(d, y, x, w));
            CHECK(g >= 0.0);
            CHECK(g <= std::min(d(w, x), d(w, y)) + 1e-12);
          }
    }
  }

  TEST_CASE("delta of tree metrics is zero") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
      const auto t = gen::minimal_tree(12, 0.5, rng);
      const auto d = tree_metric(t);
      CHECK(delta_hyperbolicity(d).delta <= 1e-9);
      CHECK(delta_hyperbolicity(d, {DeltaMode::fixed_base, 0, 1}).delta <= 1e-9);
    }
  }

  TEST_CASE("delta of the 4-cycle is 1") {
    const auto d = cycle4();
    CHECK(oracle::delta_exact(d) == doctest::Approx(1.0));
    CHECK(delta_hyperbolicity(d).delta == doctest::Approx(1.0));
  }

  TEST_CASE("fewer than four points is degenerate") {
    const auto r = delta_hyperbolicity(constant(3, 1.0));
    CHECK(r.degenerate);
    CHECK(r.delta == 0.0);
  }

  TEST_CASE("delta matches the quadruple enumeration") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 25; ++rep) {
      const std::size_t n = 4 + rep % 6;
      const auto d = rep % 2 ? gen::euclidean(n, 2, rng) : gen::graph_metric(n, rng);
      const double exact = delta_hyperbolicity(d).delta;
      CHECK(exact == doctest::Approx(oracle::delta_exact(d)).epsilon(1e-12));
      for (std::size_t w = 0; w < n; ++w) {
        const double fixed = delta_hyperbolicity(d, {DeltaMode::fixed_base, w, 1}).delta;
        CHECK(fixed == doctest::Approx(oracle::delta_fixed(d, w)).epsilon(1e-12));
        CHECK(fixed <= exact + 1e-12);
        CHECK(fixed >= exact / 2.0 - 1e-12);
      }
    }
  }

  TEST_CASE("threaded exact delta equals the serial value") {
    std::mt19937_64 rng(8);
    const auto d = gen::euclidean(30, 3, rng);
    CHECK(delta_hyperbolicity(d, {DeltaMode::exact, 0, 4}).delta ==
          delta_hyperbolicity(d, {DeltaMode::exact, 0, 1}).delta);
  }

  TEST_CASE("two smallest products differ by at most delta") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
      const auto d = gen::graph_metric(7, rng);
      const double delta = delta_hyperbolicity(d).delta;
      for (std::size_t w = 0; w < 7; ++w)
        for (std::size_t x = 0; x < 7; ++x)
          for (std::size_t y = 0; y < 7; ++y)
            for (std::size_t z = 0; z < 7; ++z) {
              std::array<double, 3> g{gromov_product(d, x, y, w), gromov_product(d, y, z, w),
                                      gromov_product(d, x, z, w)};
              std::sort(g.begin(), g.end());
              CHECK(g[1] - g[0] <= delta + 1e-12);
            }
    }
  }

  TEST_CASE("delta scales linearly") {
    std::mt19937_64 rng(4);
    const auto d = gen::euclidean(9, 2, rng);
    const double c = 3.5;
    CHECK(delta_hyperbolicity(d.scaled(c)).delta ==
          doctest::Approx(c * delta_hyperbolicity(d).delta));
    CHECK(delta_hyperbolicity(d.scaled(c), {DeltaMode::fixed_base, 2, 1}).delta ==
          doctest::Approx(c * delta_hyperbolicity(d, {DeltaMode::fixed_base, 2, 1}).delta));
  }

  TEST_CASE("normalize_max") {
    CHECK(normalize_max(constant(4, 2.0)).max_entry() == 1.0);
    CHECK(normalize_max(constant(4, 2.0))(1, 3) == 1.0);
    const auto unit = constant(3, 1.0);
    CHECK(oracle::max_abs_diff(normalize_max(unit), unit) == 0.0);
    const auto d = normalize_max(line({0.0, 1.0, 4.0}));
    CHECK(d(0, 1) == 0.25);
    CHECK(d(1, 2) == 0.75);
    CHECK(d(0, 2) == 1.0);
    CHECK_THROWS_AS(normalize_max(DistanceMatrix(3)), std::invalid_argument);
  }

  TEST_CASE("validation repairs tiny asymmetry and rejects large") {
    auto d = DistanceMatrix::from_rows({{0, 1, 2}, {1 + 1e-10, 0, 1}, {2, 1, 0}});
    CHECK(d(0, 1) == d(1, 0));
    CHECK_THROWS_AS(DistanceMatrix::from_rows({{0, 1}, {1.1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(DistanceMatrix::from_rows({{0, -1}, {-1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(DistanceMatrix::from_rows({{0.5, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(DistanceMatrix::from_rows({{0, 1}, {1}}), std::invalid_argument);
  }

  TEST_CASE("triangle violation is found") {
    const auto d = DistanceMatrix::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
    const auto v = find_triangle_violation(d);
    REQUIRE(v);
    CHECK(v->i == 0);
    CHECK(v->j == 2);
    CHECK(v->excess == doctest::Approx(3.0));
    CHECK_FALSE(find_triangle_violation(line({0, 1, 3})));
  }

  TEST_CASE("distance matrix csv round trip") {
    std::mt19937_64 rng(9);
    const auto d = gen::euclidean(6, 3, rng);
    std::stringstream s;
    write_distance_matrix(s, d);
    const auto back = read_distance_matrix(s);
    CHECK(oracle::max_abs_diff(d, back) == 0.0);
  }

  TEST_CASE("malformed csv reports the line") {
    std::stringstream s("0,1\n1,x\n");
    try {
      read_distance_matrix(s);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    std::stringstream ragged("0,1,2\n1,0\n2,1,0\n");
    CHECK_THROWS_AS(read_distance_matrix(ragged), ParseError);
  }
}
