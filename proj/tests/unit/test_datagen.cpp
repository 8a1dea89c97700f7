#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "treerep/datagen.hpp"
#include "treerep/gromov.hpp"
#include "treerep/hyperbolic.hpp"

using namespace treerep;

TEST_SUITE("datagen") {
  TEST_CASE("generated metrics are 0-hyperbolic") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto g = random_tree_metric(1 + seed % 3, seed);
      CHECK(g.tree.is_tree());
      CHECK(g.tree.steiner_count() == 0);
      CHECK(g.metric.size() == g.tree.node_count());
      CHECK(delta_hyperbolicity(g.metric, {DeltaMode::fixed_base, 0, 1}).delta <= 1e-9);
      if (g.metric.size() <= 30) CHECK(oracle::delta_exact(g.metric) <= 1e-9);
      for (const auto& e : g.tree.edges()) {
        CHECK(e.weight > 0.0);
        CHECK(e.weight <= 1.0);
      }
    }
  }

  TEST_CASE("node counts track the reference sizes") {
    const std::size_t reference[] = {11, 40, 89, 191, 362, 817, 1611};
    for (std::size_t depth = 1; depth <= 7; ++depth) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto n = random_tree_metric(depth, seed).tree.node_count();
        const double ratio = static_cast<double>(n) / static_cast<double>(reference[depth - 1]);
        CHECK(ratio > 1.0 / 3.0);
        CHECK(ratio < 3.0);
      }
    }
  }

  TEST_CASE("equal seeds give equal output") {
    const auto a = random_tree_metric(3, 7);
    const auto b = random_tree_metric(3, 7);
    CHECK(a.tree.node_count() == b.tree.node_count());
    CHECK(oracle::max_abs_diff(a.metric, b.metric) == 0.0);
    const auto c = random_tree_metric(3, 8);
    CHECK((c.tree.node_count() != a.tree.node_count() ||
           oracle::max_abs_diff(a.metric, c.metric) > 0.0));
    CHECK(oracle::max_abs_diff(sample_hyperboloid(20, 3, 2.0, 1), sample_hyperboloid(20, 3, 2.0, 1)) == 0.0);
  }

  TEST_CASE("identified roots give a smaller double tree") {
    double edge = 0.0, ident = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      edge += static_cast<double>(random_tree_metric(3, seed, RootJoin::edge).tree.node_count());
      ident += static_cast<double>(random_tree_metric(3, seed, RootJoin::identify).tree.node_count());
    }
    CHECK(ident < edge);
    CHECK(random_tree_metric(1, 0, RootJoin::identify).tree.node_count() <= 10);
  }

  TEST_CASE("hyperboloid samples") {
    const auto pts = hyperboloid_points(30, 4, 3.0, 9);
    for (const auto& p : pts) {
      double s = 0.0;
      for (std::size_t i = 1; i < p.size(); ++i) s += p[i] * p[i];
      CHECK(p[0] > 0.0);
      CHECK(std::abs(p[0] * p[0] - s - 1.0) <= 1e-9 * p[0] * p[0]);
      CHECK(hyperboloid_distance(p, p) == 0.0);
    }
    const auto d = sample_hyperboloid(30, 4, 3.0, 9);
    check_distance_matrix(d);
    CHECK_FALSE(find_triangle_violation(d, 1e-9));
    CHECK(d(3, 5) == hyperboloid_distance(pts[3], pts[5]));
  }

  TEST_CASE("small scale collapses the sample") {
    const auto d = sample_hyperboloid(10, 3, 1e-9, 4);
    CHECK(d.max_entry() < 1e-7);
  }

  TEST_CASE("bad arguments") {
    CHECK_THROWS_AS(random_tree_metric(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_hyperboloid(5, 0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_hyperboloid(5, 2, -1.0, 1), std::invalid_argument);
  }
}
