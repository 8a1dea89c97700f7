#include "treerep/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "treerep/hyperbolic.hpp"

namespace treerep {

namespace {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

// Edges of the double binary tree; returns the node count.
std::size_t double_tree(std::size_t depth, RootJoin join, EdgeList& edges) {
  const std::size_t half = (std::size_t{1} << depth) - 1;
  const std::size_t offset = join == RootJoin::edge ? half : half - 1;
  auto second = [&](std::size_t v) { return v == 0 && join == RootJoin::identify ? 0 : v + offset; };
  for (std::size_t c = 1; c < half; ++c) edges.emplace_back((c - 1) / 2, c);
  for (std::size_t c = 1; c < half; ++c) edges.emplace_back(second((c - 1) / 2), second(c));
  if (join == RootJoin::edge) edges.emplace_back(0, half);
  return offset + half;
}

}  // namespace

GeneratedTree random_tree_metric(std::size_t depth, std::uint64_t seed, RootJoin join) {
  if (depth < 1 || depth > 24) throw std::invalid_argument("depth must be between 1 and 24");
  std::mt19937_64 rng(seed);

  EdgeList coarse;
  const std::size_t m = double_tree(depth, join, coarse);

  std::uniform_int_distribution<std::size_t> clique_size(2, 10);
  std::vector<std::size_t> first(m + 1, 0);
  for (std::size_t v = 0; v < m; ++v) first[v + 1] = first[v] + clique_size(rng);
  const std::size_t total = first[m];

  std::vector<std::vector<std::size_t>> adj(total);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t a = first[v]; a < first[v + 1]; ++a) {
      for (std::size_t b = a + 1; b < first[v + 1]; ++b) link(a, b);
    }
  }
  std::vector<std::size_t> turn(m, 0);
  auto member = [&](std::size_t v) {
    const std::size_t size = first[v + 1] - first[v];
    return first[v] + (turn[v]++ % size);
  };
  for (const auto& [u, v] : coarse) {
    const std::size_t a = member(u);
    const std::size_t b = member(v);
    link(a, b);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  const std::size_t start = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
  // weights on (0, 1]
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GeneratedTree out{WeightedTree(total), {}};
  std::vector<char> seen(total, 0);
  std::vector<std::size_t> queue{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (const std::size_t v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      out.tree.add_edge(u, v, 1.0 - unit(rng));
      queue.push_back(v);
    }
  }
  out.metric = tree_metric(out.tree);
  return out;
}

std::vector<std::vector<double>> hyperboloid_points(std::size_t n, std::size_t k, double scale,
                                                    std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("dimension must be at least 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("scale must be a positive number");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(k + 1));
  for (auto& p : pts) {
    double sq = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      p[i] = scale * normal(rng);
      sq += p[i] * p[i];
    }
    p[0] = std::sqrt(1.0 + sq);
  }
  return pts;
}

DistanceMatrix sample_hyperboloid(std::size_t n, std::size_t k, double scale, std::uint64_t seed) {
  const auto pts = hyperboloid_points(n, k, scale, seed);
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) d.set(i, j, hyperboloid_distance(pts[i], pts[j]));
  }
  return d;
}

}  // namespace treerep
