#include "treerep/baselines.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace treerep {

WeightedTree neighbor_join(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) throw std::invalid_argument("neighbor joining needs at least 2 points");
  WeightedTree tree(n);
  if (n == 2) {
    tree.add_edge(0, 1, d(0, 1));
    return tree;
  }

  // Active clusters live in slots [0, r); `id` maps a slot to its tree node.
  std::vector<double> dist(d.values().begin(), d.values().end());
  auto at = [&](std::size_t a, std::size_t b) -> double& { return dist[a * n + b]; };
  std::vector<std::size_t> id(n);
  std::vector<double> sums(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    id[a] = a;
    for (std::size_t b = 0; b < n; ++b) sums[a] += at(a, b);
  }

  std::size_t r = n;
  while (r > 3) {
    const double scale = static_cast<double>(r - 2);
    std::size_t bi = 0;
    std::size_t bj = 1;
    double best = std::numeric_limits<double>::infinity();
    auto key = [&](std::size_t a, std::size_t b) {
      return std::minmax(id[a], id[b]);
    };
    for (std::size_t a = 0; a < r; ++a) {
      const double* row = &dist[a * n];
      for (std::size_t b = a + 1; b < r; ++b) {
        const double q = scale * row[b] - sums[a] - sums[b];
        if (q < best || (q == best && key(a, b) < key(bi, bj))) {
          best = q;
          bi = a;
          bj = b;
        }
      }
    }

    const double dij = at(bi, bj);
    const double li = 0.5 * dij + (sums[bi] - sums[bj]) / (2.0 * scale);
    const double lj = dij - li;
    const std::size_t joined = tree.add_steiner();
    tree.add_edge(id[bi], joined, li);
    tree.add_edge(id[bj], joined, lj);

    // The joined cluster takes slot bi; slot bj is filled from the last slot.
    double new_sum = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
      if (k == bi || k == bj) continue;
      const double duk = 0.5 * (at(bi, k) + at(bj, k) - dij);
      sums[k] += duk - at(bi, k) - at(bj, k);
      at(bi, k) = duk;
      at(k, bi) = duk;
      new_sum += duk;
    }
    at(bi, bi) = 0.0;
    sums[bi] = new_sum;
    id[bi] = joined;

    const std::size_t last = r - 1;
    if (bj != last) {
      for (std::size_t k = 0; k < r; ++k) {
        at(bj, k) = at(last, k);
        at(k, bj) = at(k, last);
      }
      at(bj, bj) = 0.0;
      sums[bj] = sums[last];
      id[bj] = id[last];
    }
    --r;
  }

  const double d01 = at(0, 1);
  const double d02 = at(0, 2);
  const double d12 = at(1, 2);
  const std::size_t center = tree.add_steiner();
  tree.add_edge(id[0], center, 0.5 * (d01 + d02 - d12));
  tree.add_edge(id[1], center, 0.5 * (d01 + d12 - d02));
  tree.add_edge(id[2], center, 0.5 * (d02 + d12 - d01));
  return clamp_negative_weights(std::move(tree));
}

WeightedTree mst_prim(const Graph& g) {
  const std::size_t n = g.node_count();
  WeightedTree tree(n);
  if (n == 0) return tree;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> key(n, kInf);
  std::vector<std::size_t> parent(n, kNone);
  std::vector<char> done(n, 0);
  using Entry = std::tuple<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  key[0] = 0.0;
  heap.emplace(0.0, 0);
  std::size_t reached = 0;
  while (!heap.empty()) {
    const auto [k, u] = heap.top();
    heap.pop();
    if (done[u] || k > key[u]) continue;
    done[u] = 1;
    ++reached;
    if (parent[u] != kNone) tree.add_edge(parent[u], u, key[u]);
    for (const auto& a : g.neighbors(u)) {
      if (!done[a.node] && a.weight < key[a.node]) {
        key[a.node] = a.weight;
        parent[a.node] = u;
        heap.emplace(a.weight, a.node);
      }
    }
  }
  if (reached != n) {
    throw std::invalid_argument("graph is disconnected: spanning tree reaches " +
                                std::to_string(reached) + " of " + std::to_string(n) + " nodes");
  }
  return tree;
}

WeightedTree mst_complete(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  WeightedTree tree(n);
  if (n == 0) return tree;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> key(n, kInf);
  std::vector<std::size_t> parent(n, 0);
  std::vector<char> done(n, 0);
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && (u == n || key[v] < key[u])) u = v;
    }
    done[u] = 1;
    if (step > 0) tree.add_edge(parent[u], u, key[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && d(u, v) < key[v]) {
        key[v] = d(u, v);
        parent[v] = u;
      }
    }
  }
  return tree;
}

}  // namespace treerep
