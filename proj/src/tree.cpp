#include "treerep/tree.hpp"

#include <numeric>
#include <stdexcept>

namespace treerep {

WeightedTree::WeightedTree(std::size_t data_count)
    : data_count_(data_count), adjacency_(data_count) {}

std::size_t WeightedTree::add_steiner() {
  adjacency_.emplace_back();
  return adjacency_.size() - 1;
}

std::size_t WeightedTree::add_edge(std::size_t u, std::size_t v, double weight) {
  if (u >= node_count() || v >= node_count()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
  const std::size_t id = edges_.size();
  edges_.push_back({u, v, weight});
  adjacency_[u].push_back({v, id});
  adjacency_[v].push_back({u, id});
  return id;
}

std::vector<double> WeightedTree::weights() const {
  std::vector<double> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.weight);
  return w;
}

void WeightedTree::set_weights(std::span<const double> weights) {
  if (weights.size() != edges_.size()) {
    throw std::invalid_argument("weight vector has wrong length");
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) edges_[e].weight = weights[e];
}

bool WeightedTree::is_tree() const {
  const std::size_t n = node_count();
  if (n == 0) return edges_.empty();
  if (edges_.size() != n - 1) return false;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const auto& nb : adjacency_[u]) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        ++reached;
        stack.push_back(nb.node);
      }
    }
  }
  return reached == n;
}

void WeightedTree::validate() const {
  if (!is_tree()) {
    throw std::invalid_argument("structure with " + std::to_string(node_count()) +
                                " nodes and " + std::to_string(edge_count()) +
                                " edges is not a connected tree");
  }
}

std::string node_name(const WeightedTree& t, std::size_t node,
                      const std::vector<std::string>& labels) {
  if (t.is_steiner(node)) return "_s" + std::to_string(node - t.data_count() + 1);
  return labels.empty() ? std::to_string(node) : labels.at(node);
}

DistanceMatrix tree_metric(const WeightedTree& t, MetricScope scope) {
  t.validate();
  const std::size_t total = t.node_count();
  const std::size_t out_n = scope == MetricScope::data ? t.data_count() : total;
  DistanceMatrix out(out_n);
  std::vector<double> dist(total);
  std::vector<std::size_t> parent(total);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < out_n; ++s) {
    dist[s] = 0.0;
    parent[s] = s;
    stack.assign(1, s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const auto& nb : t.neighbors(u)) {
        if (nb.node == parent[u]) continue;
        parent[nb.node] = u;
        dist[nb.node] = dist[u] + t.edge(nb.edge).weight;
        stack.push_back(nb.node);
      }
    }
    for (std::size_t v = s + 1; v < out_n; ++v) out.set(s, v, dist[v]);
  }
  return out;
}

WeightedTree clamp_negative_weights(WeightedTree t) {
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    if (t.edge(e).weight < 0.0) t.set_weight(e, 0.0);
  }
  return t;
}

WeightedTree contract_zero_edges(const WeightedTree& t, double tol) {
  const std::size_t total = t.node_count();
  const std::size_t n = t.data_count();
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  // Per component root: the data node it contains, or `total` for none.
  std::vector<std::size_t> data_of(total, total);
  for (std::size_t i = 0; i < n; ++i) data_of[i] = i;

  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<char> contracted(t.edge_count(), 0);
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    const auto& edge = t.edge(e);
    if (edge.weight > tol) continue;
    if (!t.is_steiner(edge.u) && !t.is_steiner(edge.v)) continue;
    std::size_t a = find(edge.u);
    std::size_t b = find(edge.v);
    if (a == b) continue;
    if (data_of[a] != total && data_of[b] != total) continue;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    if (data_of[a] == total) data_of[a] = data_of[b];
    contracted[e] = 1;
  }

  // Representative of each component in the new tree.
  std::vector<std::size_t> new_id(total, total);
  WeightedTree out(n);
  for (std::size_t v = 0; v < total; ++v) {
    const std::size_t root = find(v);
    if (data_of[root] != total) {
      new_id[v] = data_of[root];
    } else if (new_id[root] == total) {
      new_id[root] = out.add_steiner();
      new_id[v] = new_id[root];
    } else {
      new_id[v] = new_id[root];
    }
  }
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    if (contracted[e]) continue;
    const auto& edge = t.edge(e);
    out.add_edge(new_id[edge.u], new_id[edge.v], edge.weight);
  }
  return out;
}

}  // namespace treerep
