#include "treerep/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace treerep {

Graph::Graph(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_node(std::to_string(i));
}

std::size_t Graph::intern(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return add_node(name);
}

std::size_t Graph::add_node(std::string name) {
  const std::size_t id = names_.size();
  if (!index_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate node name '" + name + "'");
  }
  names_.push_back(std::move(name));
  adjacency_.emplace_back();
  return id;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  const auto& arcs = adjacency_[u];
  return std::any_of(arcs.begin(), arcs.end(), [v](const Arc& a) { return a.node == v; });
}

bool Graph::add_edge(std::size_t u, std::size_t v, double weight) {
  if (u >= node_count() || v >= node_count()) throw std::out_of_range("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop on node '" + names_[u] + "'");
  if (has_edge(u, v)) return false;
  adjacency_[u].push_back({v, weight});
  adjacency_[v].push_back({u, weight});
  ++edge_count_;
  return true;
}

std::vector<std::vector<std::size_t>> Graph::connected_components() const {
  const std::size_t n = node_count();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    auto& comp = components.emplace_back();
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const auto& a : adjacency_[u]) {
        if (!seen[a.node]) {
          seen[a.node] = 1;
          stack.push_back(a.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return components;
}

Graph Graph::largest_component() const {
  const auto components = connected_components();
  if (components.empty()) return {};
  const auto& best = *std::max_element(
      components.begin(), components.end(),
      [](const auto& a, const auto& b) { return a.size() < b.size(); });
  constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> remap(node_count(), kAbsent);
  Graph sub;
  for (std::size_t u : best) remap[u] = sub.add_node(names_[u]);
  for (std::size_t u : best) {
    for (const auto& a : adjacency_[u]) {
      if (u < a.node) sub.add_edge(remap[u], remap[a.node], a.weight);
    }
  }
  return sub;
}

DistanceMatrix bfs_apsp(const Graph& g) {
  const std::size_t n = g.node_count();
  const auto components = g.connected_components();
  if (components.size() > 1) {
    std::string sizes;
    for (const auto& c : components) {
      if (!sizes.empty()) sizes += ", ";
      sizes += std::to_string(c.size());
    }
    throw std::invalid_argument("graph is disconnected: " + std::to_string(components.size()) +
                                " components of sizes " + sizes);
  }
  DistanceMatrix out(n);
  std::vector<std::size_t> hops(n);
  std::vector<std::size_t> queue(n);
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(hops.begin(), hops.end(), kUnseen);
    hops[s] = 0;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const std::size_t u = queue[head++];
      for (const auto& a : g.neighbors(u)) {
        if (hops[a.node] == kUnseen) {
          hops[a.node] = hops[u] + 1;
          queue[tail++] = a.node;
        }
      }
    }
    for (std::size_t v = s + 1; v < n; ++v) out.set(s, v, static_cast<double>(hops[v]));
  }
  out.set_labels(g.names());
  return out;
}

}  // namespace treerep
