#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "treerep/distance_matrix.hpp"

namespace treerep {

// Undirected graph with named nodes and optional edge weights (default 1).
class Graph {
 public:
  struct Arc {
    std::size_t node;
    double weight;
  };

  Graph() = default;
  explicit Graph(std::size_t n);

  // Returns the index of `name`, adding it if unseen.
  std::size_t intern(const std::string& name);
  std::size_t add_node(std::string name);

  // Self-loops throw; a repeated edge keeps its first weight and returns false.
  bool add_edge(std::size_t u, std::size_t v, double weight = 1.0);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::span<const Arc> neighbors(std::size_t u) const { return adjacency_[u]; }
  std::size_t degree(std::size_t u) const { return adjacency_[u].size(); }
  bool has_edge(std::size_t u, std::size_t v) const;

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t u) const { return names_[u]; }

  // Components as sorted node lists, ordered by their smallest node.
  std::vector<std::vector<std::size_t>> connected_components() const;

  // Subgraph induced by the largest component (ties: the one found first),
  // nodes kept in their original relative order.
  Graph largest_component() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<Arc>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Hop-count all-pairs shortest paths; labels are the node names.
// Throws std::invalid_argument listing component sizes if disconnected.
DistanceMatrix bfs_apsp(const Graph& g);

}  // namespace treerep
