#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treerep/distance_matrix.hpp"

namespace treerep {

enum class NodeKind : std::uint8_t { data, steiner };

struct TreeEdge {
  std::size_t u;
  std::size_t v;
  double weight;
};

// Weighted tree over data points plus auxiliary Steiner nodes.
//
// Node ids [0, data_count) are the data points in input order; Steiner nodes
// follow. Edges are kept in insertion order and the adjacency lists refer to
// them by index.
class WeightedTree {
 public:
  struct Neighbor {
    std::size_t node;
    std::size_t edge;
  };

  WeightedTree() = default;
  explicit WeightedTree(std::size_t data_count);

  std::size_t add_steiner();
  std::size_t add_edge(std::size_t u, std::size_t v, double weight);
  void set_weight(std::size_t edge, double weight) { edges_[edge].weight = weight; }

  std::size_t data_count() const noexcept { return data_count_; }
  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t steiner_count() const noexcept { return node_count() - data_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  NodeKind kind(std::size_t node) const noexcept {
    return node < data_count_ ? NodeKind::data : NodeKind::steiner;
  }
  bool is_steiner(std::size_t node) const noexcept { return node >= data_count_; }

  const std::vector<TreeEdge>& edges() const noexcept { return edges_; }
  const TreeEdge& edge(std::size_t e) const { return edges_[e]; }
  std::span<const Neighbor> neighbors(std::size_t node) const { return adjacency_[node]; }
  std::size_t degree(std::size_t node) const { return adjacency_[node].size(); }

  std::vector<double> weights() const;
  void set_weights(std::span<const double> weights);

  // True when connected and acyclic (the empty tree counts as valid).
  bool is_tree() const;
  // Throws std::invalid_argument if is_tree() is false.
  void validate() const;

 private:
  std::size_t data_count_ = 0;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Name of a node in edge-list output: the data label, or "_s<k>" for the
// k-th Steiner node (1-based).
std::string node_name(const WeightedTree& t, std::size_t node,
                      const std::vector<std::string>& labels);

enum class MetricScope { data, all };

// Path-length metric of the tree, restricted to data nodes or over all nodes.
// Throws std::invalid_argument if the tree is disconnected.
DistanceMatrix tree_metric(const WeightedTree& t, MetricScope scope = MetricScope::data);

// Sets negative edge weights to 0.
WeightedTree clamp_negative_weights(WeightedTree t);

// Contracts every edge of weight <= tol that has a Steiner endpoint, merging
// the Steiner node into its neighbour (a data neighbour always survives).
// Data-to-data edges are kept whatever their weight. Steiner ids are
// renumbered in their original order.
WeightedTree contract_zero_edges(const WeightedTree& t, double tol);

}  // namespace treerep
