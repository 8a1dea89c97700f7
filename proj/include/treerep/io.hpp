#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "treerep/distance_matrix.hpp"
#include "treerep/graph.hpp"
#include "treerep/tree.hpp"

namespace treerep {

// Thrown for malformed input files; the message carries the line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Shortest decimal literal that reads back to exactly `value`.
std::string format_real(double value);

// Distance matrix: n lines of n comma-separated decimals, no header.
DistanceMatrix read_distance_matrix(std::istream& in);
DistanceMatrix read_distance_matrix(const std::filesystem::path& path);
void write_distance_matrix(std::ostream& out, const DistanceMatrix& d);

// Edge list: "u v" or "u v w" per line, '#' starts a comment. Node names are
// mapped to indices in first-seen order.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);

struct LoadedTree {
  WeightedTree tree;
  std::vector<std::string> labels;  // data node names, by data index
};

// Reads a tree edge list. Names beginning with "_s" are Steiner nodes.
// With `labels` given, data names are resolved against it and every label must
// occur; otherwise data nodes are numbered in first-seen order.
LoadedTree read_tree(std::istream& in, const std::vector<std::string>* labels = nullptr);
LoadedTree read_tree(const std::filesystem::path& path,
                     const std::vector<std::string>* labels = nullptr);
void write_tree(std::ostream& out, const WeightedTree& t, const std::vector<std::string>& labels);

}  // namespace treerep
