#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "treerep/distance_matrix.hpp"
#include "treerep/tree.hpp"

namespace treerep {

// Which data pairs become rows: every pair, or k drawn without replacement.
struct PairSelection {
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;

  static PairSelection all() { return {}; }
  static PairSelection sample(std::size_t k, std::uint64_t seed) { return {k, seed}; }
};

// k used when the caller does not choose one: min(C(n,2), 20 * edges).
std::size_t default_sample_size(const WeightedTree& t);

// Path-incidence rows for a set of data pairs: row i lists the edges on the
// tree path between pairs[i].first and pairs[i].second (CSR layout).
class PathSystem {
 public:
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t row_count() const noexcept { return pairs_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept {
    return pairs_;
  }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {edges_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

 private:
  friend PathSystem build_path_system(const WeightedTree& t, const PairSelection& selection);
  std::size_t edge_count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> edges_;
};

// Throws std::invalid_argument if k exceeds the number of data pairs.
PathSystem build_path_system(const WeightedTree& t, const PairSelection& selection);

// ||A w - b|| over the rows of ps, b holding the target distances from d.
double path_residual(const PathSystem& ps, const DistanceMatrix& d, std::span<const double> w);

struct RefineResult {
  WeightedTree tree;
  double residual_before = 0.0;
  double residual_after = 0.0;
  // Some edge lies on no sampled path, or two edges lie on exactly the same
  // paths; the weights then move by the smallest correction that fits.
  bool rank_deficient = false;
  std::size_t iterations = 0;
  std::size_t clamped = 0;
};

// Least-squares edge weights for the fixed topology of t over the rows of ps,
// solved by conjugate gradients on the normal equations starting from the
// current weights. With nonneg, negative weights are clamped to 0, the rest
// re-solved once and clamped again. The residual never exceeds the input's
// (under nonneg, the input with its negative weights clamped).
RefineResult refine_weights(const WeightedTree& t, const DistanceMatrix& d, const PathSystem& ps,
                            bool nonneg = false);

}  // namespace treerep
