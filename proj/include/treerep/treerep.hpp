#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "treerep/distance_matrix.hpp"
#include "treerep/graph.hpp"
#include "treerep/tree.hpp"

namespace treerep {

// Distances over data points plus the Steiner nodes created while building a
// tree. Data-to-data lookups go straight to the input matrix; every Steiner
// node owns a row holding its distance to all nodes created before it. At most
// one Steiner node is created per placed data point, so the store never
// exceeds 2n nodes.
class ExtendedDistances {
 public:
  explicit ExtendedDistances(const DistanceMatrix& base);

  std::size_t data_count() const noexcept { return n_; }
  std::size_t node_count() const noexcept { return n_ + steiner_; }
  std::size_t capacity() const noexcept { return capacity_; }

  // Appends a Steiner node and returns its id.
  std::size_t add_node();

  double operator()(std::size_t a, std::size_t b) const noexcept {
    if (a < n_ && b < n_) return base_(a, b);
    if (a == b) return 0.0;
    if (a < b) std::swap(a, b);
    return rows_[(a - n_) * capacity_ + b];
  }

  // At least one of a, b must be a Steiner node.
  void set(std::size_t a, std::size_t b, double value) noexcept {
    if (a < b) std::swap(a, b);
    rows_[(a - n_) * capacity_ + b] = value;
  }

 private:
  const DistanceMatrix& base_;
  std::size_t n_;
  std::size_t capacity_;
  std::size_t steiner_ = 0;
  std::vector<double> rows_;
};

// Four-node gadget realizing the metric on x, y, z through Steiner node r.
struct UniversalTriple {
  std::size_t x, y, z, r;
  double wx, wy, wz;
  // Vertex (x, y or z) whose edge to r has |weight| <= tol; r coincides with
  // it and is merged into it when zero edges are contracted.
  std::optional<std::size_t> merged_into;
};

// Edge weights (y,z)_x, (x,z)_y, (x,y)_z; weights within tol of 0 snap to 0.
// `r` is recorded as given and not touched in `dist`.
UniversalTriple universal_tree(const ExtendedDistances& dist, std::size_t x, std::size_t y,
                               std::size_t z, std::size_t r, double tol);

enum class Zone : std::uint8_t { one_r, one_x, one_y, one_z, two_x, two_y, two_z };

struct ZoneAssignment {
  Zone zone;
  // Distance assigned to d(w, r): the largest Gromov product based at w, or
  // 0 when w replaces r.
  double steiner_distance;
  // Zone1(r) with all three products within tol of 0: w sits on r itself.
  bool replaces_steiner;
  // Second-largest minus smallest Gromov product based at w.
  double local_error;
};

// Sorts w into one of the seven zones of `triple`.
ZoneAssignment classify_zone(const ExtendedDistances& dist, const UniversalTriple& triple,
                             std::size_t w, double tol);

struct TreeRepOptions {
  std::uint64_t seed = 0;
  double tol = 0.1;
  unsigned threads = 1;
  // Zone lists shorter than this are classified on the calling thread.
  std::size_t parallel_min_batch = 256;
  bool record_trace = false;
};

struct ClassificationRecord {
  std::size_t w;
  Zone zone;
  double steiner_distance;
  double local_error;
};

struct StepTrace {
  UniversalTriple triple;
  std::vector<ClassificationRecord> placed;
};

struct TreeRepResult {
  WeightedTree tree;      // final tree: negatives clamped, zero edges contracted
  WeightedTree raw_tree;  // before clamping and contraction; ids match `trace`
  std::vector<StepTrace> trace;  // filled when record_trace is set
  std::size_t steiner_created = 0;
  std::size_t negative_edges = 0;
};

// Learns a tree whose path metric approximates d; exact when d is a tree metric.
TreeRepResult treerep_run(const DistanceMatrix& d, const TreeRepOptions& options = {});
WeightedTree treerep(const DistanceMatrix& d, const TreeRepOptions& options = {});

enum class SelectCriterion { avg_distortion, map };

struct BestOfOptions {
  TreeRepOptions base;
  std::size_t runs = 1;
  SelectCriterion criterion = SelectCriterion::avg_distortion;
  bool optimal_scale = false;
  // One seed per run; when empty, run i uses base.seed + i.
  std::vector<std::uint64_t> seeds;
};

struct BestOfResult {
  WeightedTree tree;
  std::size_t best_run = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> scores;
};

// Runs treerep once per seed and keeps the best tree: lowest distortion, or
// highest MAP against `graph` (required for the MAP criterion).
BestOfResult treerep_best(const DistanceMatrix& d, const BestOfOptions& options,
                          const Graph* graph = nullptr);

}  // namespace treerep
