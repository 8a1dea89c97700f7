#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace treerep {

// Absolute tolerance used for symmetry, diagonal and triangle checks.
inline constexpr double kMetricTolerance = 1e-9;

// Dense symmetric n x n matrix of pairwise distances.
//
// Storage is row-major. Construction through from_rows() validates the
// diagonal and symmetry; the raw-value constructor only checks the shape so
// that algorithms can build intermediate matrices cheaply.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n);
  DistanceMatrix(std::size_t n, std::vector<double> values);

  // Validates and repairs: asymmetry or a nonzero diagonal within
  // kMetricTolerance is averaged away, anything larger throws.
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const;

  // Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * n_, n_};
  }
  std::span<const double> values() const noexcept { return values_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels);
  // Label of point i, or its decimal index when the matrix is unlabeled.
  std::string label(std::size_t i) const;

  double max_entry() const noexcept;

  DistanceMatrix scaled(double factor) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
  std::vector<std::string> labels_;
};

struct TriangleViolation {
  std::size_t i, j, k;
  double excess;  // d(i,j) - d(i,k) - d(k,j)
};

// First (i, j, k) in lexicographic order with d(i,j) > d(i,k) + d(k,j) + tol.
std::optional<TriangleViolation> find_triangle_violation(const DistanceMatrix& d,
                                                         double tol = kMetricTolerance);

// Throws std::invalid_argument naming the offending entry if d has a negative
// entry, a nonzero diagonal or an asymmetric pair beyond kMetricTolerance.
void check_distance_matrix(const DistanceMatrix& d);

// Divides every entry by the largest one.
DistanceMatrix normalize_max(const DistanceMatrix& d);

}  // namespace treerep
