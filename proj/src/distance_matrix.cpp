#include "treerep/distance_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treerep {

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != n * n) {
    throw std::invalid_argument("distance matrix needs " + std::to_string(n * n) +
                                " values, got " + std::to_string(values_.size()));
  }
}

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  DistanceMatrix d(n, std::move(values));
  check_distance_matrix(d);
  for (std::size_t i = 0; i < n; ++i) {
    d.values_[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mean = 0.5 * (d.values_[i * n + j] + d.values_[j * n + i]);
      d.values_[i * n + j] = mean;
      d.values_[j * n + i] = mean;
    }
  }
  return d;
}

double DistanceMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw std::out_of_range("index " + pair_name(i, j) + " out of range for " +
                            std::to_string(n_) + " points");
  }
  return values_[i * n_ + j];
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  values_[i * n_ + j] = value;
  values_[j * n_ + i] = value;
}

void DistanceMatrix::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n_) {
    throw std::invalid_argument("expected " + std::to_string(n_) + " labels, got " +
                                std::to_string(labels.size()));
  }
  labels_ = std::move(labels);
}

std::string DistanceMatrix::label(std::size_t i) const {
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

double DistanceMatrix::max_entry() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
  DistanceMatrix out = *this;
  for (double& v : out.values_) v *= factor;
  return out;
}

std::optional<TriangleViolation> find_triangle_violation(const DistanceMatrix& d, double tol) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double excess = d(i, j) - d(i, k) - d(k, j);
        if (excess > tol) return TriangleViolation{i, j, k, excess};
      }
    }
  }
  return std::nullopt;
}

void check_distance_matrix(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(d(i, i)) || std::abs(d(i, i)) > kMetricTolerance) {
      throw std::invalid_argument("nonzero diagonal entry at " + pair_name(i, i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = d(i, j);
      const double b = d(j, i);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("non-finite distance at " + pair_name(i, j));
      }
      if (a < 0.0 || b < 0.0) {
        throw std::invalid_argument("negative distance at " + pair_name(i, j));
      }
      if (std::abs(a - b) > kMetricTolerance) {
        throw std::invalid_argument("asymmetric distances at " + pair_name(i, j));
      }
    }
  }
}

DistanceMatrix normalize_max(const DistanceMatrix& d) {
  const double m = d.max_entry();
  if (!(m > 0.0)) {
    throw std::invalid_argument("cannot normalize an all-zero distance matrix");
  }
  // Divide rather than multiply by 1/m so the largest entry becomes exactly 1.
  std::vector<double> values(d.values().begin(), d.values().end());
  for (double& v : values) v /= m;
  DistanceMatrix out(d.size(), std::move(values));
  out.set_labels(d.labels());
  return out;
}

}  // namespace treerep
