#pragma once

#include <cstddef>

#include "treerep/distance_matrix.hpp"

namespace treerep {

// (x, y)_w = (d(w,x) + d(w,y) - d(x,y)) / 2. Rounding noise below
// kMetricTolerance is clamped to 0. Throws std::out_of_range on bad indices.
double gromov_product(const DistanceMatrix& d, std::size_t x, std::size_t y, std::size_t w);

enum class DeltaMode { exact, fixed_base };

struct DeltaQuery {
  DeltaMode mode = DeltaMode::exact;
  std::size_t base = 0;  // only used by fixed_base
  unsigned threads = 1;
};

struct DeltaResult {
  double delta = 0.0;
  bool degenerate = false;  // fewer than four points
};

// Smallest delta such that (x,y)_w >= min((x,z)_w, (y,z)_w) - delta.
//
// exact maximizes the four-point defect over every base point, O(n^4).
// fixed_base maximizes over the single base point query.base, O(n^3); the
// exact value is at most twice the fixed-base value.
DeltaResult delta_hyperbolicity(const DistanceMatrix& d, const DeltaQuery& query = {});

}  // namespace treerep
