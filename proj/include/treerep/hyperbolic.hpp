#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "treerep/distance_matrix.hpp"
#include "treerep/tree.hpp"

namespace treerep {

struct DiskPoint {
  double a = 0.0;
  double b = 0.0;
};

// Poincare-disk distance; throws std::domain_error if a point is not strictly
// inside the unit disk.
double poincare_distance(DiskPoint p, DiskPoint q);

// arcosh(p0 q0 - sum p_i q_i) on the upper hyperboloid sheet. Both points must
// satisfy x0 > 0 and x0^2 - sum x_i^2 = 1 (relative tolerance 1e-9).
double hyperboloid_distance(std::span<const double> p, std::span<const double> q);

// A node of minimum hop eccentricity (the smaller id if there are two).
std::size_t tree_center(const WeightedTree& t);

// Places t in the Poincare disk: the root at the origin, every other node at
// distance tau * weight from its parent. A node of degree k spreads its
// neighbours at angles 2 pi / k apart, the parent taking one of the slots.
// Returns one point per node id. Throws std::domain_error when tau is too
// large for points to stay inside the disk in double precision.
std::vector<DiskPoint> sarkar_embed(const WeightedTree& t, double tau,
                                    std::optional<std::size_t> root = std::nullopt);

// Pairwise Poincare distances between the data nodes, divided by tau.
DistanceMatrix embedding_metric(const WeightedTree& t, const std::vector<DiskPoint>& points,
                                double tau);

}  // namespace treerep
