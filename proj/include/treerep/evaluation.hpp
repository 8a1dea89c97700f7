#pragma once

#include "treerep/distance_matrix.hpp"
#include "treerep/graph.hpp"

namespace treerep {

enum class Scaling { none, optimal };

// Argmin over c of ||truth - c * learned||_F.
double optimal_scale(const DistanceMatrix& learned, const DistanceMatrix& truth);

// Mean over unordered pairs of |l - t| / t, where l is the learned distance
// (multiplied by optimal_scale() when requested) and t the true distance.
// Zero for fewer than two points. Throws std::invalid_argument naming the pair
// when a true off-diagonal distance is zero.
double average_distortion(const DistanceMatrix& learned, const DistanceMatrix& truth,
                          Scaling scaling = Scaling::none);

// Mean average precision of d against the neighbourhoods of g. For node v and
// neighbour u, the ball B = {w != v : d(w,v) <= d(v,u)} scores |N(v) & B| / |B|;
// scores are averaged over neighbours, then over nodes.
double map_score(const Graph& g, const DistanceMatrix& d);

}  // namespace treerep
