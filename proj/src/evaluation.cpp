#include "treerep/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace treerep {

namespace {

void require_same_size(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + " points");
  }
}

}  // namespace

double optimal_scale(const DistanceMatrix& learned, const DistanceMatrix& truth) {
  require_same_size(learned, truth);
  double cross = 0.0;
  double norm = 0.0;
  const auto l = learned.values();
  const auto t = truth.values();
  for (std::size_t k = 0; k < l.size(); ++k) {
    cross += l[k] * t[k];
    norm += l[k] * l[k];
  }
  if (!(norm > 0.0)) throw std::invalid_argument("learned metric is identically zero");
  return cross / norm;
}

double average_distortion(const DistanceMatrix& learned, const DistanceMatrix& truth,
                          Scaling scaling) {
  require_same_size(learned, truth);
  const std::size_t n = truth.size();
  if (n < 2) return 0.0;
  const double alpha = scaling == Scaling::optimal ? optimal_scale(learned, truth) : 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double t = truth(i, j);
      if (!(t > 0.0)) {
        throw std::invalid_argument("true distance between " + truth.label(j) + " and " +
                                    truth.label(i) + " is zero");
      }
      sum += std::abs(alpha * learned(i, j) - t) / t;
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double map_score(const Graph& g, const DistanceMatrix& d) {
  const std::size_t n = g.node_count();
  if (d.size() != n) {
    throw std::invalid_argument("metric has " + std::to_string(d.size()) + " points, graph has " +
                                std::to_string(n) + " nodes");
  }
  if (n == 0) return 0.0;
  std::vector<double> all;
  std::vector<double> near;
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto arcs = g.neighbors(v);
    if (arcs.empty()) throw std::invalid_argument("node '" + g.name(v) + "' is isolated");
    const auto dv = d.row(v);
    all.clear();
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v) all.push_back(dv[u]);
    }
    std::sort(all.begin(), all.end());
    near.clear();
    for (const auto& a : arcs) near.push_back(dv[a.node]);
    std::sort(near.begin(), near.end());

    double acc = 0.0;
    for (const auto& a : arcs) {
      const double radius = dv[a.node];
      const auto ball = std::upper_bound(all.begin(), all.end(), radius) - all.begin();
      const auto hits = std::upper_bound(near.begin(), near.end(), radius) - near.begin();
      acc += static_cast<double>(hits) / static_cast<double>(ball);
    }
    total += acc / static_cast<double>(arcs.size());
  }
  return total / static_cast<double>(n);
}

}  // namespace treerep
