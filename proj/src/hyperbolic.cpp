#include "treerep/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace treerep {

namespace {

using Complex = std::complex<double>;

// 1 - |z|^2 without squaring a number close to 1.
double conformal_gap(Complex z) {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

bool inside(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z) < 1.0; }

// arcosh(1 + x) for x >= 0.
double arcosh1p(double x) { return std::log1p(x + std::sqrt(x * (x + 2.0))); }

// Disk isometry sending c to the origin, and its inverse.
Complex to_origin(Complex z, Complex c) { return (z - c) / (1.0 - std::conj(c) * z); }
Complex from_origin(Complex z, Complex c) { return (z + c) / (1.0 + std::conj(c) * z); }

}  // namespace

double poincare_distance(DiskPoint p, DiskPoint q) {
  const Complex zp(p.a, p.b);
  const Complex zq(q.a, q.b);
  if (!inside(zp) || !inside(zq)) {
    throw std::domain_error("point is not strictly inside the unit disk");
  }
  const double num = 2.0 * std::norm(zp - zq);
  if (num == 0.0) return 0.0;
  return arcosh1p(num / (conformal_gap(zp) * conformal_gap(zq)));
}

double hyperboloid_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("hyperboloid points must have the same nonzero dimension");
  }
  auto check = [](std::span<const double> x) {
    double spatial = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) spatial += x[i] * x[i];
    const double form = x[0] * x[0] - spatial;
    if (!(x[0] > 0.0) || std::abs(form - 1.0) > 1e-9 * std::max(1.0, x[0] * x[0])) {
      throw std::invalid_argument("point is not on the upper hyperboloid sheet");
    }
  };
  check(p);
  check(q);
  double inner = p[0] * q[0];
  for (std::size_t i = 1; i < p.size(); ++i) inner -= p[i] * q[i];
  if (inner > 2.0) return std::acosh(inner);
  // near 1: chord form
  double chord = -(p[0] - q[0]) * (p[0] - q[0]);
  for (std::size_t i = 1; i < p.size(); ++i) chord += (p[i] - q[i]) * (p[i] - q[i]);
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, chord)));
}

std::size_t tree_center(const WeightedTree& t) {
  const std::size_t m = t.node_count();
  if (m == 0) throw std::invalid_argument("empty tree has no center");
  t.validate();
  std::vector<std::size_t> degree(m);
  std::vector<std::size_t> layer;
  for (std::size_t v = 0; v < m; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = m;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (const std::size_t leaf : layer) {
      for (const auto& nb : t.neighbors(leaf)) {
        if (--degree[nb.node] == 1) next.push_back(nb.node);
      }
    }
    layer = std::move(next);
  }
  std::size_t best = layer.front();
  for (const std::size_t v : layer) best = std::min(best, v);
  return best;
}

std::vector<DiskPoint> sarkar_embed(const WeightedTree& t, double tau,
                                    std::optional<std::size_t> root) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be a positive number");
  }
  const std::size_t m = t.node_count();
  if (m == 0) return {};
  t.validate();
  const std::size_t start = root.value_or(tree_center(t));
  if (start >= m) throw std::out_of_range("root " + std::to_string(start) + " is not a node");

  auto fail = [&](std::size_t node) {
    throw std::domain_error("tau = " + std::to_string(tau) + " pushes node " +
                            std::to_string(node) +
                            " onto the disk boundary in double precision; use a smaller tau");
  };

  std::vector<Complex> z(m);
  std::vector<std::size_t> parent(m, m);
  std::vector<std::size_t> queue{start};
  parent[start] = start;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    const auto nbs = t.neighbors(u);
    const double slot = kTwoPi / static_cast<double>(nbs.size());
    double base = 0.0;
    std::size_t j = 0;
    if (u != start) {
      base = std::arg(to_origin(z[parent[u]], z[u]));
      j = 1;
    }
    for (const auto& nb : nbs) {
      if (nb.node == parent[u]) continue;
      const double radius = std::tanh(0.5 * tau * t.edge(nb.edge).weight);
      if (!(radius < 1.0)) fail(nb.node);
      const Complex local = std::polar(radius, base + slot * static_cast<double>(j++));
      const Complex placed = from_origin(local, z[u]);
      if (!inside(placed)) fail(nb.node);
      z[nb.node] = placed;
      parent[nb.node] = u;
      queue.push_back(nb.node);
    }
  }

  std::vector<DiskPoint> out(m);
  for (std::size_t v = 0; v < m; ++v) out[v] = {z[v].real(), z[v].imag()};
  return out;
}

DistanceMatrix embedding_metric(const WeightedTree& t, const std::vector<DiskPoint>& points,
                                double tau) {
  const std::size_t n = t.data_count();
  if (points.size() != t.node_count()) {
    throw std::invalid_argument("embedding has " + std::to_string(points.size()) +
                                " points, tree has " + std::to_string(t.node_count()) + " nodes");
  }
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) d.set(i, j, poincare_distance(points[i], points[j]) / tau);
  }
  return d;
}

}  // namespace treerep
