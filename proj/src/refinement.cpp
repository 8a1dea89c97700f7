#include "treerep/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace treerep {

namespace {

constexpr double kRelTol = 1e-10;

struct Rooted {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> parent_edge;
  std::vector<std::size_t> depth;
};

Rooted root_at_zero(const WeightedTree& t) {
  const std::size_t m = t.node_count();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  Rooted r{std::vector<std::size_t>(m, kNone), std::vector<std::size_t>(m, kNone),
           std::vector<std::size_t>(m, 0)};
  if (m == 0) return r;
  std::vector<std::size_t> queue{0};
  r.parent[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (const auto& nb : t.neighbors(u)) {
      if (r.parent[nb.node] != kNone) continue;
      r.parent[nb.node] = u;
      r.parent_edge[nb.node] = nb.edge;
      r.depth[nb.node] = r.depth[u] + 1;
      queue.push_back(nb.node);
    }
  }
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> choose_pairs(std::size_t n,
                                                              const PairSelection& sel) {
  const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (!sel.k || *sel.k == total) {
    pairs.reserve(total);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  const std::size_t k = *sel.k;
  if (k > total) {
    throw std::invalid_argument("sample size " + std::to_string(k) + " exceeds the " +
                                std::to_string(total) + " available pairs");
  }
  // Floyd's sampling of k distinct pair indices.
  std::mt19937_64 rng(sel.seed);
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(k * 2);
  for (std::size_t j = total - k; j < total; ++j) {
    const std::size_t v = std::uniform_int_distribution<std::size_t>(0, j)(rng);
    if (!chosen.insert(v).second) chosen.insert(j);
  }
  std::vector<std::size_t> idx(chosen.begin(), chosen.end());
  std::sort(idx.begin(), idx.end());
  pairs.reserve(k);
  std::size_t i = 0;
  std::size_t start = 0;  // index of pair (i, i+1)
  for (const std::size_t v : idx) {
    while (v >= start + (n - 1 - i)) {
      start += n - 1 - i;
      ++i;
    }
    pairs.emplace_back(i, i + 1 + (v - start));
  }
  return pairs;
}

void apply(const PathSystem& ps, std::span<const double> w, std::vector<double>& out) {
  out.assign(ps.row_count(), 0.0);
  for (std::size_t i = 0; i < ps.row_count(); ++i) {
    double s = 0.0;
    for (const auto e : ps.row(i)) s += w[e];
    out[i] = s;
  }
}

void apply_transpose(const PathSystem& ps, std::span<const double> r,
                     const std::vector<char>& fixed, std::vector<double>& out) {
  out.assign(ps.edge_count(), 0.0);
  for (std::size_t i = 0; i < ps.row_count(); ++i) {
    for (const auto e : ps.row(i)) out[e] += r[i];
  }
  for (std::size_t e = 0; e < out.size(); ++e) {
    if (fixed[e]) out[e] = 0.0;
  }
}

double squared_norm(const std::vector<double>& v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

// CGLS on the free columns, starting from w.
std::size_t cgls(const PathSystem& ps, const std::vector<double>& b, std::vector<double>& w,
                 const std::vector<char>& fixed) {
  const std::size_t max_iter = 10 * ps.edge_count();
  std::vector<double> r;
  apply(ps, w, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  std::vector<double> s;
  apply_transpose(ps, b, fixed, s);
  double reference = std::sqrt(squared_norm(s));
  if (!(reference > 0.0)) reference = 1.0;
  apply_transpose(ps, r, fixed, s);
  double gamma = squared_norm(s);
  if (std::sqrt(gamma) <= kRelTol * reference) return 0;

  std::vector<double> p = s;
  std::vector<double> q;
  std::size_t it = 0;
  while (it < max_iter) {
    apply(ps, p, q);
    const double qq = squared_norm(q);
    if (!(qq > 0.0)) break;
    const double alpha = gamma / qq;
    for (std::size_t e = 0; e < w.size(); ++e) w[e] += alpha * p[e];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
    apply_transpose(ps, r, fixed, s);
    const double next = squared_norm(s);
    ++it;
    if (std::sqrt(next) <= kRelTol * reference) break;
    const double beta = next / gamma;
    for (std::size_t e = 0; e < p.size(); ++e) p[e] = s[e] + beta * p[e];
    gamma = next;
  }
  return it;
}

bool structurally_deficient(const PathSystem& ps) {
  std::vector<std::vector<std::uint32_t>> columns(ps.edge_count());
  for (std::size_t i = 0; i < ps.row_count(); ++i) {
    for (const auto e : ps.row(i)) columns[e].push_back(static_cast<std::uint32_t>(i));
  }
  for (const auto& c : columns) {
    if (c.empty()) return true;
  }
  std::vector<std::size_t> order(columns.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return columns[a] < columns[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (columns[order[k]] == columns[order[k - 1]]) return true;
  }
  return false;
}

}  // namespace

std::size_t default_sample_size(const WeightedTree& t) {
  const std::size_t n = t.data_count();
  const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  return std::min(total, 20 * t.edge_count());
}

PathSystem build_path_system(const WeightedTree& t, const PairSelection& selection) {
  t.validate();
  if (t.edge_count() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("tree has too many edges for a path system");
  }
  PathSystem ps;
  ps.edge_count_ = t.edge_count();
  ps.pairs_ = choose_pairs(t.data_count(), selection);
  const Rooted rooted = root_at_zero(t);
  ps.offsets_.reserve(ps.pairs_.size() + 1);
  std::vector<std::uint32_t> tail;
  for (const auto& [a0, b0] : ps.pairs_) {
    std::size_t a = a0;
    std::size_t b = b0;
    tail.clear();
    while (rooted.depth[a] > rooted.depth[b]) {
      ps.edges_.push_back(static_cast<std::uint32_t>(rooted.parent_edge[a]));
      a = rooted.parent[a];
    }
    while (rooted.depth[b] > rooted.depth[a]) {
      tail.push_back(static_cast<std::uint32_t>(rooted.parent_edge[b]));
      b = rooted.parent[b];
    }
    while (a != b) {
      ps.edges_.push_back(static_cast<std::uint32_t>(rooted.parent_edge[a]));
      tail.push_back(static_cast<std::uint32_t>(rooted.parent_edge[b]));
      a = rooted.parent[a];
      b = rooted.parent[b];
    }
    ps.edges_.insert(ps.edges_.end(), tail.rbegin(), tail.rend());
    ps.offsets_.push_back(ps.edges_.size());
  }
  return ps;
}

double path_residual(const PathSystem& ps, const DistanceMatrix& d, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ps.row_count(); ++i) {
    double len = 0.0;
    for (const auto e : ps.row(i)) len += w[e];
    const auto [a, b] = ps.pairs()[i];
    const double diff = len - d(a, b);
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

RefineResult refine_weights(const WeightedTree& t, const DistanceMatrix& d, const PathSystem& ps,
                            bool nonneg) {
  if (ps.edge_count() != t.edge_count()) {
    throw std::invalid_argument("path system was built for a tree with " +
                                std::to_string(ps.edge_count()) + " edges, got " +
                                std::to_string(t.edge_count()));
  }
  if (d.size() != t.data_count()) {
    throw std::invalid_argument("metric has " + std::to_string(d.size()) +
                                " points, tree has " + std::to_string(t.data_count()) +
                                " data nodes");
  }
  RefineResult result;
  result.tree = t;
  std::vector<double> start = t.weights();
  result.residual_before = path_residual(ps, d, start);
  result.rank_deficient = structurally_deficient(ps);
  if (ps.row_count() == 0 || ps.edge_count() == 0) {
    result.residual_after = result.residual_before;
    return result;
  }

  std::vector<double> b(ps.row_count());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = d(ps.pairs()[i].first, ps.pairs()[i].second);

  if (nonneg) {
    for (auto& x : start) x = std::max(x, 0.0);
  }
  std::vector<char> fixed(ps.edge_count(), 0);
  std::vector<double> w = start;
  result.iterations = cgls(ps, b, w, fixed);

  if (nonneg) {
    for (std::size_t e = 0; e < w.size(); ++e) {
      if (w[e] < 0.0) {
        w[e] = 0.0;
        fixed[e] = 1;
      }
    }
    if (std::find(fixed.begin(), fixed.end(), 1) != fixed.end()) {
      result.iterations += cgls(ps, b, w, fixed);
      for (auto& x : w) x = std::max(x, 0.0);
    }
    result.clamped = static_cast<std::size_t>(std::count(w.begin(), w.end(), 0.0));
  }

  double after = path_residual(ps, d, w);
  const double reference = path_residual(ps, d, start);
  if (after > reference) {
    // Best point on the segment from the start to the solution; both ends are
    // feasible, so every point in between is too.
    std::vector<double> dir(w.size());
    for (std::size_t e = 0; e < w.size(); ++e) dir[e] = w[e] - start[e];
    std::vector<double> ad;
    std::vector<double> r0;
    apply(ps, dir, ad);
    apply(ps, start, r0);
    double num = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) num += (b[i] - r0[i]) * ad[i];
    const double den = squared_norm(ad);
    const double step = den > 0.0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
    for (std::size_t e = 0; e < w.size(); ++e) w[e] = start[e] + step * dir[e];
    after = path_residual(ps, d, w);
    if (after > reference) {
      w = start;
      after = reference;
    }
  }
  result.tree.set_weights(w);
  result.residual_after = after;
  return result;
}

}  // namespace treerep
