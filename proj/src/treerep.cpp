#include "treerep/treerep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "treerep/evaluation.hpp"

namespace treerep {

ExtendedDistances::ExtendedDistances(const DistanceMatrix& base)
    : base_(base), n_(base.size()), capacity_(2 * base.size()) {}

std::size_t ExtendedDistances::add_node() {
  if (n_ + steiner_ >= capacity_) {
    throw std::length_error("Steiner node capacity exhausted");
  }
  rows_.resize(rows_.size() + capacity_, 0.0);
  return n_ + steiner_++;
}

UniversalTriple universal_tree(const ExtendedDistances& dist, std::size_t x, std::size_t y,
                               std::size_t z, std::size_t r, double tol) {
  const double dxy = dist(x, y);
  const double dxz = dist(x, z);
  const double dyz = dist(y, z);
  UniversalTriple t{x, y, z, r, 0.5 * (dxy + dxz - dyz), 0.5 * (dxy + dyz - dxz),
                    0.5 * (dxz + dyz - dxy), std::nullopt};
  for (double* w : {&t.wx, &t.wy, &t.wz}) {
    if (std::abs(*w) <= tol) *w = 0.0;
  }
  if (t.wx == 0.0) {
    t.merged_into = x;
  } else if (t.wy == 0.0) {
    t.merged_into = y;
  } else if (t.wz == 0.0) {
    t.merged_into = z;
  }
  return t;
}

ZoneAssignment classify_zone(const ExtendedDistances& dist, const UniversalTriple& triple,
                             std::size_t w, double tol) {
  const double dwx = dist(w, triple.x);
  const double dwy = dist(w, triple.y);
  const double dwz = dist(w, triple.z);
  const double a = 0.5 * (dwx + dwy - dist(triple.x, triple.y));  // (x,y)_w
  const double b = 0.5 * (dwy + dwz - dist(triple.y, triple.z));  // (y,z)_w
  const double c = 0.5 * (dwz + dwx - dist(triple.z, triple.x));  // (z,x)_w

  const double hi = std::max({a, b, c});
  const double lo = std::min({a, b, c});
  const double mid = a + b + c - hi - lo;

  ZoneAssignment out{Zone::one_r, hi, false, mid - lo};
  if (hi - lo <= tol) {
    if (hi <= tol) {
      out.replaces_steiner = true;
      out.steiner_distance = 0.0;
    }
    return out;
  }

  // The vertex shared by the two smaller products; test order a, b, c.
  double to_vertex = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  Zone one = Zone::one_x;
  Zone two = Zone::two_x;
  if (a == hi) {
    to_vertex = dwz, m1 = b, m2 = c, one = Zone::one_z, two = Zone::two_z;
  } else if (b == hi) {
    to_vertex = dwx, m1 = a, m2 = c, one = Zone::one_x, two = Zone::two_x;
  } else {
    to_vertex = dwy, m1 = a, m2 = b, one = Zone::one_y, two = Zone::two_y;
  }
  const bool on_vertex = std::abs(to_vertex - m1) <= tol || std::abs(to_vertex - m2) <= tol;
  out.zone = on_vertex ? one : two;
  return out;
}

namespace {

std::uint64_t edge_key(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

class TreeBuilder {
 public:
  TreeBuilder(const DistanceMatrix& d, const TreeRepOptions& options)
      : d_(d), opt_(options), dist_(d) {}

  TreeRepResult run() {
    const std::size_t n = d_.size();
    TreeRepResult result;
    if (n <= 2) {
      result.raw_tree = WeightedTree(n);
      if (n == 2) result.raw_tree.add_edge(0, 1, d_(0, 1));
      result.tree = result.raw_tree;
      return result;
    }

    std::mt19937_64 rng(opt_.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = 0; k < 3; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, n - 1);
      std::swap(order[k], order[pick(rng)]);
    }
    const std::size_t x = order[0];
    const std::size_t y = order[1];
    const std::size_t z = order[2];
    std::vector<std::size_t> rest;
    rest.reserve(n - 3);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != x && i != y && i != z) rest.push_back(i);
    }

    stack_.push_back({Task::Kind::step, std::move(rest), x, y, z});
    while (!stack_.empty()) {
      Task task = std::move(stack_.back());
      stack_.pop_back();
      switch (task.kind) {
        case Task::Kind::step: step(std::move(task.list), task.a, task.b, task.c); break;
        case Task::Kind::zone1: zone1(std::move(task.list), task.a); break;
        case Task::Kind::zone2: zone2(std::move(task.list), task.a, task.b); break;
      }
    }

    result.steiner_created = dist_.node_count() - n;
    result.raw_tree = WeightedTree(n);
    for (std::size_t s = 0; s < result.steiner_created; ++s) result.raw_tree.add_steiner();
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (alive_[e]) result.raw_tree.add_edge(edges_[e].u, edges_[e].v, edges_[e].weight);
    }
    for (const auto& e : result.raw_tree.edges()) {
      if (e.weight < 0.0) ++result.negative_edges;
    }
    result.tree = contract_zero_edges(clamp_negative_weights(result.raw_tree), opt_.tol);
    result.trace = std::move(trace_);
    return result;
  }

 private:
  struct Task {
    enum class Kind : std::uint8_t { step, zone1, zone2 } kind;
    std::vector<std::size_t> list;
    std::size_t a = 0, b = 0, c = 0;
  };

  void add_edge(std::size_t u, std::size_t v, double w) {
    edge_index_[edge_key(u, v)] = edges_.size();
    edges_.push_back({u, v, w});
    alive_.push_back(1);
  }

  void remove_edge(std::size_t u, std::size_t v) {
    const auto it = edge_index_.find(edge_key(u, v));
    if (it == edge_index_.end()) throw std::logic_error("treerep: missing edge");
    alive_[it->second] = 0;
    edge_index_.erase(it);
  }

  void classify_all(const UniversalTriple& triple, const std::vector<std::size_t>& list,
                    std::vector<ZoneAssignment>& out) const {
    out.resize(list.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        out[i] = classify_zone(dist_, triple, list[i], opt_.tol);
      }
    };
    const unsigned threads = opt_.threads;
    if (threads <= 1 || list.size() < opt_.parallel_min_batch) {
      work(0, list.size());
      return;
    }
    const std::size_t chunk = (list.size() + threads - 1) / threads;
    std::vector<std::jthread> pool;
    for (std::size_t begin = 0; begin < list.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(list.size(), begin + chunk));
    }
  }

  void step(std::vector<std::size_t> list, std::size_t x, std::size_t y, std::size_t z) {
    const std::size_t r = dist_.add_node();
    const UniversalTriple triple = universal_tree(dist_, x, y, z, r, opt_.tol);
    dist_.set(x, r, triple.wx);
    dist_.set(y, r, triple.wy);
    dist_.set(z, r, triple.wz);
    add_edge(x, r, triple.wx);
    add_edge(y, r, triple.wy);
    add_edge(z, r, triple.wz);

    classify_all(triple, list, assignments_);

    std::array<std::vector<std::size_t>, 7> zones;
    StepTrace* trace = nullptr;
    if (opt_.record_trace) {
      trace = &trace_.emplace_back();
      trace->triple = triple;
      trace->placed.reserve(list.size());
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::size_t w = list[i];
      const ZoneAssignment& za = assignments_[i];
      dist_.set(w, r, za.steiner_distance);
      zones[static_cast<std::size_t>(za.zone)].push_back(w);
      if (trace) trace->placed.push_back({w, za.zone, za.steiner_distance, za.local_error});
    }

    // Pushed in reverse so they run as: Zone1(r), Zone1(x/y/z), Zone2(x/y/z).
    auto take = [&](Zone zone) { return std::move(zones[static_cast<std::size_t>(zone)]); };
    stack_.push_back({Task::Kind::zone2, take(Zone::two_z), z, r});
    stack_.push_back({Task::Kind::zone2, take(Zone::two_y), y, r});
    stack_.push_back({Task::Kind::zone2, take(Zone::two_x), x, r});
    stack_.push_back({Task::Kind::zone1, take(Zone::one_z), z});
    stack_.push_back({Task::Kind::zone1, take(Zone::one_y), y});
    stack_.push_back({Task::Kind::zone1, take(Zone::one_x), x});
    stack_.push_back({Task::Kind::zone1, take(Zone::one_r), r});
  }

  void zone1(std::vector<std::size_t> list, std::size_t v) {
    if (list.empty()) return;
    if (list.size() == 1) {
      add_edge(list.front(), v, dist_(list.front(), v));
      return;
    }
    const std::size_t u = list.back();
    list.pop_back();
    const std::size_t z = list.back();
    list.pop_back();
    stack_.push_back({Task::Kind::step, std::move(list), v, u, z});
  }

  void zone2(std::vector<std::size_t> list, std::size_t u, std::size_t v) {
    if (list.empty()) return;
    std::size_t best = 0;
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (dist_(list[i], v) < dist_(list[best], v)) best = i;
    }
    const std::size_t z = list[best];
    list.erase(list.begin() + static_cast<std::ptrdiff_t>(best));
    remove_edge(u, v);
    stack_.push_back({Task::Kind::step, std::move(list), v, u, z});
  }

  const DistanceMatrix& d_;
  TreeRepOptions opt_;
  ExtendedDistances dist_;
  std::vector<TreeEdge> edges_;
  std::vector<char> alive_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
  std::vector<Task> stack_;
  std::vector<ZoneAssignment> assignments_;
  std::vector<StepTrace> trace_;
};

}  // namespace

TreeRepResult treerep_run(const DistanceMatrix& d, const TreeRepOptions& options) {
  if (options.tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
  return TreeBuilder(d, options).run();
}

WeightedTree treerep(const DistanceMatrix& d, const TreeRepOptions& options) {
  return treerep_run(d, options).tree;
}

BestOfResult treerep_best(const DistanceMatrix& d, const BestOfOptions& options,
                          const Graph* graph) {
  if (options.runs == 0) throw std::invalid_argument("runs must be at least 1");
  if (options.criterion == SelectCriterion::map && graph == nullptr) {
    throw std::invalid_argument("MAP selection requires a graph");
  }
  if (!options.seeds.empty() && options.seeds.size() != options.runs) {
    throw std::invalid_argument("expected one seed per run");
  }

  BestOfResult out;
  for (std::size_t i = 0; i < options.runs; ++i) {
    out.seeds.push_back(options.seeds.empty() ? options.base.seed + i : options.seeds[i]);
  }
  double best_score = 0.0;
  for (std::size_t i = 0; i < options.runs; ++i) {
    TreeRepOptions opt = options.base;
    opt.seed = out.seeds[i];
    WeightedTree tree = treerep(d, opt);
    const DistanceMatrix learned = tree_metric(tree);
    double score = 0.0;
    bool better = false;
    if (options.criterion == SelectCriterion::map) {
      score = map_score(*graph, learned);
      better = i == 0 || score > best_score;
    } else {
      score = average_distortion(learned, d,
                                 options.optimal_scale ? Scaling::optimal : Scaling::none);
      better = i == 0 || score < best_score;
    }
    out.scores.push_back(score);
    if (better) {
      best_score = score;
      out.best_run = i;
      out.tree = std::move(tree);
    }
  }
  return out;
}

}  // namespace treerep
