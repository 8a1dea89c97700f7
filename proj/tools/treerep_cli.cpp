#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "CLI11.hpp"
#include "json.hpp"
#include "treerep/baselines.hpp"
#include "treerep/datagen.hpp"
#include "treerep/evaluation.hpp"
#include "treerep/gromov.hpp"
#include "treerep/hyperbolic.hpp"
#include "treerep/io.hpp"
#include "treerep/refinement.hpp"
#include "treerep/report.hpp"
#include "treerep/treerep.hpp"

namespace {

using namespace treerep;

struct Input {
  DistanceMatrix d;
  std::optional<Graph> graph;
  std::vector<std::string> labels;
};

std::vector<std::string> labels_of(const DistanceMatrix& d) {
  if (!d.labels().empty()) return d.labels();
  std::vector<std::string> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = std::to_string(i);
  return out;
}

Input load_input(const std::string& path, const std::string& kind) {
  Input in;
  if (kind == "edges") {
    Graph g = read_edge_list(std::filesystem::path(path));
    Graph kept = g.largest_component();
    if (kept.node_count() < g.node_count()) {
      std::cerr << "warning: " << path << ": keeping the largest component (" << kept.node_count()
                << " of " << g.node_count() << " nodes)\n";
    }
    in.d = bfs_apsp(kept);
    in.graph = std::move(kept);
  } else {
    in.d = read_distance_matrix(std::filesystem::path(path));
  }
  in.labels = labels_of(in.d);
  return in;
}

// Re-indexes g so that node i carries labels[i].
Graph align_graph(const Graph& g, const std::vector<std::string>& labels, const std::string& path) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  Graph out;
  for (const auto& name : labels) out.add_node(name);
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    const auto it = index.find(g.name(u));
    if (it == index.end()) {
      throw std::invalid_argument(path + ": node '" + g.name(u) + "' is not in the truth metric");
    }
    for (const auto& a : g.neighbors(u)) {
      const auto jt = index.find(g.name(a.node));
      if (jt == index.end()) {
        throw std::invalid_argument(path + ": node '" + g.name(a.node) +
                                    "' is not in the truth metric");
      }
      out.add_edge(it->second, jt->second, a.weight);
    }
  }
  return out;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void emit_report(const EvalReport& r, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << to_json(r);
  } else {
    write_file(path, [&](std::ostream& out) { out << to_json(r); });
  }
}

struct MetricFlags {
  std::string scale = "none";
  std::string delta = "none";
};

void evaluate(EvalReport& r, const WeightedTree& tree, const Input& in, const Graph* graph,
              const MetricFlags& flags, StageTimer& timer) {
  r.n_input = in.d.size();
  r.n_tree_nodes = tree.node_count();
  r.scale = flags.scale;
  const DistanceMatrix learned = tree_metric(tree);
  if (in.d.size() >= 2) {
    r.alpha = optimal_scale(learned, in.d);
    r.avg_distortion = average_distortion(
        learned, in.d, flags.scale == "optimal" ? Scaling::optimal : Scaling::none);
  }
  if (graph) r.map = map_score(*graph, learned);
  r.elapsed_ms.emplace_back("evaluate", timer.lap());
  if (flags.delta != "none") {
    DeltaQuery q;
    q.mode = flags.delta == "exact" ? DeltaMode::exact : DeltaMode::fixed_base;
    // Hop counts are reported on the unit-diameter scale.
    const DistanceMatrix base =
        in.graph && in.d.max_entry() > 0.0 ? normalize_max(in.d) : in.d;
    r.delta = delta_hyperbolicity(base, q).delta;
    r.delta_mode = flags.delta;
    r.elapsed_ms.emplace_back("delta", timer.lap());
  }
}

void add_metric_flags(CLI::App* cmd, MetricFlags& flags) {
  cmd->add_option("--scale", flags.scale, "Scale learned distances before distortion")
      ->check(CLI::IsMember({"none", "optimal"}));
  cmd->add_option("--delta", flags.delta, "Also report the delta-hyperbolicity of the input")
      ->check(CLI::IsMember({"none", "exact", "fixed"}));
}

struct FitArgs {
  std::string algo = "treerep";
  std::string input;
  std::string kind = "dist";
  std::uint64_t seed = 0;
  double tol = 0.1;
  std::size_t runs = 1;
  std::string select = "best";
  std::string out;
  std::string report;
  unsigned threads = 1;
  MetricFlags metrics;
};

int run_fit(const FitArgs& a) {
  StageTimer timer;
  const Input in = load_input(a.input, a.kind);
  const Graph* graph = in.graph ? &*in.graph : nullptr;
  EvalReport r;
  r.algo = a.algo;
  r.seed = a.seed;
  r.runs = 1;
  r.elapsed_ms.emplace_back("load", timer.lap());

  WeightedTree tree;
  if (a.algo == "treerep") {
    TreeRepOptions base;
    base.seed = a.seed;
    base.tol = a.tol;
    base.threads = a.threads;
    if (a.select == "first" || a.runs <= 1) {
      tree = treerep::treerep(in.d, base);
    } else {
      BestOfOptions best;
      best.base = base;
      best.runs = a.runs;
      best.criterion = graph ? SelectCriterion::map : SelectCriterion::avg_distortion;
      best.optimal_scale = a.metrics.scale == "optimal";
      BestOfResult res = treerep_best(in.d, best, graph);
      tree = std::move(res.tree);
      r.seed = res.seeds[res.best_run];
      r.runs = a.runs;
    }
  } else if (a.algo == "nj") {
    tree = neighbor_join(in.d);
  } else {
    if (graph) {
      tree = mst_prim(*graph);
    } else {
      std::cerr << "warning: mst on a distance matrix uses the complete graph of its entries\n";
      tree = mst_complete(in.d);
    }
  }
  r.elapsed_ms.emplace_back("fit", timer.lap());

  write_file(a.out, [&](std::ostream& out) { write_tree(out, tree, in.labels); });
  evaluate(r, tree, in, graph, a.metrics, timer);
  if (!a.report.empty()) emit_report(r, a.report);
  return 0;
}

struct EvalArgs {
  std::string tree;
  std::string truth;
  std::string kind = "dist";
  std::string graph;
  std::string report;
  MetricFlags metrics;
};

int run_eval(const EvalArgs& a) {
  StageTimer timer;
  const Input in = load_input(a.truth, a.kind);
  const LoadedTree loaded = read_tree(std::filesystem::path(a.tree), &in.labels);
  std::optional<Graph> graph;
  if (!a.graph.empty()) {
    graph = align_graph(read_edge_list(std::filesystem::path(a.graph)), in.labels, a.graph);
  } else if (in.graph) {
    graph = in.graph;
  }
  EvalReport r;
  r.elapsed_ms.emplace_back("load", timer.lap());
  evaluate(r, loaded.tree, in, graph ? &*graph : nullptr, a.metrics, timer);
  emit_report(r, a.report);
  return 0;
}

struct GenArgs {
  std::size_t depth = 1;
  std::string join = "edge";
  std::size_t n = 100;
  std::size_t k = 10;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::string out_tree;
  std::string out_dist;
};

int run_gen_tree(const GenArgs& a) {
  if (a.out_tree.empty() && a.out_dist.empty()) {
    throw std::invalid_argument("gen tree: give --out-tree and/or --out-dist");
  }
  const GeneratedTree g =
      random_tree_metric(a.depth, a.seed, a.join == "identify" ? RootJoin::identify : RootJoin::edge);
  if (!a.out_tree.empty()) {
    write_file(a.out_tree, [&](std::ostream& out) { write_tree(out, g.tree, {}); });
  }
  if (!a.out_dist.empty()) {
    write_file(a.out_dist, [&](std::ostream& out) { write_distance_matrix(out, g.metric); });
  }
  return 0;
}

int run_gen_hyperboloid(const GenArgs& a) {
  const DistanceMatrix d = sample_hyperboloid(a.n, a.k, a.scale, a.seed);
  write_file(a.out_dist, [&](std::ostream& out) { write_distance_matrix(out, d); });
  return 0;
}

struct EmbedArgs {
  std::string tree;
  double tau = 1.0;
  std::string root = "auto";
  std::uint64_t seed = 0;
  std::string out;
};

int run_embed(const EmbedArgs& a) {
  const LoadedTree loaded = read_tree(std::filesystem::path(a.tree));
  const WeightedTree& t = loaded.tree;
  std::optional<std::size_t> root;
  if (a.root != "auto") {
    for (std::size_t v = 0; v < t.node_count() && !root; ++v) {
      if (node_name(t, v, loaded.labels) == a.root) root = v;
    }
    if (!root) throw std::invalid_argument("--root: no node named '" + a.root + "'");
  }
  const auto points = sarkar_embed(t, a.tau, root);
  auto body = [&](std::ostream& out) {
    for (std::size_t v = 0; v < points.size(); ++v) {
      out << node_name(t, v, loaded.labels) << ',' << format_real(points[v].a) << ','
          << format_real(points[v].b) << '\n';
    }
  };
  if (a.out.empty() || a.out == "-") {
    body(std::cout);
  } else {
    write_file(a.out, body);
  }
  return 0;
}

struct RefineArgs {
  std::string tree;
  std::string truth;
  std::string kind = "dist";
  std::string samples = "default";
  bool nonneg = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string report;
};

int run_refine(const RefineArgs& a) {
  const Input in = load_input(a.truth, a.kind);
  const LoadedTree loaded = read_tree(std::filesystem::path(a.tree), &in.labels);
  PairSelection sel;
  if (a.samples == "all") {
    sel = PairSelection::all();
  } else if (a.samples == "default") {
    sel = PairSelection::sample(default_sample_size(loaded.tree), a.seed);
  } else {
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoull(a.samples, &used);
      if (used != a.samples.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("--samples: expected 'all' or a count, got '" + a.samples + "'");
    }
    sel = PairSelection::sample(k, a.seed);
  }
  const PathSystem ps = build_path_system(loaded.tree, sel);
  const RefineResult res = refine_weights(loaded.tree, in.d, ps, a.nonneg);
  write_file(a.out, [&](std::ostream& out) { write_tree(out, res.tree, in.labels); });
  if (!a.report.empty()) {
    nlohmann::ordered_json j;
    j["rows"] = ps.row_count();
    j["residual_before"] = res.residual_before;
    j["residual_after"] = res.residual_after;
    j["rank_deficient"] = res.rank_deficient;
    j["iterations"] = res.iterations;
    j["clamped"] = res.clamped;
    auto body = [&](std::ostream& out) { out << j.dump(2) << '\n'; };
    if (a.report == "-") {
      body(std::cout);
    } else {
      write_file(a.report, body);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree metric learning: fit, evaluate, generate, embed and refine trees"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* cmd_fit = app.add_subcommand("fit", "Learn a tree from a metric or graph");
  cmd_fit->add_option("--algo", fit.algo)->check(CLI::IsMember({"treerep", "nj", "mst"}));
  cmd_fit->add_option("--input", fit.input, "Distance matrix CSV or edge list")->required();
  cmd_fit->add_option("--input-kind", fit.kind)->check(CLI::IsMember({"dist", "edges"}));
  cmd_fit->add_option("--seed", fit.seed);
  cmd_fit->add_option("--tol", fit.tol, "Equality tolerance for treerep")
      ->check(CLI::NonNegativeNumber);
  cmd_fit->add_option("--runs", fit.runs)->check(CLI::PositiveNumber);
  cmd_fit->add_option("--select", fit.select)->check(CLI::IsMember({"best", "first"}));
  cmd_fit->add_option("--out", fit.out, "Tree edge list to write")->required();
  cmd_fit->add_option("--report", fit.report, "JSON report path ('-' for stdout)");
  cmd_fit->add_option("--threads", fit.threads)->check(CLI::PositiveNumber);
  add_metric_flags(cmd_fit, fit.metrics);

  EvalArgs ev;
  auto* cmd_eval = app.add_subcommand("eval", "Score a tree against a metric");
  cmd_eval->add_option("--tree", ev.tree)->required();
  cmd_eval->add_option("--truth", ev.truth)->required();
  cmd_eval->add_option("--truth-kind", ev.kind)->check(CLI::IsMember({"dist", "edges"}));
  cmd_eval->add_option("--graph", ev.graph, "Edge list for MAP");
  cmd_eval->add_option("--report", ev.report, "JSON report path (default stdout)");
  add_metric_flags(cmd_eval, ev.metrics);

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate synthetic inputs");
  cmd_gen->require_subcommand(1);
  auto* gen_tree = cmd_gen->add_subcommand("tree", "Random tree metric");
  gen_tree->add_option("--depth", gen.depth)->required()->check(CLI::Range(1, 24));
  gen_tree->add_option("--root-join", gen.join)->check(CLI::IsMember({"edge", "identify"}));
  gen_tree->add_option("--seed", gen.seed);
  gen_tree->add_option("--out-tree", gen.out_tree);
  gen_tree->add_option("--out-dist", gen.out_dist);
  auto* gen_hyp = cmd_gen->add_subcommand("hyperboloid", "Random points on the hyperboloid");
  gen_hyp->add_option("--n", gen.n)->required();
  gen_hyp->add_option("--k", gen.k)->check(CLI::PositiveNumber);
  gen_hyp->add_option("--scale", gen.scale)->check(CLI::PositiveNumber);
  gen_hyp->add_option("--seed", gen.seed);
  gen_hyp->add_option("--out", gen.out_dist)->required();

  EmbedArgs emb;
  auto* cmd_embed = app.add_subcommand("embed", "Embed a tree in the Poincare disk");
  cmd_embed->add_option("--tree", emb.tree)->required();
  cmd_embed->add_option("--tau", emb.tau)->check(CLI::PositiveNumber);
  cmd_embed->add_option("--root", emb.root, "Node name or 'auto'");
  cmd_embed->add_option("--seed", emb.seed);
  cmd_embed->add_option("--out", emb.out, "CSV path (default stdout)");

  RefineArgs ref;
  auto* cmd_refine = app.add_subcommand("refine", "Least-squares edge weights for a tree");
  cmd_refine->add_option("--tree", ref.tree)->required();
  cmd_refine->add_option("--truth", ref.truth)->required();
  cmd_refine->add_option("--truth-kind", ref.kind)->check(CLI::IsMember({"dist", "edges"}));
  cmd_refine->add_option("--samples", ref.samples, "'all', a pair count, or 'default'");
  cmd_refine->add_flag("--nonneg", ref.nonneg);
  cmd_refine->add_option("--seed", ref.seed);
  cmd_refine->add_option("--out", ref.out)->required();
  cmd_refine->add_option("--report", ref.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "treerep: error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  try {
    if (cmd_fit->parsed()) return run_fit(fit);
    if (cmd_eval->parsed()) return run_eval(ev);
    if (gen_tree->parsed()) return run_gen_tree(gen);
    if (gen_hyp->parsed()) return run_gen_hyperboloid(gen);
    if (cmd_embed->parsed()) return run_embed(emb);
    if (cmd_refine->parsed()) return run_refine(ref);
  } catch (const std::exception& e) {
    std::cerr << "treerep: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
