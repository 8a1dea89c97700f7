#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "treerep/baselines.hpp"
#include "treerep/datagen.hpp"
#include "treerep/evaluation.hpp"
#include "treerep/gromov.hpp"
#include "treerep/hyperbolic.hpp"
#include "treerep/io.hpp"
#include "treerep/refinement.hpp"
#include "treerep/treerep.hpp"

namespace py = pybind11;
using namespace treerep;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DistanceMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw std::invalid_argument("expected a square 2-d array");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  auto view = a.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = view(i, j);
  }
  return DistanceMatrix::from_rows(rows);
}

Array to_array(const DistanceMatrix& d) {
  const auto n = static_cast<py::ssize_t>(d.size());
  Array out({n, n});
  std::copy(d.values().begin(), d.values().end(), out.mutable_data());
  return out;
}

Graph to_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    g.add_edge(u, v);
  }
  return g;
}

Scaling to_scaling(const std::string& s) {
  if (s == "none") return Scaling::none;
  if (s == "optimal") return Scaling::optimal;
  throw std::invalid_argument("scale must be 'none' or 'optimal'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tree metric learning: TreeRep, baselines, evaluation and embeddings";

  py::class_<WeightedTree>(m, "Tree")
      .def_property_readonly("data_count", &WeightedTree::data_count)
      .def_property_readonly("node_count", &WeightedTree::node_count)
      .def_property_readonly("steiner_count", &WeightedTree::steiner_count)
      .def_property_readonly("edges",
                             [](const WeightedTree& t) {
                               std::vector<std::tuple<std::size_t, std::size_t, double>> out;
                               for (const auto& e : t.edges()) out.emplace_back(e.u, e.v, e.weight);
                               return out;
                             })
      .def(
          "metric",
          [](const WeightedTree& t, bool all_nodes) {
            return to_array(tree_metric(t, all_nodes ? MetricScope::all : MetricScope::data));
          },
          py::arg("all_nodes") = false)
      .def(
          "to_edge_list",
          [](const WeightedTree& t, const std::vector<std::string>& labels) {
            std::ostringstream out;
            write_tree(out, t, labels);
            return out.str();
          },
          py::arg("labels") = std::vector<std::string>{})
      .def("__repr__", [](const WeightedTree& t) {
        return "<Tree data=" + std::to_string(t.data_count()) +
               " steiner=" + std::to_string(t.steiner_count()) + ">";
      });

  m.def(
      "treerep",
      [](const Array& d, std::uint64_t seed, double tol, unsigned threads) {
        const DistanceMatrix dm = to_matrix(d);
        TreeRepOptions opt;
        opt.seed = seed;
        opt.tol = tol;
        opt.threads = threads;
        py::gil_scoped_release release;
        return treerep::treerep(dm, opt);
      },
      py::arg("d"), py::arg("seed") = 0, py::arg("tol") = 0.1, py::arg("threads") = 1);

  m.def(
      "neighbor_join", [](const Array& d) { return neighbor_join(to_matrix(d)); }, py::arg("d"));
  m.def(
      "mst", [](const Array& d) { return mst_complete(to_matrix(d)); }, py::arg("d"));

  m.def(
      "delta_hyperbolicity",
      [](const Array& d, const std::string& mode, std::size_t base) {
        DeltaQuery q;
        if (mode == "exact") {
          q.mode = DeltaMode::exact;
        } else if (mode == "fixed") {
          q.mode = DeltaMode::fixed_base;
        } else {
          throw std::invalid_argument("mode must be 'exact' or 'fixed'");
        }
        q.base = base;
        return delta_hyperbolicity(to_matrix(d), q).delta;
      },
      py::arg("d"), py::arg("mode") = "exact", py::arg("base") = 0);

  m.def(
      "average_distortion",
      [](const Array& learned, const Array& truth, const std::string& scale) {
        return average_distortion(to_matrix(learned), to_matrix(truth), to_scaling(scale));
      },
      py::arg("learned"), py::arg("truth"), py::arg("scale") = "none");
  m.def(
      "optimal_scale",
      [](const Array& learned, const Array& truth) {
        return optimal_scale(to_matrix(learned), to_matrix(truth));
      },
      py::arg("learned"), py::arg("truth"));
  m.def(
      "map_score",
      [](const std::vector<std::pair<std::size_t, std::size_t>>& edges, const Array& d) {
        const DistanceMatrix dm = to_matrix(d);
        return map_score(to_graph(dm.size(), edges), dm);
      },
      py::arg("edges"), py::arg("d"));

  m.def(
      "random_tree_metric",
      [](std::size_t depth, std::uint64_t seed) {
        GeneratedTree g = random_tree_metric(depth, seed);
        return py::make_tuple(std::move(g.tree), to_array(g.metric));
      },
      py::arg("depth"), py::arg("seed") = 0);
  m.def(
      "sample_hyperboloid",
      [](std::size_t n, std::size_t k, double scale, std::uint64_t seed) {
        return to_array(sample_hyperboloid(n, k, scale, seed));
      },
      py::arg("n"), py::arg("k"), py::arg("scale") = 1.0, py::arg("seed") = 0);

  m.def(
      "sarkar_embed",
      [](const WeightedTree& t, double tau, std::optional<std::size_t> root) {
        const auto pts = sarkar_embed(t, tau, root);
        Array out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < pts.size(); ++i) {
          view(i, 0) = pts[i].a;
          view(i, 1) = pts[i].b;
        }
        return out;
      },
      py::arg("tree"), py::arg("tau"), py::arg("root") = py::none());
  m.def(
      "poincare_distance",
      [](std::pair<double, double> p, std::pair<double, double> q) {
        return poincare_distance({p.first, p.second}, {q.first, q.second});
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "refine",
      [](const WeightedTree& t, const Array& d, std::optional<std::size_t> samples,
         std::uint64_t seed, bool nonneg) {
        const DistanceMatrix dm = to_matrix(d);
        const PairSelection sel =
            samples ? PairSelection::sample(*samples, seed) : PairSelection::all();
        const PathSystem ps = build_path_system(t, sel);
        RefineResult r = refine_weights(t, dm, ps, nonneg);
        py::dict info;
        info["residual_before"] = r.residual_before;
        info["residual_after"] = r.residual_after;
        info["rank_deficient"] = r.rank_deficient;
        info["iterations"] = r.iterations;
        return py::make_tuple(std::move(r.tree), info);
      },
      py::arg("tree"), py::arg("d"), py::arg("samples") = py::none(), py::arg("seed") = 0,
      py::arg("nonneg") = false);
}
