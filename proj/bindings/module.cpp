#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kronres/comparisons.hpp"
#include "kronres/graph.hpp"
#include "kronres/io.hpp"
#include "kronres/kron.hpp"
#include "kronres/montecarlo.hpp"
#include "kronres/resistance.hpp"

namespace py = pybind11;
using namespace kronres;

namespace {

NodeSubset make_subset(const std::vector<int>& indices, int n) { return NodeSubset(indices, n); }

py::object extended_to_py(const ExtendedResistance& r) {
  switch (r.kind()) {
    case ExtendedResistance::Kind::Infinite:
      return py::float_(std::numeric_limits<double>::infinity());
    case ExtendedResistance::Kind::Undefined:
      return py::none();
    case ExtendedResistance::Kind::Finite:
      break;
  }
  return py::float_(r.is_finite() ? r.value() : 0.0);
}

}  // namespace

PYBIND11_MODULE(_kronres, m) {
  m.doc() = "Kron reduction and effective resistance of directed weighted graphs";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "GraphParseError", PyExc_ValueError);

  py::class_<WeightedDigraph>(m, "WeightedDigraph")
      .def(py::init<Matrix>(), py::arg("adjacency"))
      .def_property_readonly("n", &WeightedDigraph::size)
      .def_property_readonly("adjacency", &WeightedDigraph::adjacency)
      .def("has_edge", &WeightedDigraph::has_edge);

  py::class_<KronResult>(m, "KronResult")
      .def_readonly("q_red", &KronResult::q_red)
      .def_property_readonly("g_red", [](const KronResult& r) { return r.g_red; });

  py::class_<EscapeEstimate>(m, "EscapeEstimate")
      .def_readonly("p_hat", &EscapeEstimate::p_hat)
      .def_readonly("std_err", &EscapeEstimate::std_err)
      .def_readonly("trials", &EscapeEstimate::trials)
      .def_readonly("truncated", &EscapeEstimate::truncated);

  m.def("build_graph", [](int n, const std::vector<std::tuple<int, int, double>>& edges) {
    std::vector<Edge> converted;
    for (const auto& [from, to, weight] : edges) converted.push_back({from, to, weight});
    return build_graph(n, converted);
  });
  m.def("graph_from_json", &graph_from_json);
  m.def("graph_to_json", &graph_to_json);

  m.def("loopy_laplacian", &loopy_laplacian);
  m.def("loopless_laplacian", &loopless_laplacian);
  m.def("graph_from_loopy", &graph_from_loopy, py::arg("q"), py::arg("tol") = 1e-9);
  m.def("transition_matrix", &transition_matrix);
  m.def("is_strongly_connected", &is_strongly_connected);
  m.def("is_weight_balanced", &is_weight_balanced, py::arg("g"), py::arg("tol") = 1e-9);
  m.def("is_reachable_subset", [](const WeightedDigraph& g, const std::vector<int>& alpha) {
    return is_reachable_subset(g, make_subset(alpha, g.size()));
  });

  m.def("kron_reduce", [](const Matrix& q, const std::vector<int>& alpha) {
    return kron_reduce(q, make_subset(alpha, static_cast<int>(q.rows())));
  });
  m.def(
      "kron_reduce_iterative",
      [](const Matrix& q, const std::vector<int>& alpha, const std::vector<int>& order) {
        return kron_reduce_iterative(q, make_subset(alpha, static_cast<int>(q.rows())), order);
      },
      py::arg("q"), py::arg("alpha"), py::arg("elimination_order") = std::vector<int>{});
  m.def("accompanying_matrices", [](const Matrix& q, const std::vector<int>& alpha) {
    AccompanyingMatrices acc = accompanying_matrices(q, make_subset(alpha, (int)q.rows()));
    return py::make_tuple(acc.rac, acc.lac);
  });
  m.def("grounded_augmentation", &grounded_augmentation);

  m.def("voltage_vector", [](const WeightedDigraph& g, int a, int b) {
    return voltage_vector(g, a, b).v;
  });
  m.def("effective_conductance", &effective_conductance);
  m.def("effective_resistance", &effective_resistance);
  m.def("resistance_general", [](const WeightedDigraph& g, int a, int b) {
    return extended_to_py(resistance_general(g, a, b));
  });
  m.def("escape_probability", &escape_probability);
  m.def("first_passage_edge_probability", &first_passage_edge_probability);
  m.def("balancing", [](const WeightedDigraph& g) { return balancing(g).m; });
  m.def("resistance_balanced_pinv", &resistance_balanced_pinv);
  m.def("resistance_strongly_connected", &resistance_strongly_connected);
  m.def("metric_matrix", &metric_matrix);
  m.def("total_resistance", &total_resistance);
  m.def("edm_check", &edm_check);

  m.def("projection_basis", &projection_basis);
  m.def("lyapunov_resistance", &lyapunov_resistance);
  m.def("kron_reduce_lyapunov", [](const WeightedDigraph& g, const std::vector<int>& alpha) {
    return kron_reduce_lyapunov(g, make_subset(alpha, g.size()));
  });
  m.def("fundamental_matrix", [](const Matrix& p) {
    FundamentalMatrix fm = fundamental_matrix(p);
    return py::make_tuple(fm.f, fm.phi);
  });
  m.def("resistance_distance", &resistance_distance);
  m.def("hitting_prob_metric", &hitting_prob_metric, py::arg("g"), py::arg("beta") = 1.0);
  m.def("stationary_distribution", &stationary_distribution);

  m.def(
      "simulate_escape",
      [](const WeightedDigraph& g, int a, int b, std::int64_t trials, std::uint64_t seed,
         std::int64_t max_steps) {
        return simulate_escape(g, a, b, WalkConfig{trials, seed, max_steps});
      },
      py::arg("g"), py::arg("a"), py::arg("b"), py::arg("trials") = 100000, py::arg("seed") = 0,
      py::arg("max_steps") = 1000000);
  m.def(
      "simulate_voltage",
      [](const WeightedDigraph& g, int x, int a, int b, std::int64_t trials, std::uint64_t seed,
         std::int64_t max_steps) {
        return simulate_voltage(g, x, a, b, WalkConfig{trials, seed, max_steps});
      },
      py::arg("g"), py::arg("x"), py::arg("a"), py::arg("b"), py::arg("trials") = 100000,
      py::arg("seed") = 0, py::arg("max_steps") = 1000000);
  m.def(
      "simulate_first_edge",
      [](const WeightedDigraph& g, int a, int b, std::int64_t trials, std::uint64_t seed,
         std::int64_t max_steps) {
        return simulate_first_edge(g, a, b, WalkConfig{trials, seed, max_steps});
      },
      py::arg("g"), py::arg("a"), py::arg("b"), py::arg("trials") = 100000, py::arg("seed") = 0,
      py::arg("max_steps") = 1000000);
}
