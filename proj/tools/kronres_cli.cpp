#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kronres/comparisons.hpp"
#include "kronres/graph.hpp"
#include "kronres/io.hpp"
#include "kronres/kron.hpp"
#include "kronres/montecarlo.hpp"
#include "kronres/resistance.hpp"

namespace {

using json = nlohmann::json;
using namespace kronres;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json edges_to_json(const WeightedDigraph& g) {
  json out = json::array();
  for (const Edge& e : g.edges()) out.push_back({e.from + 1, e.to + 1, e.weight});
  return out;
}

json extended_to_json(const ExtendedResistance& r) {
  switch (r.kind()) {
    case ExtendedResistance::Kind::Infinite:
      return "inf";
    case ExtendedResistance::Kind::Undefined:
      return "undefined";
    case ExtendedResistance::Kind::Finite:
      break;
  }
  return r.is_finite() && r.value() == 0.0 ? json(0.0) : json(r.value());
}

std::string extended_to_text(const ExtendedResistance& r) {
  switch (r.kind()) {
    case ExtendedResistance::Kind::Infinite:
      return "inf";
    case ExtendedResistance::Kind::Undefined:
      return "undefined";
    case ExtendedResistance::Kind::Finite:
      break;
  }
  return format_full(r.is_finite() ? r.value() : 0.0);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open output file: " + out_path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<int> parse_labels(const std::string& csv, int n) {
  std::vector<int> out;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    int label = 0;
    try {
      label = std::stoi(token);
    } catch (const std::exception&) {
      throw ParseError("invalid node label: " + token);
    }
    if (label < 1 || label > n) {
      throw PreconditionError("node label " + token + " out of range [1," + std::to_string(n) +
                              "]");
    }
    out.push_back(label - 1);
  }
  if (out.empty()) throw ParseError("empty node list");
  return out;
}

int run_info(const std::string& graph_path, const std::string& out_path, double tol) {
  WeightedDigraph g = load_graph(graph_path);
  json j;
  j["n"] = g.size();
  j["num_edges"] = g.edges().size();
  j["strongly_connected"] = is_strongly_connected(g);
  j["weight_balanced"] = is_weight_balanced(g, tol);
  j["has_self_loops"] = (g.adjacency().diagonal().array() > 0.0).any();
  emit(j.dump(2), out_path);
  return 0;
}

int run_reduce(const std::string& graph_path, const std::string& keep, bool iterative,
               bool emit_acc, const std::string& out_path) {
  WeightedDigraph g = load_graph(graph_path);
  NodeSubset alpha(parse_labels(keep, g.size()), g.size());
  Matrix q = loopy_laplacian(g);
  KronResult result = iterative ? kron_reduce_iterative(q, alpha) : kron_reduce(q, alpha);
  json j;
  json labels = json::array();
  for (int i : alpha.indices()) labels.push_back(i + 1);
  j["keep"] = labels;
  j["q_red"] = matrix_to_json(result.q_red);
  j["n"] = alpha.size();
  j["edges"] = edges_to_json(result.g_red);
  if (emit_acc) {
    AccompanyingMatrices acc = accompanying_matrices(q, alpha);
    j["rac"] = matrix_to_json(acc.rac);
    j["lac"] = matrix_to_json(acc.lac);
  }
  emit(j.dump(2), out_path);
  return 0;
}

ExtendedResistance resist_by_method(const WeightedDigraph& g, int a, int b,
                                    const std::string& method) {
  if (method == "schur") return resistance_general(g, a, b);
  if (method == "pinv") return ExtendedResistance::finite(resistance_strongly_connected(g, a, b));
  if (method == "balanced") return ExtendedResistance::finite(resistance_balanced_pinv(g, a, b));
  throw ParseError("unknown method: " + method);
}

int run_resistance(const std::string& graph_path, const std::string& pair, bool all,
                   const std::string& method, const std::string& format,
                   const std::string& out_path) {
  WeightedDigraph g = load_graph(graph_path);
  if (all == !pair.empty()) throw ParseError("specify exactly one of --pair and --all");
  if (all) {
    const int n = g.size();
    if (format == "csv") {
      std::string csv;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (j > 0) csv += ',';
          csv += i == j ? "0" : extended_to_text(resist_by_method(g, i, j, method));
        }
        csv += '\n';
      }
      emit(csv, out_path);
    } else {
      json rows = json::array();
      for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) {
          row.push_back(i == j ? json(0.0) : extended_to_json(resist_by_method(g, i, j, method)));
        }
        rows.push_back(row);
      }
      json j;
      j["method"] = method;
      j["resistance"] = rows;
      emit(j.dump(2), out_path);
    }
    return 0;
  }
  auto nodes = parse_labels(pair, g.size());
  if (nodes.size() != 2) throw ParseError("--pair expects two comma-separated labels");
  ExtendedResistance r = resist_by_method(g, nodes[0], nodes[1], method);
  if (format == "csv") {
    emit(extended_to_text(r), out_path);
  } else {
    json j;
    j["method"] = method;
    j["pair"] = {nodes[0] + 1, nodes[1] + 1};
    j["resistance"] = extended_to_json(r);
    emit(j.dump(2), out_path);
  }
  return 0;
}

int run_metric(const std::string& graph_path, const std::string& out_path) {
  WeightedDigraph g = load_graph(graph_path);
  Matrix d = metric_matrix(g);
  Matrix d2 = d.cwiseProduct(d);
  const int n = g.size();
  Matrix pi = Matrix::Identity(n, n) - Matrix::Ones(n, n) / n;
  Matrix gram = -0.5 * pi * d2 * pi;
  json j;
  j["metric"] = matrix_to_json(d);
  json eigs = json::array();
  for (const auto& ev : eigenvalues(0.5 * (gram + gram.transpose()))) eigs.push_back(ev.real());
  j["gram_eigenvalues"] = eigs;
  j["is_edm"] = edm_check(d2, 1e-8);
  emit(j.dump(2), out_path);
  return 0;
}

int run_compare(const std::string& graph_path, const std::string& methods_csv,
                const std::string& out_path) {
  WeightedDigraph g = load_graph(graph_path);
  std::vector<std::string> methods;
  {
    std::istringstream in(methods_csv);
    std::string token;
    while (std::getline(in, token, ',')) methods.push_back(token);
  }
  const int n = g.size();
  json j;
  for (const auto& method : methods) {
    if (method == "schur" || method == "pinv" || method == "balanced") {
      json rows = json::array();
      for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int k = 0; k < n; ++k) {
          row.push_back(i == k ? json(0.0) : extended_to_json(resist_by_method(g, i, k, method)));
        }
        rows.push_back(row);
      }
      j[method] = rows;
    } else if (method == "lyapunov") {
      Matrix x = lyapunov_bundle(g).x;
      Matrix r = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          if (i != k) r(i, k) = lyapunov_resistance_from_x(x, i, k);
        }
      }
      j[method] = matrix_to_json(r);
    } else if (method == "omega") {
      j[method] = matrix_to_json(resistance_distance(transition_matrix(g)));
    } else if (method == "hitting") {
      j[method] = matrix_to_json(hitting_prob_metric(g));
    } else {
      throw ParseError("unknown method: " + method);
    }
  }
  // Pairwise discrepancies among the methods that estimate R itself.
  json disc = json::object();
  std::vector<std::string> r_methods;
  for (const auto& m : methods) {
    if (m == "schur" || m == "pinv" || m == "balanced") r_methods.push_back(m);
  }
  for (std::size_t u = 0; u < r_methods.size(); ++u) {
    for (std::size_t v = u + 1; v < r_methods.size(); ++v) {
      double max_diff = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          const auto& lhs = j[r_methods[u]][i][k];
          const auto& rhs = j[r_methods[v]][i][k];
          if (lhs.is_number() && rhs.is_number()) {
            max_diff = std::max(max_diff, std::abs(lhs.get<double>() - rhs.get<double>()));
          }
        }
      }
      disc[r_methods[u] + "_vs_" + r_methods[v]] = max_diff;
    }
  }
  j["max_discrepancy"] = disc;
  emit(j.dump(2), out_path);
  return 0;
}

int run_simulate(const std::string& graph_path, int from, int to, std::int64_t trials,
                 std::uint64_t seed, std::int64_t max_steps, const std::string& out_path) {
  WeightedDigraph g = load_graph(graph_path);
  if (from < 1 || from > g.size() || to < 1 || to > g.size()) {
    throw PreconditionError("node label out of range");
  }
  WalkConfig cfg{trials, seed, max_steps};
  EscapeEstimate est = simulate_escape(g, from - 1, to - 1, cfg);
  json j;
  j["estimate"] = est.p_hat;
  j["std_err"] = est.std_err;
  j["trials"] = est.trials;
  j["truncated"] = est.truncated;
  emit(j.dump(2), out_path);
  return 0;
}

int fail(const std::string& category, const std::string& message) {
  json j;
  j["error"] = {{"category", category}, {"message", message}};
  std::cerr << j.dump() << std::endl;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kron reduction and effective resistance of directed weighted graphs"};
  app.require_subcommand(1);

  double tol = 1e-9;
  if (const char* env = std::getenv("KRONRES_TOL")) tol = std::atof(env);

  std::string graph_path, out_path;

  auto* info = app.add_subcommand("info", "Graph summary and structural predicates");
  info->add_option("--graph", graph_path, "graph file (JSON or .tsv)")->required();
  info->add_option("--out", out_path, "output file (default stdout)");

  std::string keep;
  bool iterative = false, emit_acc = false;
  auto* reduce = app.add_subcommand("reduce", "Kron reduction onto a boundary set");
  reduce->add_option("--graph", graph_path, "graph file")->required();
  reduce->add_option("--keep", keep, "comma-separated 1-based boundary labels")->required();
  reduce->add_flag("--iterative", iterative, "eliminate interior nodes one at a time");
  reduce->add_flag("--emit-acc", emit_acc, "include the accompanying matrices");
  reduce->add_option("--out", out_path, "output file (default stdout)");

  std::string pair, method = "schur", format = "json";
  bool all = false;
  auto* resistance = app.add_subcommand("resistance", "Effective resistance between nodes");
  resistance->add_option("--graph", graph_path, "graph file")->required();
  resistance->add_option("--pair", pair, "ordered pair a,b (1-based)");
  resistance->add_flag("--all", all, "all ordered pairs");
  resistance->add_option("--method", method, "schur | pinv | balanced")
      ->check(CLI::IsMember({"schur", "pinv", "balanced"}));
  resistance->add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  resistance->add_option("--out", out_path, "output file (default stdout)");

  auto* metric = app.add_subcommand("metric", "Resistance-based metric and EDM diagnostics");
  metric->add_option("--graph", graph_path, "graph file")->required();
  metric->add_option("--out", out_path, "output file (default stdout)");

  std::string methods = "schur,pinv";
  auto* compare = app.add_subcommand("compare", "Compare resistance constructions");
  compare->add_option("--graph", graph_path, "graph file")->required();
  compare->add_option("--methods", methods, "schur,pinv,balanced,lyapunov,omega,hitting");
  compare->add_option("--out", out_path, "output file (default stdout)");

  int from = 0, to = 0;
  std::int64_t trials = 100000, max_steps = 1000000;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo escape probability estimate");
  simulate->add_option("--graph", graph_path, "graph file")->required();
  simulate->add_option("--from", from, "source node (1-based)")->required();
  simulate->add_option("--to", to, "target node (1-based)")->required();
  simulate->add_option("--trials", trials, "number of walks");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--max-steps", max_steps, "per-walk step cap");
  simulate->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (info->parsed()) return run_info(graph_path, out_path, tol);
    if (reduce->parsed()) return run_reduce(graph_path, keep, iterative, emit_acc, out_path);
    if (resistance->parsed())
      return run_resistance(graph_path, pair, all, method, format, out_path);
    if (metric->parsed()) return run_metric(graph_path, out_path);
    if (compare->parsed()) return run_compare(graph_path, methods, out_path);
    if (simulate->parsed())
      return run_simulate(graph_path, from, to, trials, seed, max_steps, out_path);
  } catch (const ParseError& e) {
    return fail("parse", e.what());
  } catch (const PreconditionError& e) {
    return fail("precondition", e.what());
  } catch (const SingularMatrixError& e) {
    return fail("numerical", e.what());
  }
  return 2;
}
