#include "kronres/resistance.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace kronres {

ExtendedResistance ExtendedResistance::finite(double value) {
  if (!(value > 0.0)) throw PreconditionError("finite resistance must be positive");
  return ExtendedResistance(Kind::Finite, value);
}

double ExtendedResistance::value() const {
  if (kind_ != Kind::Finite) throw PreconditionError("resistance value is not finite");
  return value_;
}

namespace {

void check_pair(const WeightedDigraph& g, int a, int b) {
  if (a < 0 || a >= g.size() || b < 0 || b >= g.size()) {
    throw PreconditionError("node index out of range");
  }
  if (a == b) throw PreconditionError("nodes a and b must be distinct");
}

NodeSubset pair_subset(const WeightedDigraph& g, int a, int b) {
  NodeSubset pair({a, b}, g.size());
  if (!is_reachable_subset(g, pair)) {
    throw PreconditionError("{a,b} is not a reachable subset of the graph");
  }
  return pair;
}

double degree_with_virtual_loop(const WeightedDigraph& g, int i) {
  double d = g.adjacency().row(i).sum();
  return d > 0.0 ? d : 1.0;
}

}  // namespace

VoltageVector voltage_vector(const WeightedDigraph& g, int a, int b) {
  check_pair(g, a, b);
  NodeSubset pair = pair_subset(g, a, b);

  Vector v = Vector::Zero(g.size());
  v(a) = 1.0;
  const auto interior = pair.complement();
  if (!interior.empty()) {
    Matrix l = loopless_laplacian(g);
    Matrix l_ii = submatrix(l, interior, interior);
    Matrix rhs = submatrix(g.adjacency(), interior, {a});
    Matrix x;
    try {
      x = lu_solve(l_ii, rhs).solution;
    } catch (const SingularMatrixError&) {
      throw PreconditionError("{a,b} is not a reachable subset (singular interior block)");
    }
    for (std::size_t k = 0; k < interior.size(); ++k) v(interior[k]) = x(k, 0);
  }
  return {a, b, std::move(v)};
}

double effective_conductance(const WeightedDigraph& g, int a, int b) {
  check_pair(g, a, b);
  NodeSubset pair = pair_subset(g, a, b);
  Matrix reduced;
  try {
    reduced = schur_complement(loopless_laplacian(g), pair);
  } catch (const SingularMatrixError&) {
    throw PreconditionError("{a,b} is not a reachable subset (singular interior block)");
  }
  // reduced is ordered by increasing node index
  return a < b ? reduced(0, 0) : reduced(1, 1);
}

double effective_resistance(const WeightedDigraph& g, int a, int b) {
  return 1.0 / effective_conductance(g, a, b);
}

ExtendedResistance resistance_general(const WeightedDigraph& g, int a, int b) {
  check_pair(g, a, b);
  std::vector<int> reach = reachable_from(g, a);
  if (!std::binary_search(reach.begin(), reach.end(), b)) {
    return ExtendedResistance::infinite();
  }
  // Subgraph on the nodes reachable from a, in increasing index order.
  const int m = static_cast<int>(reach.size());
  Matrix sub_adj = submatrix(g.adjacency(), reach, reach);
  WeightedDigraph sub(std::move(sub_adj));
  int a_local = static_cast<int>(std::lower_bound(reach.begin(), reach.end(), a) - reach.begin());
  int b_local = static_cast<int>(std::lower_bound(reach.begin(), reach.end(), b) - reach.begin());

  NodeSubset pair({a_local, b_local}, m);
  if (!is_reachable_subset(sub, pair)) {
    return ExtendedResistance::undefined();
  }
  return ExtendedResistance::finite(effective_resistance(sub, a_local, b_local));
}

double escape_probability(const WeightedDigraph& g, int a, int b) {
  return effective_conductance(g, a, b) / degree_with_virtual_loop(g, a);
}

double first_passage_edge_probability(const WeightedDigraph& g, int a, int b) {
  check_pair(g, a, b);
  if (!g.has_edge(a, b)) throw PreconditionError("edge from a to b does not exist");
  return g.weight(a, b) / effective_conductance(g, a, b);
}

Vector stationary_distribution(const Matrix& p) {
  const int n = static_cast<int>(p.rows());
  if (p.rows() != p.cols() || n < 1) throw PreconditionError("transition matrix must be square");
  // (P^T - I) phi = 0 with the normalization row sum(phi) = 1 appended.
  Matrix system(n + 1, n);
  system.topRows(n) = p.transpose() - Matrix::Identity(n, n);
  system.bottomRows(1).setOnes();
  Vector rhs = Vector::Zero(n + 1);
  rhs(n) = 1.0;
  Vector phi = system.completeOrthogonalDecomposition().solve(rhs);
  const double residual = (system * phi - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    throw SingularMatrixError("stationary distribution solve failed (residual " +
                              std::to_string(residual) + ")");
  }
  return phi;
}

BalancingMatrix balancing(const WeightedDigraph& g) {
  if (!is_strongly_connected(g)) {
    throw PreconditionError("balancing matrix requires a strongly connected graph");
  }
  Vector phi = stationary_distribution(transition_matrix(g));
  Vector m(g.size());
  for (int i = 0; i < g.size(); ++i) {
    if (!(phi(i) > 0.0)) {
      throw SingularMatrixError("stationary distribution is not strictly positive");
    }
    m(i) = phi(i) / degree_with_virtual_loop(g, i);
  }
  return {std::move(m)};
}

double resistance_balanced_pinv(const WeightedDigraph& g, int a, int b) {
  check_pair(g, a, b);
  if (!is_strongly_connected(g)) {
    throw PreconditionError("balanced pseudoinverse path requires a strongly connected graph");
  }
  if (!is_weight_balanced(g)) {
    throw PreconditionError("balanced pseudoinverse path requires a weight-balanced graph");
  }
  Matrix ldag = balanced_pinv(loopless_laplacian(g));
  return ldag(a, a) + ldag(b, b) - ldag(a, b) - ldag(b, a);
}

double resistance_strongly_connected(const WeightedDigraph& g, int a, int b) {
  check_pair(g, a, b);
  BalancingMatrix bal = balancing(g);
  Matrix ml = bal.m.asDiagonal() * loopless_laplacian(g);
  Matrix mldag = pinv(ml);
  return bal.m(a) * (mldag(a, a) + mldag(b, b) - mldag(a, b) - mldag(b, a));
}

ResistanceMatrix resistance_matrix(const WeightedDigraph& g) {
  const int n = g.size();
  ResistanceMatrix out;
  out.r.assign(n, std::vector<ExtendedResistance>(n, ExtendedResistance::zero()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) out.r[i][j] = resistance_general(g, i, j);
    }
  }
  return out;
}

Matrix metric_matrix(const WeightedDigraph& g) {
  if (!is_strongly_connected(g)) {
    throw PreconditionError("metric matrix requires a strongly connected graph");
  }
  BalancingMatrix bal = balancing(g);
  const int n = g.size();
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) d(i, j) = std::sqrt(effective_resistance(g, i, j) / bal.m(i));
    }
  }
  return d;
}

double total_resistance(const WeightedDigraph& g) {
  if (!is_strongly_connected(g)) {
    throw PreconditionError("total resistance requires a strongly connected graph");
  }
  double sum = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (i != j) sum += effective_resistance(g, i, j);
    }
  }
  return 0.5 * sum;
}

bool edm_check(const Matrix& r2, double tol) {
  if (r2.rows() != r2.cols()) throw PreconditionError("edm_check requires a square matrix");
  const double scale = std::max(1.0, r2.cwiseAbs().maxCoeff());
  if ((r2 - r2.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw PreconditionError("edm_check requires a symmetric matrix");
  }
  const int n = static_cast<int>(r2.rows());
  Matrix pi = Matrix::Identity(n, n) - Matrix::Ones(n, n) / n;
  Matrix gram = -0.5 * pi * r2 * pi;
  return is_psd(0.5 * (gram + gram.transpose()), tol);
}

}  // namespace kronres
