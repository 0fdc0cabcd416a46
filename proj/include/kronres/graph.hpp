#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace kronres {

/// Thrown when an operation's precondition is violated (bad indices,
/// non-reachable subsets, graphs outside a method's domain, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a linear system is singular to working precision.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Edge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

/// Directed weighted graph with optional self-loops, stored as a dense
/// nonnegative adjacency matrix. Immutable after construction.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(Matrix adj);

  int size() const { return static_cast<int>(adj_.rows()); }
  const Matrix& adjacency() const { return adj_; }
  double weight(int i, int j) const { return adj_(i, j); }
  bool has_edge(int i, int j) const { return adj_(i, j) > 0.0; }

  std::vector<Edge> edges() const;

 private:
  Matrix adj_;
};

/// Ordered boundary set alpha; indices strictly increasing in [0, n).
class NodeSubset {
 public:
  NodeSubset(std::vector<int> indices, int n);

  const std::vector<int>& indices() const { return alpha_; }
  int size() const { return static_cast<int>(alpha_.size()); }
  int graph_size() const { return n_; }
  bool contains(int i) const;

  /// Complement alpha^c, in increasing order.
  std::vector<int> complement() const;

 private:
  std::vector<int> alpha_;
  int n_;
};

WeightedDigraph build_graph(int n, const std::vector<Edge>& edges);

Vector degree_vector(const WeightedDigraph& g);

/// Q = L + diag(A_ii); row i of Q sums to the self-loop weight A_ii.
Matrix loopy_laplacian(const WeightedDigraph& g);

/// L = D - A; every row sums to zero. Self-loops are invisible to it.
Matrix loopless_laplacian(const WeightedDigraph& g);

/// Inverse of loopy_laplacian: A_ii = row sum, A_ij = -Q_ij. Validates
/// the Z-matrix and row-sum invariants within tol.
WeightedDigraph graph_from_loopy(const Matrix& q, double tol = 1e-9);

/// True iff every interior node has a directed path to some node of alpha.
bool is_reachable_subset(const WeightedDigraph& g, const NodeSubset& alpha);

bool is_strongly_connected(const WeightedDigraph& g);

bool is_weight_balanced(const WeightedDigraph& g, double tol = 1e-9);

/// Row-stochastic P = D^{-1}A; rows with zero out-degree get a virtual
/// self-loop (P_ii = 1). The stored graph is never mutated.
Matrix transition_matrix(const WeightedDigraph& g);

/// Nodes reachable from `start` by directed paths (including start).
std::vector<int> reachable_from(const WeightedDigraph& g, int start);

}  // namespace kronres
