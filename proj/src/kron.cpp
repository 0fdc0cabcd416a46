#include "kronres/kron.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace kronres {

namespace {

void check_reduction_preconditions(const Matrix& q, const NodeSubset& alpha) {
  if (q.rows() != q.cols()) throw PreconditionError("loopy Laplacian must be square");
  if (alpha.graph_size() != q.rows()) throw PreconditionError("subset does not match matrix size");
  if (alpha.size() < 2) throw PreconditionError("Kron reduction requires |alpha| >= 2");
  if (alpha.size() == alpha.graph_size()) {
    throw PreconditionError("alpha must be a proper subset of the nodes");
  }
  WeightedDigraph g = graph_from_loopy(q);
  if (!is_reachable_subset(g, alpha)) {
    throw PreconditionError(
        "alpha is not a reachable subset: some interior node has no directed "
        "path to the boundary");
  }
}

Matrix prune_small(Matrix m) {
  const double max_abs = m.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) return m;
  const double cutoff = 1e-12 * max_abs;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) < cutoff) m(i, j) = 0.0;
    }
  }
  return m;
}

KronResult make_result(Matrix q_red, const NodeSubset& alpha) {
  q_red = prune_small(std::move(q_red));
  WeightedDigraph g_red = graph_from_loopy(q_red, 1e-9);
  return {std::move(q_red), std::move(g_red), alpha};
}

}  // namespace

KronResult kron_reduce(const Matrix& q, const NodeSubset& alpha) {
  check_reduction_preconditions(q, alpha);
  return make_result(schur_complement(q, alpha), alpha);
}

KronResult kron_reduce_iterative(const Matrix& q, const NodeSubset& alpha,
                                 const std::vector<int>& elimination_order) {
  check_reduction_preconditions(q, alpha);

  std::vector<int> order = elimination_order;
  const auto interior = alpha.complement();
  if (order.empty()) {
    order.assign(interior.rbegin(), interior.rend());
  } else {
    std::set<int> want(interior.begin(), interior.end());
    std::set<int> got(order.begin(), order.end());
    if (want != got) {
      throw PreconditionError("elimination order must be a permutation of the interior nodes");
    }
  }

  // labels[k] is the original index of current row/column k
  std::vector<int> labels(q.rows());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = static_cast<int>(k);
  Matrix current = q;

  for (std::size_t step = 0; step < order.size(); ++step) {
    auto it = std::find(labels.begin(), labels.end(), order[step]);
    const int k = static_cast<int>(it - labels.begin());
    const int m = static_cast<int>(current.rows());
    const double pivot = current(k, k);
    if (std::abs(pivot) < 1e-12 * std::max(1.0, current.cwiseAbs().maxCoeff())) {
      throw SingularMatrixError("singular pivot while eliminating node " +
                                std::to_string(order[step] + 1) + " (step " +
                                std::to_string(step + 1) + " of " +
                                std::to_string(order.size()) + ")");
    }
    std::vector<int> rest;
    rest.reserve(m - 1);
    for (int i = 0; i < m; ++i) {
      if (i != k) rest.push_back(i);
    }
    Matrix next = submatrix(current, rest, rest);
    Matrix col = submatrix(current, rest, {k});
    Matrix row = submatrix(current, {k}, rest);
    next -= col * row / pivot;
    current = std::move(next);
    labels.erase(it);
  }
  return make_result(std::move(current), alpha);
}

AccompanyingMatrices accompanying_matrices(const Matrix& q, const NodeSubset& alpha) {
  check_reduction_preconditions(q, alpha);
  const auto& keep = alpha.indices();
  const auto interior = alpha.complement();
  Matrix q_ii = submatrix(q, interior, interior);
  Matrix q_ik = submatrix(q, interior, keep);
  Matrix q_ki = submatrix(q, keep, interior);
  Matrix inv_ii = lu_solve(q_ii, Matrix::Identity(q_ii.rows(), q_ii.cols())).solution;
  return {-inv_ii * q_ik, -q_ki * inv_ii};
}

Vector reduce_injections(const Matrix& q, const NodeSubset& alpha, const Vector& inj) {
  if (inj.size() != q.rows()) throw PreconditionError("injection vector size mismatch");
  AccompanyingMatrices acc = accompanying_matrices(q, alpha);
  return subvector(inj, alpha.indices()) + acc.lac * subvector(inj, alpha.complement());
}

std::tuple<Matrix, Matrix, Matrix> self_loop_decomposition(const Matrix& q,
                                                           const NodeSubset& alpha) {
  check_reduction_preconditions(q, alpha);
  WeightedDigraph g = graph_from_loopy(q);
  Matrix l = loopless_laplacian(g);
  const auto& keep = alpha.indices();
  const auto interior = alpha.complement();

  Matrix l_ii = submatrix(l, interior, interior);
  Matrix inv_l_ii = lu_solve(l_ii, Matrix::Identity(l_ii.rows(), l_ii.cols())).solution;
  Matrix l_lac = -submatrix(l, keep, interior) * inv_l_ii;
  Matrix l_rac = -inv_l_ii * submatrix(l, interior, keep);
  Matrix l_red = submatrix(l, keep, keep) + l_lac * submatrix(l, interior, keep);

  Vector loops = g.adjacency().diagonal();
  Matrix boundary_loops = subvector(loops, keep).asDiagonal();
  Matrix interior_loops = subvector(loops, interior).asDiagonal();

  const int m = static_cast<int>(interior.size());
  Matrix middle = Matrix::Identity(m, m) + interior_loops * inv_l_ii;
  Matrix s;
  try {
    s = l_lac * lu_solve(middle, interior_loops * l_rac).solution;
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "self-loop decomposition failed: I + diag(interior loops) * "
        "L[a^c,a^c]^{-1} is singular");
  }
  return {l_red, boundary_loops, s};
}

bool has_reduced_edge(const WeightedDigraph& g, const NodeSubset& alpha, int i, int j) {
  if (!alpha.contains(i) || !alpha.contains(j)) {
    throw PreconditionError("endpoints must be boundary nodes");
  }
  if (i == j) throw PreconditionError("endpoints must be distinct");

  // DFS from i, passing only through interior nodes, looking for j.
  std::vector<char> visited(g.size(), 0);
  std::deque<int> stack{i};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < g.size(); ++v) {
      if (!(g.weight(u, v) > 0.0)) continue;
      if (v == j) return true;
      if (!alpha.contains(v) && !visited[v]) {
        visited[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return false;
}

Matrix grounded_augmentation(const Matrix& q) {
  WeightedDigraph g = graph_from_loopy(q);
  const int n = g.size();
  Vector loops = g.adjacency().diagonal();
  Matrix out = Matrix::Zero(n + 1, n + 1);
  out.topLeftCorner(n, n) = q;
  out.block(0, n, n, 1) = -loops;
  out.block(n, 0, 1, n) = -loops.transpose();
  out(n, n) = loops.sum();
  return out;
}

}  // namespace kronres
