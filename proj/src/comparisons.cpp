#include "kronres/comparisons.hpp"

#include <cmath>

#include "kronres/resistance.hpp"

namespace kronres {

Matrix projection_basis(int n) {
  if (n < 2) throw PreconditionError("projection basis requires n >= 2");
  // Householder reflector mapping 1/sqrt(n) to e_1; rows 2..n span the
  // orthogonal complement of the all-ones vector.
  Vector w = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector u = -w;
  u(0) += 1.0;
  Matrix h = Matrix::Identity(n, n) - (2.0 / u.squaredNorm()) * (u * u.transpose());
  return h.bottomRows(n - 1);
}

namespace {

bool has_globally_reachable_node(const WeightedDigraph& g) {
  for (int k = 0; k < g.size(); ++k) {
    if (is_reachable_subset(g, NodeSubset({k}, g.size()))) return true;
  }
  return false;
}

void check_lyapunov_domain(const WeightedDigraph& g) {
  if ((g.adjacency().diagonal().array() != 0.0).any()) {
    throw PreconditionError("Lyapunov resistance is defined for loop-less graphs only");
  }
  if (g.size() < 2) throw PreconditionError("Lyapunov resistance requires n >= 2");
  if (!has_globally_reachable_node(g)) {
    throw PreconditionError("graph is not connected (no globally reachable node)");
  }
}

}  // namespace

LyapunovResistanceBundle lyapunov_bundle_from_laplacian(const Matrix& l, const Matrix& basis) {
  const int n = static_cast<int>(l.rows());
  if (l.cols() != n || n < 2) throw PreconditionError("Laplacian must be square with n >= 2");
  if (l.rowwise().sum().cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, l.cwiseAbs().maxCoeff())) {
    throw PreconditionError("matrix is not a loop-less Laplacian (nonzero row sums)");
  }
  if (basis.rows() != n - 1 || basis.cols() != n) {
    throw PreconditionError("projection basis has wrong dimensions");
  }
  Matrix lbar = basis * l * basis.transpose();
  Matrix sigma;
  try {
    sigma = lyapunov_solve(lbar, Matrix::Identity(n - 1, n - 1));
  } catch (const SingularMatrixError&) {
    throw PreconditionError("Lyapunov equation has no unique solution; graph is not connected");
  }
  Matrix x = 2.0 * basis.transpose() * sigma * basis;
  return {std::move(sigma), x, pinv(x)};
}

LyapunovResistanceBundle lyapunov_bundle_from_laplacian(const Matrix& l) {
  return lyapunov_bundle_from_laplacian(l, projection_basis(static_cast<int>(l.rows())));
}

LyapunovResistanceBundle lyapunov_bundle(const WeightedDigraph& g, const Matrix& basis) {
  check_lyapunov_domain(g);
  return lyapunov_bundle_from_laplacian(loopless_laplacian(g), basis);
}

LyapunovResistanceBundle lyapunov_bundle(const WeightedDigraph& g) {
  return lyapunov_bundle(g, projection_basis(g.size()));
}

double lyapunov_resistance_from_x(const Matrix& x, int a, int b) {
  if (a < 0 || b < 0 || a >= x.rows() || b >= x.rows() || a == b) {
    throw PreconditionError("invalid node pair");
  }
  return x(a, a) + x(b, b) - x(a, b) - x(b, a);
}

double lyapunov_resistance(const WeightedDigraph& g, int a, int b) {
  return lyapunov_resistance_from_x(lyapunov_bundle(g).x, a, b);
}

std::tuple<Matrix, Matrix, Matrix> hk_decomposition(const WeightedDigraph& g) {
  check_lyapunov_domain(g);
  const int n = g.size();
  Matrix l = loopless_laplacian(g);
  Matrix pi = Matrix::Identity(n, n) - Matrix::Ones(n, n) / n;
  Matrix pil = pi * l;
  Matrix h = l * pinv(pil);
  Matrix k = sylvester_minnorm_solve(pil, 0.5 * (pil - pil.transpose()));
  Matrix lhat_u = lyapunov_bundle(g).lhat_u;
  return {std::move(h), std::move(k), std::move(lhat_u)};
}

Matrix kron_reduce_lyapunov(const WeightedDigraph& g, const NodeSubset& alpha) {
  if (alpha.graph_size() != g.size()) throw PreconditionError("subset does not match graph size");
  if (alpha.size() < 2) throw PreconditionError("reduction requires |alpha| >= 2");
  if (alpha.size() == g.size()) throw PreconditionError("alpha must be a proper subset");
  auto [h, k, lhat_u] = hk_decomposition(g);

  const auto& keep = alpha.indices();
  const int m = alpha.size();
  Matrix pi_m = Matrix::Identity(m, m) - Matrix::Ones(m, m) / m;
  Matrix lhat_red;
  try {
    lhat_red = schur_complement(lhat_u, alpha);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("interior block of the symmetrized Laplacian is singular");
  }
  Matrix h_red = submatrix(h, keep, keep) * pi_m;
  Matrix k_red = submatrix(k, keep, keep) * pi_m;
  return h_red * (Matrix::Identity(m, m) + 2.0 * k_red) * lhat_red;
}

FundamentalMatrix fundamental_matrix(const Matrix& p) {
  const int n = static_cast<int>(p.rows());
  Vector phi = stationary_distribution(p);
  Matrix big_phi = Vector::Ones(n) * phi.transpose();
  Matrix system = Matrix::Identity(n, n) - p + big_phi;
  Matrix f;
  try {
    f = lu_solve(system, Matrix::Identity(n, n)).solution;
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "I - P + Phi is singular: the chain is periodic or reducible, so the "
        "fundamental matrix does not exist");
  }
  return {std::move(f), std::move(phi)};
}

Matrix resistance_distance(const Matrix& p) {
  FundamentalMatrix fm = fundamental_matrix(p);
  const int n = static_cast<int>(p.rows());
  Matrix omega = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) omega(i, j) = fm.f(i, i) + fm.f(j, j) - fm.f(i, j) - fm.f(j, i);
    }
  }
  return omega;
}

Matrix hitting_prob_metric(const WeightedDigraph& g, double beta) {
  if (beta < 0.5) throw PreconditionError("beta must lie in [1/2, infinity)");
  if (!is_strongly_connected(g)) {
    throw PreconditionError("hitting probability metric requires a strongly connected graph");
  }
  Vector phi = stationary_distribution(transition_matrix(g));
  const int n = g.size();
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double p_esc = escape_probability(g, i, j);
      d(i, j) = -(beta * std::log(phi(i)) - (1.0 - beta) * std::log(phi(j)) + std::log(p_esc));
    }
  }
  return d;
}

}  // namespace kronres
