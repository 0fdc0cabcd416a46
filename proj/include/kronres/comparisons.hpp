#pragma once

#include <tuple>

#include "kronres/graph.hpp"
#include "kronres/linalg.hpp"

namespace kronres {

/// (n-1) x n matrix with orthonormal rows spanning the complement of the
/// all-ones vector: P 1 = 0, P P^T = I, P^T P = Pi_n.
Matrix projection_basis(int n);

struct LyapunovResistanceBundle {
  Matrix sigma;   // (n-1) x (n-1), symmetric positive definite
  Matrix x;       // n x n, symmetric PSD, zero row/column sums
  Matrix lhat_u;  // pinv(x): signed symmetric Laplacian
};

/// Solves Lbar Sigma + Sigma Lbar^T = I with Lbar = P L P^T and forms
/// X = 2 P^T Sigma P. Requires a connected (globally reachable node),
/// loop-less graph.
LyapunovResistanceBundle lyapunov_bundle(const WeightedDigraph& g, const Matrix& basis);

LyapunovResistanceBundle lyapunov_bundle(const WeightedDigraph& g);

/// Matrix-level pipeline for reduced Laplacians that may carry negative
/// edge weights; requires zero row sums but no sign pattern.
LyapunovResistanceBundle lyapunov_bundle_from_laplacian(const Matrix& l, const Matrix& basis);

LyapunovResistanceBundle lyapunov_bundle_from_laplacian(const Matrix& l);

/// R-tilde(a,b) = (e_a - e_b)^T X (e_a - e_b).
double lyapunov_resistance(const WeightedDigraph& g, int a, int b);

double lyapunov_resistance_from_x(const Matrix& x, int a, int b);

/// Decomposition L = H (I + 2K) Lhat_u with H = L (Pi L)^dagger and K the
/// minimum-norm solution of (Pi L) K + K (Pi L)^T = ((Pi L) - (Pi L)^T)/2.
std::tuple<Matrix, Matrix, Matrix> hk_decomposition(const WeightedDigraph& g);

/// Symmetrization-based Kron reduction:
/// L^{k-r} = H[alpha,alpha] Pi (I + 2 K[alpha,alpha] Pi) Schur(Lhat_u).
/// The result may have positive off-diagonals (negative edge weights).
Matrix kron_reduce_lyapunov(const WeightedDigraph& g, const NodeSubset& alpha);

struct FundamentalMatrix {
  Matrix f;    // (I - P + Phi)^{-1}
  Vector phi;  // stationary distribution
};

FundamentalMatrix fundamental_matrix(const Matrix& p);

/// Omega_ij = F_ii + F_jj - F_ij - F_ji; symmetric, zero diagonal.
Matrix resistance_distance(const Matrix& p);

/// d^beta(i,j) = -log(phi_i^beta P_esc(i,j) / phi_j^{1-beta}).
Matrix hitting_prob_metric(const WeightedDigraph& g, double beta = 1.0);

}  // namespace kronres
