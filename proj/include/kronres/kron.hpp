#pragma once

#include <tuple>
#include <vector>

#include "kronres/graph.hpp"
#include "kronres/linalg.hpp"

namespace kronres {

struct KronResult {
  Matrix q_red;            // |alpha| x |alpha| loopy Laplacian
  WeightedDigraph g_red;   // graph recovered from q_red
  NodeSubset alpha;
};

struct AccompanyingMatrices {
  Matrix rac;  // (n - |alpha|) x |alpha|, nonnegative
  Matrix lac;  // |alpha| x (n - |alpha|), nonnegative
};

/// Schur complement of the loopy Laplacian onto the boundary set.
/// Requires |alpha| >= 2, alpha proper and reachable.
KronResult kron_reduce(const Matrix& q, const NodeSubset& alpha);

/// Eliminates interior nodes one at a time via 1x1 Schur complements.
/// The elimination order is given in original node indices; empty means
/// descending index order. Agrees with kron_reduce for every order.
KronResult kron_reduce_iterative(const Matrix& q, const NodeSubset& alpha,
                                 const std::vector<int>& elimination_order = {});

/// rac = -Q[a^c,a^c]^{-1} Q[a^c,alpha], lac = -Q[alpha,a^c] Q[a^c,a^c]^{-1}.
AccompanyingMatrices accompanying_matrices(const Matrix& q, const NodeSubset& alpha);

/// Reduced injections I_red = inj[alpha] + lac * inj[alpha^c].
Vector reduce_injections(const Matrix& q, const NodeSubset& alpha, const Vector& inj);

/// Q_red = L/L[a^c,a^c] + diag(boundary self-loops) + S with S >= 0.
/// Returns (reduced loop-less part, boundary self-loop diagonal, S).
std::tuple<Matrix, Matrix, Matrix> self_loop_decomposition(const Matrix& q,
                                                           const NodeSubset& alpha);

/// Purely combinatorial support oracle: true iff there is a directed path
/// from i to j whose intermediate nodes all lie in alpha^c.
bool has_reduced_edge(const WeightedDigraph& g, const NodeSubset& alpha, int i, int j);

/// Augmented loop-less Laplacian of size n+1 rewiring every self-loop into
/// a bidirectional edge to a grounded node.
Matrix grounded_augmentation(const Matrix& q);

}  // namespace kronres
