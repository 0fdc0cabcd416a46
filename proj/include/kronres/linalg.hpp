#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "kronres/graph.hpp"

namespace kronres {

struct SolveReport {
  Matrix solution;
  double residual_norm = 0.0;
  std::optional<double> condition_estimate;
};

/// Rows/columns of `a` picked in the order of the index lists.
Matrix submatrix(const Matrix& a, const std::vector<int>& rows, const std::vector<int>& cols);

Vector subvector(const Vector& v, const std::vector<int>& idx);

/// Partial-pivoting LU solve of aX = b. Throws SingularMatrixError when a
/// pivot falls below 1e-12 * max|a|; singular interior blocks are how a
/// failed reachability hypothesis surfaces numerically.
SolveReport lu_solve(const Matrix& a, const Matrix& b);

/// a[alpha,alpha] - a[alpha,alpha^c] a[alpha^c,alpha^c]^{-1} a[alpha^c,alpha].
/// With empty interior the matrix is returned unchanged.
Matrix schur_complement(const Matrix& a, const NodeSubset& alpha);

/// SVD pseudoinverse; singular values below rank_tol * sigma_max are
/// treated as zero.
Matrix pinv(const Matrix& a, double rank_tol = 1e-12);

/// (l + (gamma/n) 11^T)^{-1} - (1/(n gamma)) 11^T. Equals pinv(l) when l is
/// the Laplacian of a strongly connected weight-balanced graph.
Matrix balanced_pinv(const Matrix& l, double gamma = 1.0);

/// Unique solution of a Sigma + Sigma a^T = c via the Kronecker-linearized
/// dense system. Throws if the linearized system is singular.
Matrix lyapunov_solve(const Matrix& a, const Matrix& c);

/// Minimum-norm least-squares K with aK + Ka^T = c. Always defined; the
/// operator is allowed to be singular.
Matrix sylvester_minnorm_solve(const Matrix& a, const Matrix& c);

/// All eigenvalues, ordered by increasing real part.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

/// True iff a is symmetric within tol and its smallest eigenvalue >= -tol.
bool is_psd(const Matrix& a, double tol);

}  // namespace kronres
