#include "kronres/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace kronres {

Matrix submatrix(const Matrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= a.rows()) throw PreconditionError("row index out of range");
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || cols[j] >= a.cols()) throw PreconditionError("column index out of range");
      out(i, j) = a(rows[i], cols[j]);
    }
  }
  return out;
}

Vector subvector(const Vector& v, const std::vector<int>& idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= v.size()) throw PreconditionError("index out of range");
    out(i) = v(idx[i]);
  }
  return out;
}

SolveReport lu_solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw PreconditionError("lu_solve requires a square matrix");
  if (a.rows() != b.rows()) throw PreconditionError("dimension mismatch in lu_solve");
  if (a.rows() == 0) return {Matrix(0, b.cols()), 0.0, std::nullopt};

  Eigen::PartialPivLU<Matrix> lu(a);
  const double scale = a.cwiseAbs().maxCoeff();
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (scale == 0.0 || min_pivot < 1e-12 * scale) {
    throw SingularMatrixError("matrix is singular to working precision (pivot " +
                              std::to_string(min_pivot) + ")");
  }
  SolveReport report;
  report.solution = lu.solve(b);
  report.residual_norm = (a * report.solution - b).cwiseAbs().maxCoeff();
  double rcond = lu.rcond();
  if (rcond > 0.0) report.condition_estimate = 1.0 / rcond;
  return report;
}

Matrix schur_complement(const Matrix& a, const NodeSubset& alpha) {
  if (a.rows() != a.cols()) throw PreconditionError("schur_complement requires a square matrix");
  if (alpha.graph_size() != a.rows()) throw PreconditionError("subset does not match matrix size");
  const auto& keep = alpha.indices();
  const auto interior = alpha.complement();
  if (interior.empty()) return a;

  Matrix a_kk = submatrix(a, keep, keep);
  Matrix a_ki = submatrix(a, keep, interior);
  Matrix a_ii = submatrix(a, interior, interior);
  Matrix a_ik = submatrix(a, interior, keep);
  return a_kk - a_ki * lu_solve(a_ii, a_ik).solution;
}

Matrix pinv(const Matrix& a, double rank_tol) {
  if (rank_tol <= 0.0) throw PreconditionError("rank tolerance must be positive");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return Matrix::Zero(a.cols(), a.rows());
  const double cutoff = rank_tol * sv(0);
  Vector inv_sv = Vector::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

Matrix balanced_pinv(const Matrix& l, double gamma) {
  if (gamma == 0.0) throw PreconditionError("gamma must be nonzero");
  if (l.rows() != l.cols()) throw PreconditionError("balanced_pinv requires a square matrix");
  const int n = static_cast<int>(l.rows());
  Matrix ones = Matrix::Ones(n, n);
  Matrix shifted = l + (gamma / n) * ones;
  return lu_solve(shifted, Matrix::Identity(n, n)).solution - ones / (n * gamma);
}

namespace {

// Linearized operator of X -> aX + Xa^T under column-major vec:
// I (x) a + a (x) I.
Matrix lyapunov_operator(const Matrix& a) {
  const int m = static_cast<int>(a.rows());
  Matrix op = Matrix::Zero(m * m, m * m);
  for (int col_block = 0; col_block < m; ++col_block) {
    op.block(col_block * m, col_block * m, m, m) += a;  // I (x) a
    for (int row_block = 0; row_block < m; ++row_block) {
      // a (x) I contributes a(row_block, col_block) * I per block
      op.block(row_block * m, col_block * m, m, m) +=
          a(row_block, col_block) * Matrix::Identity(m, m);
    }
  }
  return op;
}

Matrix unvec(const Vector& v, int m) {
  Matrix out(m, m);
  for (int j = 0; j < m; ++j) out.col(j) = v.segment(j * m, m);
  return out;
}

Vector vec(const Matrix& x) {
  Vector out(x.size());
  for (int j = 0; j < x.cols(); ++j) out.segment(j * x.rows(), x.rows()) = x.col(j);
  return out;
}

}  // namespace

Matrix lyapunov_solve(const Matrix& a, const Matrix& c) {
  if (a.rows() != a.cols() || c.rows() != c.cols() || a.rows() != c.rows()) {
    throw PreconditionError("lyapunov_solve requires square matrices of equal size");
  }
  const int m = static_cast<int>(a.rows());
  if (m == 0) return Matrix(0, 0);
  Matrix op = lyapunov_operator(a);
  Vector x;
  try {
    x = lu_solve(op, vec(c)).solution;
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "Lyapunov operator is singular; the spectrum of the coefficient matrix "
        "violates the stability hypothesis");
  }
  Matrix sigma = unvec(x, m);
  const double residual = (a * sigma + sigma * a.transpose() - c).cwiseAbs().maxCoeff();
  const double bound = 1e-8 * std::max(1.0, c.cwiseAbs().maxCoeff());
  if (residual > bound) {
    throw SingularMatrixError("Lyapunov solve residual " + std::to_string(residual) +
                              " exceeds tolerance");
  }
  return sigma;
}

Matrix sylvester_minnorm_solve(const Matrix& a, const Matrix& c) {
  if (a.rows() != a.cols() || c.rows() != c.cols() || a.rows() != c.rows()) {
    throw PreconditionError("sylvester_minnorm_solve requires square matrices of equal size");
  }
  const int m = static_cast<int>(a.rows());
  if (m == 0) return Matrix(0, 0);
  Matrix op = lyapunov_operator(a);
  Vector x = pinv(op) * vec(c);
  return unvec(x, m);
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("eigenvalues requires a square matrix");
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> out(solver.eigenvalues().data(),
                                        solver.eigenvalues().data() + a.rows());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

bool is_psd(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) throw PreconditionError("is_psd requires a square matrix");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    throw PreconditionError("is_psd requires a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.transpose()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace kronres
