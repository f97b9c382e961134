#include "qexpand/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qexpand {

double max_abs(const CMat& M) {
  if (M.size() == 0) return 0.0;
  return M.cwiseAbs().maxCoeff();
}

double hermitian_deviation(const CMat& M) {
  if (M.rows() != M.cols()) fail("NotHermitian", "matrix is not square");
  return max_abs(M - M.adjoint());
}

EigResult hermitian_eig(const CMat& M, double tol) {
  const double scale = std::max(1.0, max_abs(M));
  const double dev = hermitian_deviation(M);
  if (dev > tol * scale)
    fail("NotHermitian", "Hermitian deviation " + std::to_string(dev) +
                             " exceeds tolerance " + std::to_string(tol * scale));
  // Work on the symmetrized matrix so roundoff in the input cannot leak
  // imaginary parts into the eigenvalues.
  const CMat H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(H);
  if (solver.info() != Eigen::Success) fail("NotHermitian", "eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMat kron(const CMat& A, const CMat& B) {
  CMat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

int rank_eps(const CMat& M, double tol) {
  const EigResult eig = hermitian_eig(M, std::max(kTolHerm, tol));
  int rank = 0;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < -tol)
      fail("NotPSD", "eigenvalue " + std::to_string(lambda) + " below -tolerance");
    if (lambda > tol) ++rank;
  }
  return rank;
}

bool is_projection(const CMat& M, double tol) {
  if (M.rows() != M.cols()) return false;
  if ((M - M.adjoint()).norm() > tol) return false;
  return (M * M - M).norm() <= tol;
}

double operator_norm(const CMat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(M);
  return svd.singularValues()[0];
}

CVec vec(const CMat& X) {
  CVec v(X.rows() * X.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) v[i * X.cols() + j] = X(i, j);
  return v;
}

CMat unvec(const CVec& v, int rows, int cols) {
  CMat X(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) X(i, j) = v[static_cast<Eigen::Index>(i) * cols + j];
  return X;
}

CMat column_space_basis(const CMat& columns, double tol) {
  // Modified Gram-Schmidt with column pivoting by remaining norm would be
  // overkill; plain MGS with a drop tolerance is deterministic and stable
  // enough at our sizes.
  CMat basis(columns.rows(), columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    CVec w = columns.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < kept; ++k) w -= basis.col(k).dot(w) * basis.col(k);
    const double n = w.norm();
    if (n > tol) basis.col(kept++) = w / n;
  }
  return basis.leftCols(kept);
}

double subspace_distance(const CMat& U, const CMat& V) {
  if (U.cols() != V.cols()) return 1.0;
  if (U.cols() == 0) return 0.0;
  const CMat PU = U * U.adjoint();
  const CMat PV = V * V.adjoint();
  return operator_norm(PU - PV);
}

}  // namespace qexpand
