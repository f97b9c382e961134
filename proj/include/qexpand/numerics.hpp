/**
 * Dense complex linear algebra kernel used by every other module.
 *
 * Conventions fixed here and relied on everywhere else:
 *  - Matrices are dense complex doubles (Eigen::MatrixXcd).
 *  - vec() stacks rows: vec(X)[i*n + j] = X(i,j).  With this convention
 *    vec(A X B) = (A (x) B^T) vec(X), the Hilbert-Schmidt inner product
 *    Tr(X^* Y) equals the Euclidean inner product of the vecs, and the
 *    Kronecker product satisfies (A(x)B)[(i*rB+k)][(j*cB+l)] = A[i][j]B[k][l].
 *  - hermitian_eig returns eigenvalues sorted ascending with orthonormal
 *    eigenvector columns; it is deterministic for a fixed input bit pattern.
 */
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qexpand/error.hpp"

namespace qexpand {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Relative Hermitian-deviation tolerance used when none is supplied.
inline constexpr double kTolHerm = 1e-10;
/// Relative spectral reconstruction tolerance (documented contract).
inline constexpr double kTolReconstruct = 1e-8;

/// Largest absolute entry; zero for empty matrices.
double max_abs(const CMat& M);

/// Hermitian deviation max_ij |M(i,j) - conj(M(j,i))|.
double hermitian_deviation(const CMat& M);

struct EigResult {
  RVec eigenvalues;  ///< ascending
  CMat eigenvectors; ///< orthonormal columns, k-th column pairs with eigenvalues[k]
};

/**
 * @brief Eigendecomposition of a Hermitian matrix.
 * @param M square matrix, Hermitian within tol (relative to max(1, max|M|)).
 * @param tol relative Hermitian tolerance (default 1e-10).
 * @throws Error("NotHermitian") if the symmetry deviation exceeds tol.
 */
EigResult hermitian_eig(const CMat& M, double tol = kTolHerm);

/// Kronecker product with the row-major index convention documented above.
CMat kron(const CMat& A, const CMat& B);

/**
 * @brief Numerical rank of a Hermitian PSD matrix: #{eigenvalues > tol}.
 * @throws Error("NotPSD") if some eigenvalue is < -tol.
 */
int rank_eps(const CMat& M, double tol = 1e-8);

/// True iff ||M^2 - M||_F <= tol and ||M - M^*||_F <= tol.
bool is_projection(const CMat& M, double tol = 1e-8);

/// Operator (spectral) norm via singular values.
double operator_norm(const CMat& M);

/// Row-major vec: vec(X)[i*cols + j] = X(i,j).
CVec vec(const CMat& X);

/// Inverse of vec for an r x c matrix.
CMat unvec(const CVec& v, int rows, int cols);

/**
 * @brief Orthonormal basis (columns) of the span of the given columns.
 *
 * Columns with norm below `tol` after projection are dropped.  Used for
 * fixed-point spaces and commutants.
 */
CMat column_space_basis(const CMat& columns, double tol = 1e-10);

/**
 * @brief Largest principal-angle distance between two subspaces.
 *
 * Inputs are matrices whose orthonormal columns span each subspace.  Returns
 * sin(theta_max) = || P_U - P_V ||_op; 0 when the spans coincide.  Subspaces
 * of different dimension return 1.
 */
double subspace_distance(const CMat& U, const CMat& V);

}  // namespace qexpand
