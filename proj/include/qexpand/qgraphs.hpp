/**
 * Quantum graphs on multimatrix algebras.
 *
 * A quantum graph is a pair (M, A): M = (+)_a M_{n_a} a multimatrix algebra
 * carrying the tracial reference functional psi = sum_a n_a Tr_a, and A a
 * linear operator on the L^2 space L^2(M, psi) that is Schur idempotent,
 *     m (A (x) A) m* = A,
 * where m is multiplication and m* its Hilbert adjoint.  With this psi,
 *     m*(e^a_uv) = (1/n_a) sum_w e^a_uw (x) e^a_wv,   and   m m* = id.
 *
 * Elements of M are stored as block-diagonal complex matrices inside the
 * containing N x N matrix space (N = sum n_a).  Operators on M are stored as
 * dense D x D matrices (D = sum n_a^2) in the psi-orthonormal basis
 * f^a_ij = e^a_ij / sqrt(n_a); coordinates of an element x in that basis are
 * sqrt(n_a) x^a_ij, so for a single full block the operator matrix coincides
 * with the row-major transfer matrix of the corresponding map.
 *
 * A quantum graph is d-regular when A1 = A*1 = d1, and undirected when A is
 * Hermitian as an L^2 operator; gap() then reports the spectrum of d^{-1} A,
 * whose top eigenvalue is 1, and lambda_2 as the largest eigenvalue strictly
 * below the top cluster (threshold 1e-7) — the value that matches the
 * channel-level second eigenvalue for graph lifts.
 */
#pragma once

#include <optional>
#include <vector>

#include "qexpand/channels.hpp"
#include "qexpand/numerics.hpp"

namespace qexpand {

class MultiMatrixAlgebra {
 public:
  /// @throws Error("BadInput") on empty or non-positive block dimensions.
  explicit MultiMatrixAlgebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return dims_; }
  int blocks() const { return static_cast<int>(dims_.size()); }
  int total_dim() const { return total_; }  ///< N = sum n_a
  int l2_dim() const { return l2_; }        ///< D = sum n_a^2
  int block_offset(int a) const { return offsets_[a]; }

  /// Reference functional psi(x) = sum_a n_a Tr(x_a).
  double psi_real(const CMat& x) const;
  cplx psi(const CMat& x) const;

  /// Block-diagonal compression (conditional expectation onto M).
  CMat pinch(const CMat& x) const;
  /// The unit of M (identity of the containing matrix space).
  CMat unit() const;

  /// (block, row, col) of the k-th basis unit e^a_ij.
  struct UnitIndex {
    int block = 0, row = 0, col = 0;
  };
  const std::vector<UnitIndex>& basis_index() const { return index_; }
  /// Position of e^a_ij in the L^2 basis.
  int l2_index(int block, int row, int col) const;
  /// The k-th matrix unit e^a_ij as an N x N element.
  CMat unit_element(int k) const;

  /// Coordinates in the orthonormal basis f^a_ij = e^a_ij / sqrt(n_a).
  CVec to_l2(const CMat& x) const;
  CMat from_l2(const CVec& v) const;

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  std::vector<UnitIndex> index_;
  int total_ = 0;
  int l2_ = 0;
};

/// Matrix of m*: L^2(M) -> L^2(M (x) M) in the orthonormal bases (D^2 x D,
/// tensor index row-major).  The multiplication map m is its adjoint.
CMat mult_adjoint(const MultiMatrixAlgebra& alg);

struct QuantumGraph {
  MultiMatrixAlgebra algebra;
  CMat A;  ///< D x D operator on the psi-orthonormal basis of M

  /// Element-level action: pinch, then apply A through the L^2 coordinates.
  CMat apply(const CMat& x) const;
};

/// Quantum graph on a single full matrix block from a channel:
/// A = degree_scale * (transfer matrix of phi).
QuantumGraph quantum_graph_from_channel(const Channel& phi, double degree_scale);

/// Quantum graph of a weighted classical operator on the diagonal algebra
/// C^n (the orthonormal basis is the vertex indicators).
QuantumGraph diagonal_quantum_graph(const RMat& weights);

/// Schur idempotency m (A (x) A) m* = A within `tol` in L^2 operator norm.
/// Computed columnwise as S(e^a_uv) = (1/n_a) sum_w A(e^a_uw) A(e^a_wv); the
/// D^2 x D^2 tensor operator is never materialized.
bool is_quantum_adjacency(const QuantumGraph& qg, double tol = 1e-8);

/// Complete positivity of A as a map on M: the Choi matrix of (A o pinch) on
/// the containing matrix space must be PSD within tol.
bool is_completely_positive(const QuantumGraph& qg, double tol = 1e-9);

/// Degree d with A1 = A*1 = d1 within tol, or absent.
std::optional<double> is_regular(const QuantumGraph& qg, double tol = 1e-8);

/// Normalized Choi matrix P_A = (1/N) sum_ij e_ij (x) A(pinch(e_ij)) over the
/// containing matrix space; a rank-d projection for d-regular quantum graphs
/// on a full matrix algebra.
CMat normalized_choi(const QuantumGraph& qg);

struct QuantumGraphGap {
  RVec eigenvalues;  ///< spectrum of d^{-1} A, descending
  /// Largest eigenvalue strictly below the top cluster (<= 1 - 1e-7);
  /// absent when the whole spectrum sits in the top cluster.
  std::optional<double> lambda2;
};

/**
 * @brief Spectrum of the normalized operator d^{-1} A.
 * @throws Error("NotRegular") if is_regular fails (or the top eigenvalue
 *         strays from 1), Error("NotUndirected") if A is not Hermitian.
 */
QuantumGraphGap gap(const QuantumGraph& qg);

}  // namespace qexpand
