#include "qexpand/qgraphs.hpp"

#include <cmath>
#include <utility>

#include "qexpand/error.hpp"

namespace qexpand {

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<int> block_dims)
    : dims_(std::move(block_dims)) {
  require(!dims_.empty(), "BadInput", "multimatrix algebra needs at least one block");
  offsets_.reserve(dims_.size());
  for (int n : dims_) {
    require(n >= 1, "BadInput", "block dimensions must be positive");
    offsets_.push_back(total_);
    total_ += n;
    l2_ += n * n;
  }
  index_.reserve(static_cast<size_t>(l2_));
  for (int a = 0; a < blocks(); ++a)
    for (int i = 0; i < dims_[a]; ++i)
      for (int j = 0; j < dims_[a]; ++j) index_.push_back(UnitIndex{a, i, j});
}

cplx MultiMatrixAlgebra::psi(const CMat& x) const {
  cplx value = 0.0;
  for (int a = 0; a < blocks(); ++a) {
    const int off = offsets_[a];
    for (int i = 0; i < dims_[a]; ++i) value += static_cast<double>(dims_[a]) * x(off + i, off + i);
  }
  return value;
}

double MultiMatrixAlgebra::psi_real(const CMat& x) const { return psi(x).real(); }

CMat MultiMatrixAlgebra::pinch(const CMat& x) const {
  CMat out = CMat::Zero(total_, total_);
  for (int a = 0; a < blocks(); ++a) {
    const int off = offsets_[a];
    out.block(off, off, dims_[a], dims_[a]) = x.block(off, off, dims_[a], dims_[a]);
  }
  return out;
}

CMat MultiMatrixAlgebra::unit() const { return CMat::Identity(total_, total_); }

int MultiMatrixAlgebra::l2_index(int block, int row, int col) const {
  int base = 0;
  for (int a = 0; a < block; ++a) base += dims_[a] * dims_[a];
  return base + row * dims_[block] + col;
}

CMat MultiMatrixAlgebra::unit_element(int k) const {
  const UnitIndex& u = index_[static_cast<size_t>(k)];
  CMat e = CMat::Zero(total_, total_);
  e(offsets_[u.block] + u.row, offsets_[u.block] + u.col) = 1.0;
  return e;
}

CVec MultiMatrixAlgebra::to_l2(const CMat& x) const {
  CVec v(l2_);
  for (int k = 0; k < l2_; ++k) {
    const UnitIndex& u = index_[static_cast<size_t>(k)];
    const int off = offsets_[u.block];
    v[k] = std::sqrt(static_cast<double>(dims_[u.block])) * x(off + u.row, off + u.col);
  }
  return v;
}

CMat MultiMatrixAlgebra::from_l2(const CVec& v) const {
  CMat x = CMat::Zero(total_, total_);
  for (int k = 0; k < l2_; ++k) {
    const UnitIndex& u = index_[static_cast<size_t>(k)];
    const int off = offsets_[u.block];
    x(off + u.row, off + u.col) = v[k] / std::sqrt(static_cast<double>(dims_[u.block]));
  }
  return x;
}

CMat mult_adjoint(const MultiMatrixAlgebra& alg) {
  const int d2 = alg.l2_dim();
  CMat mstar = CMat::Zero(static_cast<Eigen::Index>(d2) * d2, d2);
  // m*(f^a_ij) = n_a^{-1/2} sum_w f^a_iw (x) f^a_wj.
  for (int k = 0; k < d2; ++k) {
    const auto& u = alg.basis_index()[static_cast<size_t>(k)];
    const int na = alg.block_dims()[u.block];
    const double coeff = 1.0 / std::sqrt(static_cast<double>(na));
    for (int w = 0; w < na; ++w) {
      const int left = alg.l2_index(u.block, u.row, w);
      const int right = alg.l2_index(u.block, w, u.col);
      mstar(static_cast<Eigen::Index>(left) * d2 + right, k) = coeff;
    }
  }
  return mstar;
}

CMat QuantumGraph::apply(const CMat& x) const {
  return algebra.from_l2(A * algebra.to_l2(algebra.pinch(x)));
}

QuantumGraph quantum_graph_from_channel(const Channel& phi, double degree_scale) {
  MultiMatrixAlgebra alg({phi.dim});
  // In the orthonormal basis of a single full block the operator matrix of
  // x -> c phi(x) equals c times the transfer matrix.
  return QuantumGraph{alg, degree_scale * transfer_matrix(phi)};
}

QuantumGraph diagonal_quantum_graph(const RMat& weights) {
  require(weights.rows() == weights.cols() && weights.rows() >= 1, "BadInput",
          "classical operator must be a nonempty square matrix");
  MultiMatrixAlgebra alg(std::vector<int>(static_cast<size_t>(weights.rows()), 1));
  return QuantumGraph{alg, weights.cast<cplx>()};
}

bool is_quantum_adjacency(const QuantumGraph& qg, double tol) {
  const MultiMatrixAlgebra& alg = qg.algebra;
  const int d2 = alg.l2_dim();
  // Images of the matrix units under A, as elements of M.
  std::vector<CMat> images;
  images.reserve(static_cast<size_t>(d2));
  for (int k = 0; k < d2; ++k) {
    const double na = static_cast<double>(alg.block_dims()[alg.basis_index()[static_cast<size_t>(k)].block]);
    images.push_back(alg.from_l2(std::sqrt(na) * qg.A.col(k)));
  }
  // Column k of m (A (x) A) m* in the orthonormal basis:
  // S(e^a_uv) = (1/n_a) sum_w A(e^a_uw) A(e^a_wv).
  CMat schur = CMat::Zero(d2, d2);
  for (int k = 0; k < d2; ++k) {
    const auto& u = alg.basis_index()[static_cast<size_t>(k)];
    const int na = alg.block_dims()[u.block];
    CMat s = CMat::Zero(alg.total_dim(), alg.total_dim());
    for (int w = 0; w < na; ++w)
      s += images[static_cast<size_t>(alg.l2_index(u.block, u.row, w))] *
           images[static_cast<size_t>(alg.l2_index(u.block, w, u.col))];
    schur.col(k) = alg.to_l2(s) / (std::sqrt(static_cast<double>(na)) * na);
  }
  return operator_norm(CMat(schur - qg.A)) <= tol;
}

bool is_completely_positive(const QuantumGraph& qg, double tol) {
  const int n = qg.algebra.total_dim();
  CMat choi = CMat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat e = CMat::Zero(n, n);
      e(i, j) = 1.0;
      choi.block(i * n, j * n, n, n) = qg.apply(e);
    }
  const EigResult eig = hermitian_eig(choi);
  const double scale = std::max(1.0, choi.cwiseAbs().maxCoeff());
  return eig.eigenvalues.minCoeff() >= -tol * scale;
}

std::optional<double> is_regular(const QuantumGraph& qg, double tol) {
  const MultiMatrixAlgebra& alg = qg.algebra;
  const CVec one = alg.to_l2(alg.unit());
  const double norm2 = one.squaredNorm();
  const CVec forward = qg.A * one;
  const CVec backward = qg.A.adjoint() * one;
  const cplx d_forward = one.dot(forward) / norm2;
  const cplx d_backward = one.dot(backward) / norm2;
  if (std::abs(d_forward.imag()) > tol) return std::nullopt;
  if (std::abs(d_forward - d_backward) > tol) return std::nullopt;
  if ((forward - d_forward * one).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  if ((backward - d_backward * one).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return d_forward.real();
}

CMat normalized_choi(const QuantumGraph& qg) {
  const int n = qg.algebra.total_dim();
  CMat choi = CMat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat e = CMat::Zero(n, n);
      e(i, j) = 1.0;
      choi.block(i * n, j * n, n, n) = qg.apply(e);
    }
  return choi / static_cast<double>(n);
}

QuantumGraphGap gap(const QuantumGraph& qg) {
  const std::optional<double> degree = is_regular(qg, 1e-8);
  require(degree.has_value(), "NotRegular", "quantum graph is not regular");
  require(*degree > 1e-12, "NotRegular", "quantum graph has zero degree");
  const double scale = std::max(1.0, qg.A.cwiseAbs().maxCoeff());
  require(operator_norm(CMat(qg.A - qg.A.adjoint())) <= 1e-9 * scale, "NotUndirected",
          "adjacency operator is not self-adjoint on L^2");
  const EigResult eig = hermitian_eig(qg.A);
  QuantumGraphGap out;
  out.eigenvalues = eig.eigenvalues.reverse() / *degree;
  require(std::abs(out.eigenvalues[0] - 1.0) <= 1e-9, "NotRegular",
          "normalized adjacency operator does not have top eigenvalue 1");
  for (int i = 1; i < out.eigenvalues.size(); ++i)
    if (out.eigenvalues[i] <= 1.0 - 1e-7) {
      out.lambda2 = out.eigenvalues[i];
      break;
    }
  return out;
}

}  // namespace qexpand
