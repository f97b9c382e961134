/**
 * Quantum Cayley graphs over duals of finite groups.
 *
 * The dual of a finite group G is the multimatrix algebra
 * l^infty(G^) = (+)_x B(H_x) over the irreducible representations x of G.
 * Elements are kept as coefficient vectors (c_g) in the lambda-basis,
 * a = sum_g c_g lambda_g, where the structure maps are monomial:
 *
 *   coproduct     lambda_g -> lambda_g (x) lambda_g
 *   antipode      S(lambda_g) = lambda_{g^-1}
 *   counit        eps(lambda_g) = 1
 *   Haar weight   h(lambda_g) = |G| [g = e]
 *
 * Convolution by the central projection p_E = sum_{x in E} p_x is then
 * diagonal: (p_E * a)_g = n_E(g) a_g with the Fourier weight
 * n_E(g) = sum_{x in E} dim(x) conj(chi_x(g)).  The quantum Cayley graph of a
 * symmetric irrep set E avoiding the trivial representation is the operator
 * A x = p_E * x on L^2(vN(G), h); it is d-regular with d = n_E(e) =
 * sum_{x in E} dim(x)^2, self-adjoint, and Schur idempotent, i.e. a quantum
 * graph in the sense of qgraphs.hpp.
 *
 * Restricting A to the coideal span{lambda_h : h in H} of a subgroup H gives
 * the quantum Schreier graph on vN(H); its normalized second eigenvalue obeys
 * the certificate lambda_2 <= 1 - lambda eps^2 / 2, where eps is a Kazhdan
 * constant for the generating data and lambda = min_{x in E} dim(x) / d.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qexpand/groups.hpp"
#include "qexpand/numerics.hpp"
#include "qexpand/qgraphs.hpp"

namespace qexpand {

struct DualGroupAlgebra {
  FiniteGroup group;
  std::vector<Irrep> irreps;  ///< canonical order, sum of dim^2 = |G|
};

/// Dual algebra with the canonical irrep list for (group, seed).
DualGroupAlgebra dual_group_algebra(const FiniteGroup& G, std::uint64_t seed = 1);

/// Haar weight h(a) = |G| a_e.
cplx dual_haar(const DualGroupAlgebra& alg, const CVec& a);
/// Antipode S: c_g -> c_{g^-1}.
CVec dual_antipode(const DualGroupAlgebra& alg, const CVec& a);
/// Counit eps(a) = sum_g c_g.
cplx dual_counit(const DualGroupAlgebra& alg, const CVec& a);
/// Product of vN(G): lambda_g lambda_h = lambda_{gh}.
CVec group_algebra_product(const DualGroupAlgebra& alg, const CVec& a, const CVec& b);

/// Block Fourier transform a^_x = sum_g c_g pi_x(g), one block per irrep.
std::vector<CMat> fourier_blocks(const DualGroupAlgebra& alg, const CVec& a);
/// Inverse transform c_g = (1/|G|) sum_x dim(x) Tr(pi_x(g)^* a^_x).
CVec inverse_fourier(const DualGroupAlgebra& alg, const std::vector<CMat>& blocks);
/// Unitary F[(x,i,j)][g] = sqrt(dim(x)/|G|) pi_x(g)_ij mapping lambda-basis
/// coordinates to the psi-orthonormal block coordinates (up to sqrt|G|).
CMat fourier_unitary(const DualGroupAlgebra& alg);

/**
 * @brief Central projection p_E, coefficients
 *        c_g = sum_{x in E} (dim(x)/|G|) conj(chi_x(g)).
 *
 * Fourier blocks are the identity on E and zero elsewhere; the counit
 * vanishes iff the trivial representation is outside E.
 */
CVec central_projection(const DualGroupAlgebra& alg, const std::vector<int>& E);

/// Convolution in the lambda-basis (fast path): (a * b)_g = |G| a_g b_g.
CVec convolve(const DualGroupAlgebra& alg, const CVec& a, const CVec& b);
/// Definitional convolution (omega_a o S (x) id) applied to the coproduct of
/// b, evaluated with the Haar pairing omega_a = h(. a).  Slow; used as the
/// oracle for the fast path.
CVec convolve_by_comultiplication(const DualGroupAlgebra& alg, const CVec& a, const CVec& b);

/**
 * @brief Fourier weights n_E(g) = sum_{x in E} dim(x) conj(chi_x(g)).
 * @throws Error("NotSymmetric") if the weights are not real (E not closed
 *         under conjugate representations).
 */
RVec dual_weights(const DualGroupAlgebra& alg, const std::vector<int>& E);

struct DualCayley {
  DualGroupAlgebra alg;
  std::vector<int> irrep_set;  ///< E as indices into alg.irreps
  RVec weights;                ///< n_E(g), real for symmetric E
  double degree = 0.0;         ///< d = n_E(e) = sum_{x in E} dim(x)^2
  bool generating = false;     ///< n_E(g) < d for all g != e
  QuantumGraph graph;          ///< A = F diag(n_E) F^* on (+)_x M_dim(x)
};

/**
 * @brief Quantum Cayley graph of the irrep set E over the dual of G.
 *
 * A acts diagonally on the lambda-basis with eigenvalue n_E(g); in the block
 * picture it is d-regular, self-adjoint on L^2, and Schur idempotent.
 *
 * @throws Error("NotSymmetric") if E is not closed under conjugates,
 *         Error("ContainsTrivial") if the trivial representation is in E.
 */
DualCayley quantum_cayley(const DualGroupAlgebra& alg, const std::vector<int>& E);

struct Coideal {
  std::vector<int> basis;  ///< subgroup elements, ascending (identity first)
};

/// Coideal span{lambda_h : h in H} of a subgroup.
/// @throws Error("NotASubgroup").
Coideal coideal_from_subgroup(const DualGroupAlgebra& alg, const std::vector<int>& H);

/**
 * @brief Quantum Schreier graph: the restriction of a quantum Cayley graph to
 *        the coideal vN(H), expressed on the block algebra of H.
 *
 * The restriction stays diagonal in the lambda_h basis with eigenvalues
 * n_E(h), hence remains d-regular and self-adjoint.
 *
 * @throws Error("NotInvariant") if the adjacency operator numerically leaks
 *         outside span{lambda_h} beyond 1e-10 (indicates a bug upstream).
 */
QuantumGraph schreier_restrict(const DualCayley& qc, const Coideal& coideal,
                               std::uint64_t seed = 1);

/**
 * @brief Classical Cayley/Schreier operator A f(gH) = sum_{s in E} f(s g H)
 *        on the left-coset space Gamma/H; coincides exactly with the weighted
 *        adjacency of graphs.schreier_graph.
 * @throws Error("NotSymmetric"), Error("ContainsIdentity"), Error("NotASubgroup").
 */
RMat classical_cayley_operator(const FiniteGroup& Gamma, const std::vector<int>& E,
                               const std::vector<int>& H);

/**
 * @brief Kazhdan-type constant for the dual generating set:
 *        eps = sqrt(2 (1 - max_{g != e} n_E(g) / d)).
 *
 * Every lambda-basis direction g != e has squared displacement
 * 2 (1 - n_E(g)/d) under the normalized convolution, so the maximum over the
 * generating blocks is at least eps for every invariant-vector-free
 * direction — the finite-dual analogue of the mean-max relaxation used for
 * classical groups.
 *
 * @throws Error("NotGenerating") if n_E(g) = d for some g != e (within 1e-9).
 */
double dual_kazhdan_lower_bound(const DualCayley& qc);

struct SchreierCertificateReport {
  RVec spectrum;  ///< normalized spectrum of d^{-1} A restricted, descending
  std::optional<double> lambda2;  ///< absent when the spectrum is degenerate
  double degree = 0.0;
  double lambda_min_ratio = 0.0;  ///< min_{x in E} dim(x) / d
  double bound = 0.0;             ///< 1 - lambda_min_ratio eps^2 / 2
  bool vacuous = false;           ///< no eigenvalue below the top cluster
};

/**
 * @brief Asserts the spectral-gap certificate lambda_2 <= 1 - lambda eps^2/2
 *        for a restricted (quantum or classical) Schreier graph, with
 *        lambda = min_s dim(H_s)/d over the generating blocks of dimensions
 *        `e_dims`.
 * @throws Error("CertificateViolated") if the bound fails beyond 1e-9;
 *         propagates NotRegular/NotUndirected from the spectrum computation.
 */
SchreierCertificateReport schreier_gap_certificate(const QuantumGraph& restricted, double eps,
                                                   const std::vector<int>& e_dims);

}  // namespace qexpand
