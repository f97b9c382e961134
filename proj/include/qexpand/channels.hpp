/**
 * Quantum channels in Kraus form and their expansion analysis.
 *
 * Conventions (shared with the numerics module):
 *  - vec is row-major, so the transfer matrix of Phi(rho) = sum K rho K^dag is
 *    T = sum K (x) conj(K), acting by T vec(rho) = vec(Phi(rho)).
 *  - The Choi matrix is J = sum_ij e_ij (x) Phi(e_ij); Phi is completely
 *    positive iff J is PSD, and the degree (Kraus rank) is rank(J).
 *  - A channel is "undirected" when its transfer matrix is Hermitian (the
 *    map is self-adjoint for the Hilbert-Schmidt pairing, the quantum
 *    analogue of an undirected graph) and "connected" when its fixed-point
 *    space is one dimensional (the span of the identity, for a bistochastic
 *    channel).
 *
 * The expansion ratio of a projection P with 0 < tr P < n is
 *     Tr[(1-P) Phi(P)] / min(tr P, n - tr P),
 * the quantum cut density; its infimum over projections is the expander
 * constant h_Q.  estimate_hq brackets it: a spectral lower certificate
 * (1 - lambda_2)/2 and the best ratio found by a deterministic seeded search
 * (eigenbasis subsets of the top two transfer eigenspace clusters, diagonal
 * subsets, and hill-climbed random projectors).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qexpand/graphs.hpp"
#include "qexpand/groups.hpp"
#include "qexpand/numerics.hpp"

namespace qexpand {

struct Channel {
  int dim = 0;              ///< Hilbert space dimension n
  std::vector<CMat> kraus;  ///< n x n Kraus operators

  /// Validates shapes (all Kraus operators square of the given dimension).
  static Channel from_kraus(int dim, std::vector<CMat> kraus);

  /// Phi(rho) = sum_m K_m rho K_m^dag.
  CMat apply(const CMat& rho) const;
};

/// Transfer matrix T = sum_m K_m (x) conj(K_m) (row-major vec convention).
CMat transfer_matrix(const Channel& phi);

/// Choi matrix J = sum_ij e_ij (x) Phi(e_ij).
CMat choi_matrix(const Channel& phi);

/// Kraus rank: number of Choi eigenvalues above 1e-8.
/// @throws Error("NotPSD") if the Choi matrix has an eigenvalue < -1e-8.
int degree(const Channel& phi);

/// Equivalent channel with a minimal Kraus family, read off the Choi
/// eigendecomposition (eigenvalues <= 1e-10 discarded).
Channel minimal_kraus(const Channel& phi);

struct ChannelChecks {
  bool completely_positive = false;  ///< Choi minimum eigenvalue >= -1e-9
  bool trace_preserving = false;     ///< sum K^dag K = 1 within 1e-9
  bool unital = false;               ///< sum K K^dag = 1 within 1e-9
  bool undirected = false;           ///< transfer matrix Hermitian within 1e-9
  bool connected = false;            ///< fixed-point space is one dimensional
};
ChannelChecks validate_channel(const Channel& phi);

/// Orthonormal basis (columns of vec'd operators, n^2 x k) of the fixed-point
/// space {X : Phi(X) = X}.  Uses the transfer eigendecomposition when the
/// channel is undirected and the kernel of (T-1)^dag (T-1) otherwise.
CMat fixed_point_space(const Channel& phi);

/// Orthonormal basis (columns of vec'd operators) of the commutant of the
/// Kraus family {X : K_m X = X K_m for all m}.  For a bistochastic channel
/// this coincides with the fixed-point space.
CMat kraus_commutant(const Channel& phi);

struct TransferSpectrum {
  RVec eigenvalues;  ///< transfer spectrum, descending (real: undirected only)
  int fixed_dim = 0;  ///< multiplicity of the top cluster (eigenvalues > 1 - 1e-7)
  /// Largest eigenvalue below the fixed cluster; absent when the whole
  /// spectrum sits in the top cluster.
  std::optional<double> second_below_fixed;
};

/// Spectrum of an undirected channel's transfer matrix.
/// @throws Error("NotUndirected") if the transfer matrix is not Hermitian.
TransferSpectrum transfer_spectrum(const Channel& phi);

/**
 * @brief Second-largest transfer eigenvalue of an undirected connected channel.
 * @throws Error("NotUndirected") if the transfer matrix is not Hermitian.
 * @throws Error("NotConnected") if the fixed-point space is not 1-dimensional
 *         (or the transfer matrix is 1 x 1 and no second eigenvalue exists).
 */
double lambda2(const Channel& phi);

struct ExpansionEstimate {
  /// Spectral lower certificate (1 - lambda_2-with-multiplicity)/2, clamped
  /// at 0; degenerates to 0 for a disconnected channel.
  double lower_certificate = 0.0;
  /// Smallest expansion ratio found; an upper estimate of h_Q.
  double upper_estimate = 0.0;
  /// Projection achieving upper_estimate (empty for a 1-dimensional channel).
  CMat witness_projector;
  /// Number of projector ratios evaluated during the search.
  int trials_used = 0;
};

/**
 * @brief Brackets the expander constant h_Q of an undirected channel.
 *
 * The search set is deterministic for fixed (budget, seed): all eigenbasis
 * subsets (dim <= 12; threshold cuts above) of every Hermitian eigen-operator
 * spanning the top two transfer clusters, all diagonal subsets (dim <= 12),
 * and `budget` random-start projectors of round-robin ranks, each refined by
 * 50 Givens-rotation hill-climb steps.
 *
 * @throws Error("NotUndirected"); disconnected channels are accepted (their
 *         lower certificate is 0 and a 0-ratio witness exists).
 */
ExpansionEstimate estimate_hq(const Channel& phi, int budget = 200, std::uint64_t seed = 42);

/**
 * @brief Lifts a d-regular graph to a channel along a cycle-cover
 *        decomposition: Phi(rho) = (1/d) sum_k P_k rho P_k^dag.
 *
 * The diagonal restriction of d*Phi acts as the adjacency matrix.  The cover
 * permutations share no arc, so the Kraus operators are orthogonal and the
 * channel has degree exactly d.
 *
 * @throws Error("NotRegular") (degree-0 graphs included),
 *         Error("DecompositionFailed") if the decomposition does not sum to
 *         the adjacency matrix of g.
 */
Channel lift_graph(const Graph& g, const CycleCoverDecomposition& dec);

/// Convenience overload: decomposes g with the given seed, then lifts.
Channel lift_graph(const Graph& g, std::uint64_t seed = 1);

/**
 * @brief Averaging channel of a unitary irrep over a symmetric generating set:
 *        Phi(rho) = sum_s w_s pi(s) rho pi(s)^dag, default weights 1/|S|.
 *
 * With uniform weights the construction is certified on the spot: lambda_2 of
 * the channel must not exceed lambda_2(Cayley(G, S)) / |S| + 1e-9 whenever the
 * Cayley graph is connected and the irrep dimension exceeds 1.
 *
 * @param weights optional probability weights per element of S (positive,
 *        summing to 1); empty means uniform.
 * @throws Error("TrivialRep") for the trivial representation,
 *         Error("NotSymmetric") if S is not inverse-closed,
 *         Error("NotAState") for invalid weights,
 *         Error("CertificateViolated") if the spectral comparison fails.
 */
Channel group_average_channel(const FiniteGroup& G, const Irrep& pi, const std::vector<int>& S,
                              const std::vector<double>& weights = {});

/// One block of a representation-built channel: a unitary on H_s (x) K
/// together with the state's PSD block on H_s.
struct RepBlock {
  std::string label;  ///< block name used in reports
  CMat unitary;       ///< unitary on H_s (x) K, blocks U_ac of size dim(K)
  CMat psi;           ///< PSD state block on H_s; traces sum to 1 over blocks
};

/**
 * @brief Channel from block unitaries and a block-diagonal state:
 *        Kraus family { sqrt(lambda_a) * U~^s_ac } over blocks s and indices
 *        a, c, where psi_s = W diag(lambda) W^dag and
 *        U~ = (W (x) 1)^dag U (W (x) 1).
 *
 * Always unital; trace preserving iff the block family is bi-unitary
 * (sum_c U_ac^dag U_a'c = delta_aa' 1), which is verified directly.
 *
 * @param psi_symmetric verify the transfer matrix is Hermitian (1e-9), the
 *        guarantee a symmetric state is meant to provide.
 * @param allow_nonfaithful drop state eigenvalues <= 1e-12 instead of
 *        failing with NotFaithfulState.
 * @throws Error("NotUnitaryBlock"), Error("NotFaithfulState"),
 *         Error("NotAState"), Error("NotUndirected").
 */
Channel rep_channel(const std::vector<RepBlock>& blocks, bool psi_symmetric,
                    bool allow_nonfaithful = false);

struct GapCertificateReport {
  double lambda2 = 0.0;        ///< measured second transfer eigenvalue
  double lambda2_bound = 0.0;  ///< certified upper bound on lambda2
  double hq_lower = 0.0;       ///< (1 - lambda2)/2, spectral lower bound on h_Q
  double hq_bound = 0.0;       ///< certified lower bound on h_Q
  bool tracial = true;         ///< whether the uniform-state bound was used
};

/**
 * @brief Checks the spectral-gap certificate delivered by a Kazhdan pair.
 *
 * With eps the certified constant and dim_he the environment dimension
 * (number of Kraus operators), the tracial bound is
 *     lambda2 <= 1 - eps^2 / (2 dim_he),   h_Q >= eps^2 / (4 dim_he);
 * a non-uniform environment state with smallest eigenvalue lambda_min
 * replaces 1/dim_he by lambda_min in both.
 *
 * @throws Error("CertificateViolated") if a measured value breaks its bound;
 *         the strict lambda2 preconditions (NotUndirected/NotConnected) apply.
 */
GapCertificateReport check_gap_certificate(const Channel& phi, double eps, int dim_he,
                                           std::optional<double> lambda_min = std::nullopt);

}  // namespace qexpand
