// Matched pairs of finite groups and bicrossed-product channels.
//
// A matched pair (Gamma, G) consists of two subgroups of an ambient finite
// group H that factor it exactly: every h in H is uniquely h = g * gamma with
// g in G and gamma in Gamma (equivalently |Gamma| * |G| = |H| and the
// subgroups intersect trivially).  Unique factorization of the products
// gamma * g,
//
//     gamma * g = alpha_gamma(g) * beta_g(gamma),
//
// defines a left action alpha of Gamma on the set G and a right action beta
// of G on the set Gamma.  They obey the compatibility laws
//
//     alpha_e = id,                beta_e = id,
//     alpha_{gamma gamma'} = alpha_gamma o alpha_{gamma'},
//     beta_{g h} = beta_h o beta_g,
//     alpha_gamma(g h) = alpha_gamma(g) * alpha_{beta_g(gamma)}(h),
//     beta_g(gamma gamma') = beta_{alpha_{gamma'}(g)}(gamma) * beta_g(gamma'),
//
// all of which are verified exhaustively on construction.  When beta is
// trivial, alpha_gamma(g) = gamma g gamma^{-1} is conjugation and H is a
// semidirect product; when both actions are trivial H is a direct product.
//
// The orbits of beta partition Gamma.  For a full orbit O = {r_1, ..., r_n}
// the sets A_{r,s} = { g in G : beta_g(r) = s } form a "magic" combinatorial
// unitary: every row and every column of (A_{r,s})_{r,s in O} partitions G.
//
// On l²(G) the pair acts by the unitaries (pi(u_gamma) xi)(g) =
// xi(alpha_{gamma^{-1}}(g)) and the diagonal multiplication operators
// pi(omega(f)) = diag(f), satisfying the covariance relation
//
//     pi(u_gamma) pi(omega(f)) pi(u_gamma)^dag = pi(omega(f o alpha_{gamma^{-1}})).
//
// Writing v_{r,s} for the indicator of A_{r,s}, the block matrix
//
//     V = sum_{r,s in O} e_{r,s} (x) pi(u_r) pi(omega(v_{r,s}))
//
// is a bi-unitary on C^n (x) l²(G): V itself is unitary and so is every row
// and column of blocks in the sense sum_s V_{r,s}^dag V_{r,s} = 1.  Pairing V
// with a state phi on C^n yields the channel
//
//     Phi(rho) = sum_{r,r',s} phi(e_{r,r'}) V_{r,s} rho V_{r',s}^dag,
//
// which is trace preserving and unital for any state phi by bi-unitarity.
// When phi is the normalized trace, Phi is mixed unitary with an explicit
// decomposition: each row of the magic unitary is a projective measurement
// f_r(rho) = sum_s P_{r,s} rho P_{r,s}, and any such measurement equals the
// uniform average of conjugations by powers of the phase unitary
// U = sum_k exp(2 pi i k / n) p_k.

#pragma once

#include <complex>
#include <vector>

#include "qexpand/channels.hpp"
#include "qexpand/groups.hpp"
#include "qexpand/numerics.hpp"

namespace qexpand {

/**
 * @brief An exact factorization H = G * Gamma with its two mutual actions.
 *
 * Elements of Gamma and G are stored as sorted ambient indices; the action
 * tables work in local indices (positions within gamma_elements resp.
 * g_elements).  alpha[r][j] is the local index of alpha_{gamma_r}(g_j) in G
 * and beta[j][r] the local index of beta_{g_j}(gamma_r) in Gamma.
 */
struct MatchedPair {
  FiniteGroup ambient;               ///< the factored group H
  std::vector<int> gamma_elements;   ///< ambient indices of Gamma, sorted
  std::vector<int> g_elements;       ///< ambient indices of G, sorted
  std::vector<std::vector<int>> alpha;  ///< [gamma-local][g-local] -> g-local
  std::vector<std::vector<int>> beta;   ///< [g-local][gamma-local] -> gamma-local
  std::vector<int> gamma_local;      ///< ambient index -> gamma-local or -1
  std::vector<int> g_local;          ///< ambient index -> g-local or -1

  int gamma_size() const { return static_cast<int>(gamma_elements.size()); }
  int g_size() const { return static_cast<int>(g_elements.size()); }
};

/**
 * @brief Builds the matched pair of an exact factorization H = G * Gamma.
 *
 * Extracts alpha and beta from the unique factorizations
 * gamma * g = alpha_gamma(g) * beta_g(gamma) and verifies every
 * compatibility law exhaustively (integer arithmetic, no tolerances).
 *
 * @param ambient the group H
 * @param gamma ambient indices of the subgroup Gamma
 * @param g ambient indices of the subgroup G
 * @throws Error("NotASubgroup") if either set is not a subgroup
 * @throws Error("NotExactFactorization") if |Gamma||G| != |H| or the
 *         products g * gamma fail to enumerate H without repetition
 */
MatchedPair from_factorization(const FiniteGroup& ambient,
                               const std::vector<int>& gamma,
                               const std::vector<int>& g);

/**
 * @brief Orbit of a Gamma element under the right action beta.
 *
 * Returns the sorted gamma-local indices { beta_g(r) : g in G }.  Orbits of
 * beta partition Gamma, and the orbit of the identity is the singleton {e}.
 */
std::vector<int> beta_orbit(const MatchedPair& mp, int gamma_index);

/**
 * @brief Magic combinatorial unitary of a full beta-orbit.
 *
 * entries[a][b][j] = 1 exactly when beta_{g_j}(orbit[a]) = orbit[b]; the
 * supports A_{r,s} partition G along every row and every column (verified).
 */
struct MagicUnitary {
  std::vector<int> orbit;  ///< gamma-local indices, sorted
  std::vector<std::vector<std::vector<int>>> entries;  ///< [row][col][g-local]
};

/**
 * @brief Computes the magic unitary of a beta-orbit.
 *
 * @param orbit gamma-local indices forming one full beta-orbit
 * @throws Error("BadInput") if orbit is not exactly a beta-orbit
 */
MagicUnitary magic_unitary(const MatchedPair& mp, const std::vector<int>& orbit);

/**
 * @brief Permutation unitary pi(u_gamma) on l²(G).
 *
 * (pi(u_gamma) xi)(g) = xi(alpha_{gamma^{-1}}(g)); gamma -> pi(u_gamma) is a
 * unitary representation of Gamma.
 *
 * @param gamma_index gamma-local index
 */
CMat covariant_u(const MatchedPair& mp, int gamma_index);

/**
 * @brief Diagonal multiplication operator pi(omega(f)) = diag(f) on l²(G).
 *
 * @param f coefficients indexed by g-local index (size |G|)
 */
CMat covariant_omega(const MatchedPair& mp, const CVec& f);

/**
 * @brief Bi-unitary V = sum_{r,s} e_{r,s} (x) pi(u_r) pi(omega(v_{r,s})).
 *
 * Block (a, b) of the returned n|G| x n|G| matrix is
 * pi(u_{orbit[a]}) diag(indicator of A_{orbit[a], orbit[b]}).  Unitarity is
 * verified to 1e-12.
 *
 * @param orbit gamma-local indices forming one full beta-orbit
 * @throws Error("BadInput") if orbit is not exactly a beta-orbit
 */
CMat rep_unitary(const MatchedPair& mp, const std::vector<int>& orbit);

/**
 * @brief Bicrossed-product channel of a beta-orbit and a state on it.
 *
 * Phi(rho) = sum_{r,r',s} phi(e_{r,r'}) V_{r,s} rho V_{r',s}^dag on l²(G),
 * assembled through the block-unitary channel construction with the orbit
 * state as the (possibly non-faithful) block state.  Trace preserving and
 * unital for every state phi.
 *
 * @param phi n x n density matrix indexed like orbit
 * @throws Error("BadInput") if orbit is not exactly a beta-orbit
 * @throws Error("NotAState") if phi is not PSD with unit trace
 */
Channel bicrossed_channel(const MatchedPair& mp, const std::vector<int>& orbit,
                          const CMat& phi);

/**
 * @brief Explicit mixed-unitary form of the tracial bicrossed channel.
 *
 * For phi the normalized trace, Phi(rho) = (1/n²) sum_{r,k}
 * W_{r,k} rho W_{r,k}^dag with unitaries W_{r,k} = pi(u_r) U_r^k, where
 * U_r = sum_s exp(2 pi i idx(s) / n) P_{r,s} is the phase unitary of row r of
 * the magic unitary.  Returns the channel with this Kraus family.
 */
Channel mixed_unitary_reconstruction(const MatchedPair& mp,
                                     const std::vector<int>& orbit);

/// Phase unitary of a projective measurement together with the verified
/// deviation between the measurement channel and the averaged conjugations.
struct PhaseUnitaryReport {
  CMat unitary;               ///< U = sum_k exp(2 pi i k / n) p_k
  double max_deviation = 0.0; ///< max |transfer(pinch) - transfer(average)|
};

/**
 * @brief Phase unitary realizing a projective measurement as mixed unitary.
 *
 * Given a PVM {p_1, ..., p_n}, builds U = sum_k exp(2 pi i k / n) p_k and
 * verifies (1/n) sum_k U^k rho U^{-k} = sum_i p_i rho p_i by comparing
 * transfer matrices entrywise.
 *
 * @throws Error("NotAPVM") if the blocks are not orthogonal projections
 *         summing to the identity (tolerance 1e-10)
 */
PhaseUnitaryReport pvm_phase_unitary(const std::vector<CMat>& pvm);

}  // namespace qexpand
