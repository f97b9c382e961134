/**
 * Finite simple undirected graphs: expansion constants, spectra, Cheeger
 * verification, Cayley/Schreier constructions, and cycle-cover decompositions.
 *
 * The expansion (Cheeger) constant h(G) is the minimum over proper nonempty
 * vertex subsets U of |E(U, V\U)| / min(|U|, |V\U|), computed exactly by
 * exhaustive subset enumeration for |V| <= 24 (subsets are halved by fixing
 * vertex 0 inside U).
 *
 * A cycle-cover decomposition of a d-regular graph is a list of d vertex
 * permutations P_1..P_d whose permutation matrices sum to the adjacency
 * matrix: floor(d/2) disjoint-cycle 2-factors each contributes a consecutive
 * pair (P, P^-1); for odd d the final permutation is a fixed-point-free
 * involution read off a perfect matching.  Extraction: for odd d a perfect
 * matching is removed first (blossom algorithm); the even-regular remainder
 * is Euler-oriented per component, and the resulting out-degree-(d'/2)
 * orientation is split into permutations by repeated bipartite perfect
 * matchings (Hall's theorem guarantees success; orienting first ensures each
 * permutation has no 2-cycles, so the matrix-sum identity is exact).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qexpand/groups.hpp"
#include "qexpand/numerics.hpp"

namespace qexpand {

struct Graph {
  int n = 0;
  /// Unordered distinct pairs (u < v), sorted; no loops, no duplicates.
  std::vector<std::pair<int, int>> edges;

  /// Validates and normalizes (sorts endpoints/edges, rejects loops and dups).
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

  RMat adjacency() const;
  std::vector<std::vector<int>> adjacency_list() const;
  /// Degree if regular, nullopt otherwise.
  std::optional<int> regular_degree() const;
  bool is_connected() const;
};

Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph petersen_graph();
/// k-dimensional hypercube (2^k vertices).
Graph hypercube_graph(int k);
/// Random d-regular simple connected graph via the seeded pairing model
/// (resampled until simple and connected; deterministic for a fixed seed).
Graph random_regular_graph(int n, int d, std::uint64_t seed);

/**
 * @brief Exact expansion constant by exhaustive subset enumeration.
 * @throws Error("TooLarge") if |V| > 24 (use spectral bounds instead).
 */
double expansion_constant(const Graph& g);

struct SpectralData {
  RVec eigenvalues;  ///< adjacency spectrum, descending
  double lambda2 = 0.0;  ///< second entry (counting multiplicity); 0 if |V| < 2
  bool connected = false;
  std::optional<int> regular_degree;
};
SpectralData spectral_data(const Graph& g);

struct CheegerReport {
  int degree = 0;
  double h = 0.0;
  double lambda2 = 0.0;
  double lower = 0.0;   ///< (d - lambda2) / 2
  double upper = 0.0;   ///< sqrt(2 d (d - lambda2))
  double mohar = 0.0;   ///< sqrt(d^2 - lambda2^2), the stronger upper bound
  bool lower_ok = false;
  bool upper_ok = false;
  bool mohar_ok = false;
};

/**
 * @brief Computes h and asserts the Cheeger sandwich
 *        (d - lambda2)/2 <= h <= sqrt(2 d (d - lambda2)) and the refinement
 *        h <= sqrt(d^2 - lambda2^2).
 * @throws Error("NotRegular"), Error("NotConnected"), Error("TooLarge").
 */
CheegerReport check_cheeger(const Graph& g);

/**
 * @brief Cayley graph C(Gamma, S): vertices are group elements, edges {g, gs}.
 * @throws Error("NotSymmetric") if S != S^-1, Error("ContainsIdentity") if e in S.
 */
Graph cayley_graph(const FiniteGroup& G, const std::vector<int>& S);

struct SchreierGraph {
  std::vector<std::vector<int>> coset_partition;  ///< left cosets gH, by smallest member
  /// Weighted adjacency: entry (i, j) = |{s in S : s * (coset i) = coset j}|;
  /// loops and multiplicities retained, so every row sums to |S|.
  Eigen::MatrixXi weighted;
  /// Simple-graph projection: edge {i, j} iff i != j and weighted(i,j) > 0.
  Graph simple;
};

/**
 * @brief Schreier coset graph on left cosets gH under left multiplication.
 * @throws Error("NotSymmetric") if S != S^-1, Error("NotASubgroup").
 */
SchreierGraph schreier_graph(const FiniteGroup& G, const std::vector<int>& H,
                             const std::vector<int>& S);

struct CycleCoverDecomposition {
  /// perms[k][v] = image of vertex v under P_{k+1}.
  std::vector<std::vector<int>> perms;
};

/**
 * @brief Decomposes a d-regular graph into d permutations summing to A(G).
 * @throws Error("NotRegular") if G is not regular.
 * @throws Error("DecompositionFailed") if no perfect matching exists at the
 *         odd-degree stage (the message names the stage).
 */
CycleCoverDecomposition cycle_cover_decomposition(const Graph& g, std::uint64_t seed);

/// Permutation matrix (real) of one cover permutation.
RMat permutation_matrix(const std::vector<int>& perm);

}  // namespace qexpand
