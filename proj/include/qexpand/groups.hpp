/**
 * Finite groups and their unitary representation theory.
 *
 * Groups are stored as flat multiplication/inverse tables over element
 * indices, with the identity fixed at index 0.  Groups built from permutation
 * generators keep the underlying permutations (needed for named generating
 * sets such as "transpositions" and for matched-pair factorizations); element
 * order is the BFS discovery order from the identity, appending x*s for each
 * generator s, so a fixed generator list pins the whole indexing.
 *
 * Composition convention for permutations: (p*q)(x) = p(q(x)), i.e. q acts
 * first.  The multiplication table stores mult(a, b) = index of a*b.
 *
 * Irreducible representations are extracted numerically: a random Hermitian
 * element of the commutant of the left regular representation is
 * diagonalized; each eigenvalue cluster spans an irreducible subrepresentation
 * for generic coefficients, and compressing the regular representation to the
 * cluster yields the unitary irrep matrices.  Completeness (sum of squared
 * dimensions equals the order) is verified, with reseeded retries on the rare
 * degenerate draw.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qexpand/numerics.hpp"

namespace qexpand {

class FiniteGroup {
 public:
  static constexpr int identity = 0;
  /// Largest supported order (table size guard, also the closure guard).
  static constexpr int max_order = 5000;

  /// Build from an explicit multiplication table; validates the group axioms
  /// (associativity exhaustively up to order 64, 10^4 sampled triples above).
  static FiniteGroup from_mult_table(const std::vector<std::vector<int>>& table);

  /// Closure of permutation generators under composition, BFS order from the
  /// identity.  All permutations must act on the same ground set.
  /// @throws Error("ClosureTooLarge") if the closure exceeds max_order.
  static FiniteGroup from_permutation_generators(const std::vector<std::vector<int>>& gens);

  int order() const { return order_; }
  int mult(int a, int b) const { return mult_[static_cast<std::size_t>(a) * order_ + b]; }
  int inverse(int a) const { return inv_[a]; }

  /// Order of the element (smallest k >= 1 with g^k = e).
  int element_order(int g) const;

  /// True when built from permutation generators (permutation(i) available).
  bool has_permutations() const { return !perms_.empty(); }
  /// Underlying permutation of element i (only when has_permutations()).
  const std::vector<int>& permutation(int i) const { return perms_[i]; }
  /// Index of the given permutation, or nullopt if not in the group.
  std::optional<int> index_of_permutation(const std::vector<int>& p) const;

 private:
  FiniteGroup() = default;
  void build_inverses();
  void validate_axioms() const;

  int order_ = 0;
  std::vector<std::uint16_t> mult_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> perms_;
};

/// Permutation matrix of the left regular representation:
/// lambda(g) delta_h = delta_{gh}.
CMat regular_rep_matrix(const FiniteGroup& G, int g);

struct Irrep {
  int dimension = 0;
  /// One unitary dimension x dimension matrix per group element index.
  std::vector<CMat> matrices;

  /// Character chi(g) = Tr pi(g).
  std::vector<cplx> character() const;
  /// True iff dimension 1 with all values 1 (the trivial representation).
  bool is_trivial(double tol = 1e-8) const;
};

/**
 * @brief Complete list of pairwise-inequivalent irreducible unitary reps.
 *
 * Deterministic for a fixed (group, seed); output order is canonical
 * (ascending dimension, then lexicographic character), so different seeds
 * agree except for basis choice within each irrep.
 *
 * @throws Error("SplitFailed") if extraction fails 8 reseeded attempts.
 */
std::vector<Irrep> irreps(const FiniteGroup& G, std::uint64_t seed = 1, double tol = 1e-8);

/**
 * @brief Certified Kazhdan constant for the pair (S, .) on a finite group.
 *
 * Returns eps = min over nontrivial irreps pi of sqrt(2 (1 - lambda_max(Re M_pi)))
 * with M_pi = (1/|S|) sum_{s in S} pi(s).  Every unit vector xi in a
 * nontrivial irrep then satisfies max_{s in S} ||pi(s) xi - xi|| >= eps
 * (max >= mean), so (S, eps) is a valid Kazhdan pair.
 *
 * @throws Error("NotSymmetric") if S is not closed under inverses.
 * @throws Error("NotGenerating") if some nontrivial M_pi has eigenvalue 1,
 *         i.e. the Cayley graph is disconnected.
 */
double kazhdan_lower_bound(const FiniteGroup& G, const std::vector<int>& S,
                           const std::vector<Irrep>& reps);

/// Left cosets gH as a partition of {0..order-1}; cosets ordered by smallest
/// member, members ascending.
/// @throws Error("NotASubgroup") if H is not closed under product and inverse.
std::vector<std::vector<int>> cosets(const FiniteGroup& G, const std::vector<int>& H);

/// True iff H (a set of element indices) is a subgroup.
bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H);

/// Subgroup generated by the given elements (sorted element list).
std::vector<int> subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens);

/// Every subgroup, as sorted element lists, ordered by (size, lexicographic).
/// Exhaustive closure-extension search; intended for small groups (|G| <= ~60).
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& G);

/// Named generating sets for permutation groups ("transpositions": all
/// elements whose permutation is a single 2-cycle).
/// @throws Error("NotGenerating") if the name matches no elements.
std::vector<int> named_element_set(const FiniteGroup& G, const std::string& name);

}  // namespace qexpand
