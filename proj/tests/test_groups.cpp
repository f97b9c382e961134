#include <vector>

#include "doctest.h"
#include "qexpand/groups.hpp"

using namespace qexpand;

namespace {

FiniteGroup s3() { return FiniteGroup::from_permutation_generators({{1, 0, 2}, {1, 2, 0}}); }
FiniteGroup s4() {
  return FiniteGroup::from_permutation_generators({{1, 2, 3, 0}, {1, 0, 2, 3}});
}
FiniteGroup z6_table() {
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t[a][b] = (a + b) % 6;
  return FiniteGroup::from_mult_table(t);
}

}  // namespace

TEST_CASE("symmetric group on 3 points: BFS indexing is pinned") {
  const FiniteGroup G = s3();
  REQUIRE(G.order() == 6);
  // Discovery order from identity with generators [(01), (012)].
  const std::vector<std::vector<int>> expected = {
      {0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {0, 2, 1}, {2, 1, 0}, {2, 0, 1}};
  for (int i = 0; i < 6; ++i) CHECK(G.permutation(i) == expected[i]);
  // (01) * (012) applies the 3-cycle first: that is the transposition (12).
  CHECK(G.mult(1, 2) == 3);
  CHECK(G.inverse(2) == 5);
  CHECK(G.element_order(0) == 1);
  CHECK(G.element_order(1) == 2);
  CHECK(G.element_order(2) == 3);
  CHECK(*G.index_of_permutation({2, 0, 1}) == 5);
  CHECK_FALSE(G.index_of_permutation({0, 1}).has_value());
  CHECK(named_element_set(G, "transpositions") == std::vector<int>{1, 3, 4});
  CHECK(named_element_set(G, "involutions") == std::vector<int>{1, 3, 4});
}

TEST_CASE("multiplication-table construction validates and matches cyclic arithmetic") {
  const FiniteGroup Z6 = z6_table();
  CHECK(Z6.order() == 6);
  CHECK(Z6.element_order(1) == 6);
  CHECK(Z6.inverse(2) == 4);
  CHECK_FALSE(Z6.has_permutations());

  std::vector<std::vector<int>> bad = {{0, 1}, {1, 1}};  // 1 has no inverse
  CHECK_THROWS_WITH_AS(FiniteGroup::from_mult_table(bad), doctest::Contains("NotASubgroup"),
                       Error);
  CHECK_THROWS_AS(FiniteGroup::from_permutation_generators({{0, 0, 1}}), Error);
}

TEST_CASE("cosets, subgroup closure, and the full subgroup lattice of S3") {
  const FiniteGroup G = s3();
  const std::vector<std::vector<int>> cs = cosets(G, {0, 1});
  const std::vector<std::vector<int>> expected = {{0, 1}, {2, 4}, {3, 5}};
  CHECK(cs == expected);
  CHECK(subgroup_closure(G, {2}) == std::vector<int>{0, 2, 5});
  CHECK(is_subgroup(G, {0, 2, 5}));
  CHECK_FALSE(is_subgroup(G, {0, 1, 2}));
  CHECK_THROWS_WITH_AS(cosets(G, {0, 1, 2}), doctest::Contains("NotASubgroup"), Error);

  const auto subs = all_subgroups(G);
  REQUIRE(subs.size() == 6);  // trivial, three order-2, one order-3, full
  CHECK(subs.front() == std::vector<int>{0});
  CHECK(subs.back().size() == 6);
  std::vector<std::size_t> sizes;
  for (const auto& H : subs) sizes.push_back(H.size());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 2, 3, 6});
}

TEST_CASE("left regular representation is a unitary homomorphism") {
  const FiniteGroup G = s3();
  for (int a : {1, 2, 4})
    for (int b : {2, 3, 5}) {
      const CMat lhs = regular_rep_matrix(G, a) * regular_rep_matrix(G, b);
      const CMat rhs = regular_rep_matrix(G, G.mult(a, b));
      CHECK(max_abs(lhs - rhs) == 0.0);
    }
}

TEST_CASE("irreducible representations of S3: dimensions and characters") {
  const FiniteGroup G = s3();
  const auto reps = irreps(G);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].dimension == 1);
  CHECK(reps[1].dimension == 1);
  CHECK(reps[2].dimension == 2);
  // Canonical order sorts the sign character before the trivial one.
  const std::vector<double> sign = {1, -1, 1, -1, -1, 1};
  const std::vector<double> trivial = {1, 1, 1, 1, 1, 1};
  const std::vector<double> standard = {2, 0, -1, 0, 0, -1};
  auto check_char = [](const Irrep& rep, const std::vector<double>& want) {
    const auto chi = rep.character();
    for (std::size_t g = 0; g < want.size(); ++g) {
      CHECK(chi[g].real() == doctest::Approx(want[g]).epsilon(1e-8));
      CHECK(std::abs(chi[g].imag()) < 1e-8);
    }
  };
  check_char(reps[0], sign);
  check_char(reps[1], trivial);
  check_char(reps[2], standard);
  CHECK_FALSE(reps[0].is_trivial());
  CHECK(reps[1].is_trivial());

  // Unitarity and the homomorphism property for the 2-dimensional irrep.
  const auto& pi = reps[2].matrices;
  for (int a = 0; a < 6; ++a) {
    CHECK(max_abs(pi[a].adjoint() * pi[a] - CMat::Identity(2, 2)) < 1e-10);
    for (int b = 0; b < 6; ++b) CHECK(max_abs(pi[a] * pi[b] - pi[G.mult(a, b)]) < 1e-10);
  }

  // Different seeds agree on dimensions and characters.
  const auto reps2 = irreps(G, 12345);
  REQUIRE(reps2.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(reps2[k].dimension == reps[k].dimension);
    const auto ca = reps[k].character();
    const auto cb = reps2[k].character();
    for (int g = 0; g < 6; ++g) CHECK(std::abs(ca[g] - cb[g]) < 1e-8);
  }
}

TEST_CASE("irreducible representations of Z6 and A5 have the known dimension lists") {
  const auto z6_reps = irreps(z6_table());
  REQUIRE(z6_reps.size() == 6);
  for (const auto& rep : z6_reps) CHECK(rep.dimension == 1);

  const FiniteGroup A5 =
      FiniteGroup::from_permutation_generators({{1, 2, 3, 4, 0}, {1, 0, 3, 2, 4}});
  REQUIRE(A5.order() == 60);
  const auto a5_reps = irreps(A5);
  std::vector<int> dims;
  for (const auto& rep : a5_reps) dims.push_back(rep.dimension);
  CHECK(dims == std::vector<int>{1, 3, 3, 4, 5});
}

TEST_CASE("certified Kazhdan lower bounds for transposition sets") {
  const FiniteGroup G3 = s3();
  const auto reps3 = irreps(G3);
  const auto T3 = named_element_set(G3, "transpositions");
  CHECK(kazhdan_lower_bound(G3, T3, reps3) ==
        doctest::Approx(1.414213562373095).epsilon(1e-10));

  const FiniteGroup G4 = s4();
  REQUIRE(G4.order() == 24);
  const auto T4 = named_element_set(G4, "transpositions");
  CHECK(T4 == std::vector<int>{2, 16, 17, 18, 19, 20});
  const auto reps4 = irreps(G4);
  std::vector<int> dims4;
  for (const auto& rep : reps4) dims4.push_back(rep.dimension);
  CHECK(dims4 == std::vector<int>{1, 1, 2, 3, 3});
  CHECK(kazhdan_lower_bound(G4, T4, reps4) ==
        doctest::Approx(1.1547005383792512).epsilon(1e-10));

  // The 3-cycles generate only the alternating subgroup: the sign irrep keeps
  // an invariant vector, which the certificate must refuse.
  CHECK_THROWS_WITH_AS(kazhdan_lower_bound(G3, {2, 5}, reps3),
                       doctest::Contains("NotGenerating"), Error);
  CHECK_THROWS_WITH_AS(kazhdan_lower_bound(G3, {2}, reps3), doctest::Contains("NotSymmetric"),
                       Error);
  CHECK_THROWS_WITH_AS(named_element_set(G3, "bogus"), doctest::Contains("UnknownSet"), Error);
}
