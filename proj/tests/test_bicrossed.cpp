// Tests for matched pairs and bicrossed-product channels.  Oracles: direct
// and semidirect products where both actions have closed forms (identity,
// conjugation), an exhaustively verified cyclic-times-stabilizer
// factorization of the order-24 permutation group with hand-checked magic
// unitary rows, and the phase-unitary identity that writes any projective
// measurement as a uniform mixture of unitary conjugations.
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qexpand/bicrossed.hpp"
#include "qexpand/channels.hpp"
#include "qexpand/error.hpp"
#include "qexpand/groups.hpp"
#include "qexpand/numerics.hpp"

using namespace qexpand;

namespace {

FiniteGroup s3() {
  return FiniteGroup::from_permutation_generators({{1, 0, 2}, {1, 2, 0}});
}

FiniteGroup s4() {
  return FiniteGroup::from_permutation_generators({{1, 2, 3, 0}, {1, 0, 2, 3}});
}

FiniteGroup cyclic(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  return FiniteGroup::from_mult_table(table);
}

// Z6 = Z2 x Z3 as an internal direct product.
MatchedPair direct_pair() {
  return from_factorization(cyclic(6), {0, 3}, {0, 2, 4});
}

// S3 = Z2 x| A3: the two-element subgroup acts on the rotations by
// conjugation while beta stays trivial (A3 is normal).
MatchedPair semidirect_pair() {
  const FiniteGroup h = s3();
  return from_factorization(h, {0, 1}, {0, 2, 5});
}

// Order-24 pair: the cyclic subgroup generated by the 4-cycle against the
// stabilizer of the last point.  Neither action is trivial.
MatchedPair order24_pair() {
  const FiniteGroup h = s4();
  const std::vector<int> gamma = subgroup_closure(h, {1});
  std::vector<int> g;
  for (int i = 0; i < h.order(); ++i)
    if (h.permutation(i)[3] == 3) g.push_back(i);
  return from_factorization(h, gamma, g);
}

// The defining identity gamma * g = alpha_gamma(g) * beta_g(gamma), checked
// on every pair with ambient integer arithmetic.
void check_factorization_identity(const MatchedPair& mp) {
  for (int r = 0; r < mp.gamma_size(); ++r)
    for (int j = 0; j < mp.g_size(); ++j) {
      const int lhs =
          mp.ambient.mult(mp.gamma_elements[r], mp.g_elements[j]);
      const int rhs =
          mp.ambient.mult(mp.g_elements[mp.alpha[r][j]],
                          mp.gamma_elements[mp.beta[j][r]]);
      CHECK(lhs == rhs);
    }
}

// Second singular value of the transfer matrix compressed to the orthogonal
// complement of vec(identity), the invariant line of a unital TP channel.
double sigma2(const Channel& phi) {
  const int d = phi.dim;
  CMat basis = CMat::Zero(d * d, 1);
  for (int i = 0; i < d; ++i) basis(i * d + i, 0) = 1.0 / std::sqrt(double(d));
  const Eigen::HouseholderQR<CMat> qr(basis);
  const CMat q = qr.householderQ() * CMat::Identity(d * d, d * d);
  const CMat perp = q.rightCols(d * d - 1);
  return operator_norm(CMat(perp.adjoint() * transfer_matrix(phi) * perp));
}

Channel compose(const Channel& outer, const Channel& inner) {
  std::vector<CMat> kraus;
  for (const CMat& k : outer.kraus)
    for (const CMat& l : inner.kraus) kraus.push_back(CMat(k * l));
  return Channel::from_kraus(outer.dim, std::move(kraus));
}

}  // namespace

TEST_CASE("matched pairs from exact factorizations") {
  // Direct product: both actions are trivial.
  const MatchedPair dp = direct_pair();
  CHECK(dp.gamma_elements == std::vector<int>{0, 3});
  CHECK(dp.g_elements == std::vector<int>{0, 2, 4});
  for (int r = 0; r < dp.gamma_size(); ++r)
    for (int j = 0; j < dp.g_size(); ++j) {
      CHECK(dp.alpha[r][j] == j);
      CHECK(dp.beta[j][r] == r);
    }
  check_factorization_identity(dp);

  // Semidirect product: beta trivial, alpha is conjugation.
  const MatchedPair sp = semidirect_pair();
  const FiniteGroup& h = sp.ambient;
  for (int r = 0; r < sp.gamma_size(); ++r)
    for (int j = 0; j < sp.g_size(); ++j) {
      CHECK(sp.beta[j][r] == r);
      const int gamma = sp.gamma_elements[r];
      const int conj =
          h.mult(h.mult(gamma, sp.g_elements[j]), h.inverse(gamma));
      CHECK(sp.g_elements[sp.alpha[r][j]] == conj);
    }
  check_factorization_identity(sp);
  // The reflection genuinely acts: conjugation by (01) swaps the rotations.
  CHECK(sp.alpha[1] != sp.alpha[0]);

  // Order-24 pair: both actions nontrivial, lookup tables consistent.
  const MatchedPair bp = order24_pair();
  CHECK(bp.gamma_elements == std::vector<int>{0, 1, 3, 6});
  CHECK(bp.g_elements == std::vector<int>{0, 2, 12, 18, 20, 21});
  check_factorization_identity(bp);
  bool alpha_moves = false, beta_moves = false;
  for (int r = 0; r < bp.gamma_size(); ++r)
    for (int j = 0; j < bp.g_size(); ++j) {
      alpha_moves |= bp.alpha[r][j] != j;
      beta_moves |= bp.beta[j][r] != r;
    }
  CHECK(alpha_moves);
  CHECK(beta_moves);
  for (int i = 0; i < bp.ambient.order(); ++i) {
    const int r = bp.gamma_local[i];
    const int j = bp.g_local[i];
    if (r >= 0) CHECK(bp.gamma_elements[r] == i);
    if (j >= 0) CHECK(bp.g_elements[j] == i);
  }

  // Error paths: non-subgroups, wrong orders, overlapping subgroups.
  CHECK_THROWS_WITH_AS(from_factorization(cyclic(4), {0, 1}, {0, 2}),
                       doctest::Contains("NotASubgroup"), Error);
  CHECK_THROWS_WITH_AS(from_factorization(s4(), {0, 2}, order24_pair().g_elements),
                       doctest::Contains("NotExactFactorization"), Error);
  CHECK_THROWS_WITH_AS(from_factorization(cyclic(4), {0, 2}, {0, 2}),
                       doctest::Contains("NotExactFactorization"), Error);
}

TEST_CASE("beta orbits partition gamma") {
  const MatchedPair dp = direct_pair();
  CHECK(beta_orbit(dp, 0) == std::vector<int>{0});
  CHECK(beta_orbit(dp, 1) == std::vector<int>{1});

  const MatchedPair bp = order24_pair();
  CHECK(beta_orbit(bp, 0) == std::vector<int>{0});
  const std::vector<int> big = beta_orbit(bp, 1);
  CHECK(big == std::vector<int>{1, 2, 3});
  CHECK(beta_orbit(bp, 2) == big);
  CHECK(beta_orbit(bp, 3) == big);

  CHECK_THROWS_WITH_AS(beta_orbit(bp, 7), doctest::Contains("BadInput"), Error);
}

TEST_CASE("magic unitaries of beta orbits") {
  // Trivial beta: every orbit is a singleton and its single entry is all of G.
  const MatchedPair sp = semidirect_pair();
  for (int r = 0; r < sp.gamma_size(); ++r) {
    const MagicUnitary mu = magic_unitary(sp, {r});
    CHECK(mu.entries[0][0] == std::vector<int>(sp.g_size(), 1));
  }

  // Order-24 pair, three-element orbit: rows partition G into three pairs,
  // pinned to the hand-derived supports (g-local indices).
  const MatchedPair bp = order24_pair();
  const MagicUnitary mu = magic_unitary(bp, {1, 2, 3});
  using Row = std::vector<std::vector<int>>;
  const std::vector<Row> expected = {
      {{1, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 0}},
      {{0, 0, 1, 1, 0, 0}, {1, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 0, 1}},
      {{0, 0, 0, 0, 1, 1}, {0, 1, 1, 0, 0, 0}, {1, 0, 0, 1, 0, 0}}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(mu.entries[a][b] == expected[a][b]);

  // Rows and columns partition G (beyond the constructor's own check).
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < bp.g_size(); ++j) {
      int row = 0, col = 0;
      for (int b = 0; b < 3; ++b) {
        row += mu.entries[a][b][j];
        col += mu.entries[b][a][j];
      }
      CHECK(row == 1);
      CHECK(col == 1);
    }

  CHECK_THROWS_WITH_AS(magic_unitary(bp, {0, 1}), doctest::Contains("BadInput"),
                       Error);
  CHECK_THROWS_WITH_AS(magic_unitary(bp, {1}), doctest::Contains("BadInput"),
                       Error);
  CHECK_THROWS_WITH_AS(magic_unitary(bp, {}), doctest::Contains("BadInput"),
                       Error);
}

TEST_CASE("covariant representation and the covariance relation") {
  const std::vector<MatchedPair> pairs = {direct_pair(), semidirect_pair(),
                                          order24_pair()};
  for (const MatchedPair& mp : pairs) {
    const int m = mp.g_size();
    const CMat id = CMat::Identity(m, m);
    for (int r = 0; r < mp.gamma_size(); ++r) {
      const CMat u = covariant_u(mp, r);
      CHECK(max_abs(CMat(u * u.adjoint() - id)) == 0.0);
      // Homomorphism: pi(u_gamma) pi(u_gamma') = pi(u_{gamma gamma'}).
      for (int r2 = 0; r2 < mp.gamma_size(); ++r2) {
        const int prod = mp.gamma_local[mp.ambient.mult(
            mp.gamma_elements[r], mp.gamma_elements[r2])];
        CHECK(max_abs(CMat(u * covariant_u(mp, r2) - covariant_u(mp, prod))) ==
              0.0);
      }
      // Covariance on every basis multiplier, exactly.
      const int inv =
          mp.gamma_local[mp.ambient.inverse(mp.gamma_elements[r])];
      for (int j = 0; j < m; ++j) {
        CVec f = CVec::Zero(m);
        f[j] = 1.0;
        CVec rotated(m);
        for (int k = 0; k < m; ++k) rotated[k] = f[mp.alpha[inv][k]];
        const CMat lhs =
            u * covariant_omega(mp, f) * u.adjoint();
        CHECK(max_abs(CMat(lhs - covariant_omega(mp, rotated))) == 0.0);
      }
    }
  }
  CHECK_THROWS_WITH_AS(covariant_omega(direct_pair(), CVec::Ones(2)),
                       doctest::Contains("BadInput"), Error);
}

TEST_CASE("block bi-unitaries of orbits") {
  // Singleton orbits: the indicator is all of G, so V = pi(u_r).
  const MatchedPair sp = semidirect_pair();
  CHECK(max_abs(CMat(rep_unitary(sp, {0}) - CMat::Identity(3, 3))) == 0.0);
  CHECK(max_abs(CMat(rep_unitary(sp, {1}) - covariant_u(sp, 1))) == 0.0);

  // Three-element orbit: an 18x18 unitary whose blocks are u_r P_{r,s}.
  const MatchedPair bp = order24_pair();
  const std::vector<int> orbit = {1, 2, 3};
  const CMat v = rep_unitary(bp, orbit);
  REQUIRE(v.rows() == 18);
  const CMat id = CMat::Identity(18, 18);
  CHECK(max_abs(CMat(v * v.adjoint() - id)) <= 1e-12);
  CHECK(max_abs(CMat(v.adjoint() * v - id)) <= 1e-12);
  const MagicUnitary mu = magic_unitary(bp, orbit);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CVec ind(6);
      for (int j = 0; j < 6; ++j) ind[j] = double(mu.entries[a][b][j]);
      const CMat block = covariant_u(bp, orbit[a]) * covariant_omega(bp, ind);
      CHECK(max_abs(CMat(v.block(6 * a, 6 * b, 6, 6) - block)) == 0.0);
    }
  // Bi-unitarity: each block row and column sums to a unitary change of basis.
  for (int a = 0; a < 3; ++a) {
    CMat row_sum = CMat::Zero(6, 6);
    CMat col_sum = CMat::Zero(6, 6);
    for (int b = 0; b < 3; ++b) {
      const CMat vab = v.block(6 * a, 6 * b, 6, 6);
      const CMat vba = v.block(6 * b, 6 * a, 6, 6);
      row_sum += vab.adjoint() * vab;
      col_sum += vba * vba.adjoint();
    }
    CHECK(max_abs(CMat(row_sum - CMat::Identity(6, 6))) <= 1e-12);
    CHECK(max_abs(CMat(col_sum - CMat::Identity(6, 6))) <= 1e-12);
  }
}

TEST_CASE("bicrossed channels are unital and trace preserving") {
  const MatchedPair bp = order24_pair();
  const std::vector<int> orbit = {1, 2, 3};

  // Identity orbit gives the identity channel.
  CMat one = CMat::Identity(1, 1);
  const Channel idch = bicrossed_channel(bp, {0}, one);
  CHECK(max_abs(CMat(transfer_matrix(idch) - CMat::Identity(36, 36))) <= 1e-12);

  // Tracial state: CPTP, unital, and mixed unitary with the explicit
  // phase-unitary Kraus family.
  const CMat tracial = CMat::Identity(3, 3) / 3.0;
  const Channel phi = bicrossed_channel(bp, orbit, tracial);
  CHECK(phi.dim == 6);
  const ChannelChecks checks = validate_channel(phi);
  CHECK(checks.completely_positive);
  CHECK(checks.trace_preserving);
  CHECK(checks.unital);
  const Channel mixed = mixed_unitary_reconstruction(bp, orbit);
  CHECK(mixed.kraus.size() == 9);
  for (const CMat& k : mixed.kraus) {
    const CMat scaled = 3.0 * k;  // weight 1/9 per unitary
    CHECK(max_abs(CMat(scaled * scaled.adjoint() - CMat::Identity(6, 6))) <=
          1e-12);
  }
  CHECK(max_abs(CMat(choi_matrix(phi) - choi_matrix(mixed))) <= 1e-9);

  // Non-tracial states still give unital CPTP channels (bi-unitarity).
  CMat skew = CMat::Zero(3, 3);
  skew(0, 0) = 0.7;
  skew(1, 1) = 0.2;
  skew(2, 2) = 0.1;
  const ChannelChecks skew_checks = validate_channel(bicrossed_channel(bp, orbit, skew));
  CHECK(skew_checks.completely_positive);
  CHECK(skew_checks.trace_preserving);
  CHECK(skew_checks.unital);

  // A pure (non-faithful) state is accepted and still bi-unitary.
  CMat pure = CMat::Zero(3, 3);
  pure(0, 0) = 1.0;
  const ChannelChecks pure_checks = validate_channel(bicrossed_channel(bp, orbit, pure));
  CHECK(pure_checks.completely_positive);
  CHECK(pure_checks.trace_preserving);
  CHECK(pure_checks.unital);

  // Error paths: malformed states and orbits.
  CMat short_trace = CMat::Identity(3, 3) * 0.2;
  CHECK_THROWS_WITH_AS(bicrossed_channel(bp, orbit, short_trace),
                       doctest::Contains("NotAState"), Error);
  CMat indefinite = CMat::Zero(3, 3);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_WITH_AS(bicrossed_channel(bp, orbit, indefinite),
                       doctest::Contains("NotAState"), Error);
  CHECK_THROWS_WITH_AS(bicrossed_channel(bp, {0, 1}, tracial),
                       doctest::Contains("BadInput"), Error);

  // Composition never improves the second singular value.
  std::vector<CMat> conj_kraus;
  for (int r : orbit)
    conj_kraus.push_back(CMat(covariant_u(bp, r) / std::sqrt(3.0)));
  const Channel lambda = Channel::from_kraus(6, std::move(conj_kraus));
  const Channel composed = compose(phi, lambda);
  const double bound = std::min(sigma2(phi), sigma2(lambda));
  CHECK(sigma2(composed) <= bound + 1e-9);
  CHECK(sigma2(compose(phi, phi)) <= sigma2(phi) + 1e-9);
}

TEST_CASE("phase unitaries turn projective measurements into mixed unitaries") {
  // Single-block measurement: the phase unitary is the identity.
  const PhaseUnitaryReport whole = pvm_phase_unitary({CMat::Identity(3, 3)});
  CHECK(max_abs(CMat(whole.unitary - CMat::Identity(3, 3))) <= 1e-12);
  CHECK(whole.max_deviation <= 1e-12);

  // Rank-one diagonal measurement: conjugation averages kill off-diagonals.
  std::vector<CMat> diag_pvm;
  for (int i = 0; i < 3; ++i) {
    CMat p = CMat::Zero(3, 3);
    p(i, i) = 1.0;
    diag_pvm.push_back(p);
  }
  const PhaseUnitaryReport diag = pvm_phase_unitary(diag_pvm);
  CHECK(diag.max_deviation <= 1e-12);
  CHECK(max_abs(CMat(diag.unitary * diag.unitary.adjoint() -
                     CMat::Identity(3, 3))) <= 1e-12);
  const Channel pinch = Channel::from_kraus(3, diag_pvm);
  CMat rho = CMat::Zero(3, 3);
  rho(0, 1) = 1.0;
  CHECK(max_abs(pinch.apply(rho)) == 0.0);

  // A magic-unitary row is a PVM on l2(G): three rank-two projections.
  const MatchedPair bp = order24_pair();
  const MagicUnitary mu = magic_unitary(bp, {1, 2, 3});
  std::vector<CMat> row_pvm;
  for (int b = 0; b < 3; ++b) {
    CVec ind(6);
    for (int j = 0; j < 6; ++j) ind[j] = double(mu.entries[0][b][j]);
    row_pvm.push_back(covariant_omega(bp, ind));
  }
  const PhaseUnitaryReport row = pvm_phase_unitary(row_pvm);
  CHECK(row.max_deviation <= 1e-12);

  // Error paths: non-projections, wrong sums, non-self-adjoint blocks.
  CHECK_THROWS_WITH_AS(pvm_phase_unitary({CMat::Identity(3, 3) * 0.5,
                                          CMat::Identity(3, 3) * 0.5}),
                       doctest::Contains("NotAPVM"), Error);
  CMat corner = CMat::Zero(2, 2);
  corner(0, 0) = 1.0;
  CHECK_THROWS_WITH_AS(pvm_phase_unitary({corner}),
                       doctest::Contains("NotAPVM"), Error);
  CMat offdiag = CMat::Zero(2, 2);
  offdiag(0, 1) = 1.0;
  CHECK_THROWS_WITH_AS(pvm_phase_unitary({offdiag, CMat::Identity(2, 2)}),
                       doctest::Contains("NotAPVM"), Error);
  CHECK_THROWS_WITH_AS(pvm_phase_unitary({}), doctest::Contains("NotAPVM"),
                       Error);
}
