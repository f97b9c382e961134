#include "qexpand/bicrossed.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <utility>
#include <vector>

#include "qexpand/error.hpp"

namespace qexpand {

namespace {

// Local index lookup table: ambient index -> position in `elems` or -1.
std::vector<int> local_lookup(int order, const std::vector<int>& elems) {
  std::vector<int> lookup(order, -1);
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) lookup[elems[i]] = i;
  return lookup;
}

void check_orbit(const MatchedPair& mp, const std::vector<int>& orbit) {
  require(!orbit.empty(), "BadInput", "orbit must be nonempty");
  for (int r : orbit)
    require(r >= 0 && r < mp.gamma_size(), "BadInput",
            "orbit entries must be gamma-local indices");
  require(beta_orbit(mp, orbit.front()) == orbit, "BadInput",
          "orbit is not a full beta-orbit");
}

}  // namespace

MatchedPair from_factorization(const FiniteGroup& ambient,
                               const std::vector<int>& gamma,
                               const std::vector<int>& g) {
  require(is_subgroup(ambient, gamma), "NotASubgroup",
          "gamma is not a subgroup of the ambient group");
  require(is_subgroup(ambient, g), "NotASubgroup",
          "g is not a subgroup of the ambient group");

  std::vector<int> gamma_elements = gamma;
  std::vector<int> g_elements = g;
  std::sort(gamma_elements.begin(), gamma_elements.end());
  std::sort(g_elements.begin(), g_elements.end());
  const int n = static_cast<int>(gamma_elements.size());
  const int m = static_cast<int>(g_elements.size());
  const int order = ambient.order();
  require(static_cast<long long>(n) * m == order, "NotExactFactorization",
          "subgroup orders do not multiply to the group order");
  const std::vector<int> gamma_local = local_lookup(order, gamma_elements);
  const std::vector<int> g_local = local_lookup(order, g_elements);

  // Unique factorization h = g * gamma; duplicates mean a nontrivial
  // intersection (or any other failure of exactness).
  std::vector<std::pair<int, int>> factor(order, {-1, -1});  // h -> (g, gamma)
  for (int j = 0; j < m; ++j)
    for (int r = 0; r < n; ++r) {
      const int h = ambient.mult(g_elements[j], gamma_elements[r]);
      require(factor[h].first == -1, "NotExactFactorization",
              "products g * gamma repeat; the subgroups overlap");
      factor[h] = {j, r};
    }

  // gamma * g = alpha_gamma(g) * beta_g(gamma) read off the factorization.
  std::vector<std::vector<int>> alpha(n, std::vector<int>(m, -1));
  std::vector<std::vector<int>> beta(m, std::vector<int>(n, -1));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < m; ++j) {
      const int h = ambient.mult(gamma_elements[r], g_elements[j]);
      alpha[r][j] = factor[h].first;
      beta[j][r] = factor[h].second;
    }

  // Exhaustive integer verification of the matched-pair laws.
  const int e_gamma = gamma_local[FiniteGroup::identity];
  const int e_g = g_local[FiniteGroup::identity];
  for (int j = 0; j < m; ++j)
    require(alpha[e_gamma][j] == j, "NotExactFactorization",
            "alpha_e is not the identity");
  for (int r = 0; r < n; ++r)
    require(beta[e_g][r] == r, "NotExactFactorization",
            "beta_e is not the identity");
  for (int r = 0; r < n; ++r)
    for (int r2 = 0; r2 < n; ++r2) {
      const int prod =
          gamma_local[ambient.mult(gamma_elements[r], gamma_elements[r2])];
      for (int j = 0; j < m; ++j)
        require(alpha[prod][j] == alpha[r][alpha[r2][j]],
                "NotExactFactorization", "alpha is not a left action");
    }
  for (int j = 0; j < m; ++j)
    for (int j2 = 0; j2 < m; ++j2) {
      const int prod = g_local[ambient.mult(g_elements[j], g_elements[j2])];
      for (int r = 0; r < n; ++r)
        require(beta[prod][r] == beta[j2][beta[j][r]],
                "NotExactFactorization", "beta is not a right action");
    }
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < m; ++j)
      for (int j2 = 0; j2 < m; ++j2) {
        const int prod = g_local[ambient.mult(g_elements[j], g_elements[j2])];
        const int lhs = alpha[r][prod];
        const int rhs = g_local[ambient.mult(
            g_elements[alpha[r][j]], g_elements[alpha[beta[j][r]][j2]])];
        require(lhs == rhs, "NotExactFactorization",
                "alpha fails the cocycle law over products in G");
      }
  for (int j = 0; j < m; ++j)
    for (int r = 0; r < n; ++r)
      for (int r2 = 0; r2 < n; ++r2) {
        const int prod =
            gamma_local[ambient.mult(gamma_elements[r], gamma_elements[r2])];
        const int lhs = beta[j][prod];
        const int rhs = gamma_local[ambient.mult(
            gamma_elements[beta[alpha[r2][j]][r]],
            gamma_elements[beta[j][r2]])];
        require(lhs == rhs, "NotExactFactorization",
                "beta fails the cocycle law over products in Gamma");
      }
  return MatchedPair{ambient,         std::move(gamma_elements),
                     std::move(g_elements), std::move(alpha),
                     std::move(beta), std::move(gamma_local),
                     std::move(g_local)};
}

std::vector<int> beta_orbit(const MatchedPair& mp, int gamma_index) {
  require(gamma_index >= 0 && gamma_index < mp.gamma_size(), "BadInput",
          "gamma_index out of range");
  std::set<int> orbit;
  for (int j = 0; j < mp.g_size(); ++j) orbit.insert(mp.beta[j][gamma_index]);
  return {orbit.begin(), orbit.end()};
}

MagicUnitary magic_unitary(const MatchedPair& mp,
                           const std::vector<int>& orbit) {
  check_orbit(mp, orbit);
  const int n = static_cast<int>(orbit.size());
  const int m = mp.g_size();
  MagicUnitary mu;
  mu.orbit = orbit;
  mu.entries.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(m, 0)));
  std::vector<int> position(mp.gamma_size(), -1);
  for (int a = 0; a < n; ++a) position[orbit[a]] = a;
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < m; ++j) {
      const int b = position[mp.beta[j][orbit[a]]];
      require(b >= 0, "BadInput", "beta leaves the proposed orbit");
      mu.entries[a][b][j] = 1;
    }
  // Every row and every column partitions G.
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < m; ++j) {
      int row_sum = 0;
      int col_sum = 0;
      for (int b = 0; b < n; ++b) {
        row_sum += mu.entries[a][b][j];
        col_sum += mu.entries[b][a][j];
      }
      require(row_sum == 1 && col_sum == 1, "BadInput",
              "magic unitary rows/columns fail to partition G");
    }
  return mu;
}

CMat covariant_u(const MatchedPair& mp, int gamma_index) {
  require(gamma_index >= 0 && gamma_index < mp.gamma_size(), "BadInput",
          "gamma_index out of range");
  const int m = mp.g_size();
  const int inv =
      mp.gamma_local[mp.ambient.inverse(mp.gamma_elements[gamma_index])];
  CMat u = CMat::Zero(m, m);
  for (int j = 0; j < m; ++j) u(j, mp.alpha[inv][j]) = 1.0;
  return u;
}

CMat covariant_omega(const MatchedPair& mp, const CVec& f) {
  require(f.size() == mp.g_size(), "BadInput",
          "multiplier must have one coefficient per element of G");
  return CMat(f.asDiagonal());
}

CMat rep_unitary(const MatchedPair& mp, const std::vector<int>& orbit) {
  const MagicUnitary mu = magic_unitary(mp, orbit);
  const int n = static_cast<int>(orbit.size());
  const int m = mp.g_size();
  CMat v = CMat::Zero(n * m, n * m);
  for (int a = 0; a < n; ++a) {
    const CMat u = covariant_u(mp, orbit[a]);
    for (int b = 0; b < n; ++b) {
      CVec ind(m);
      for (int j = 0; j < m; ++j) ind[j] = static_cast<double>(mu.entries[a][b][j]);
      v.block(a * m, b * m, m, m) = u * covariant_omega(mp, ind);
    }
  }
  const double dev =
      (v * v.adjoint() - CMat::Identity(n * m, n * m)).cwiseAbs().maxCoeff();
  require(dev <= 1e-12, "BadInput", "assembled block matrix is not unitary");
  return v;
}

Channel bicrossed_channel(const MatchedPair& mp, const std::vector<int>& orbit,
                          const CMat& phi) {
  const CMat v = rep_unitary(mp, orbit);
  const int n = static_cast<int>(orbit.size());
  require(phi.rows() == n && phi.cols() == n, "NotAState",
          "state must be square with one row per orbit element");
  RepBlock block;
  block.label = "orbit";
  block.unitary = v;
  block.psi = phi;
  return rep_channel({block}, /*psi_symmetric=*/false,
                     /*allow_nonfaithful=*/true);
}

Channel mixed_unitary_reconstruction(const MatchedPair& mp,
                                     const std::vector<int>& orbit) {
  const MagicUnitary mu = magic_unitary(mp, orbit);
  const int n = static_cast<int>(orbit.size());
  const int m = mp.g_size();
  std::vector<CMat> kraus;
  kraus.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    CMat phase = CMat::Zero(m, m);
    for (int b = 0; b < n; ++b) {
      const std::complex<double> root =
          std::exp(std::complex<double>(0.0, 2.0 * M_PI * (b + 1) / n));
      for (int j = 0; j < m; ++j)
        if (mu.entries[a][b][j]) phase(j, j) += root;
    }
    const CMat u = covariant_u(mp, orbit[a]);
    CMat power = CMat::Identity(m, m);
    for (int k = 1; k <= n; ++k) {
      power = CMat(power * phase);
      kraus.push_back(CMat((1.0 / n) * u * power));
    }
  }
  return Channel::from_kraus(m, std::move(kraus));
}

PhaseUnitaryReport pvm_phase_unitary(const std::vector<CMat>& pvm) {
  require(!pvm.empty(), "NotAPVM", "measurement must have at least one block");
  const int d = static_cast<int>(pvm.front().rows());
  const int n = static_cast<int>(pvm.size());
  CMat sum = CMat::Zero(d, d);
  for (const CMat& p : pvm) {
    require(p.rows() == d && p.cols() == d, "NotAPVM",
            "blocks must be square of equal dimension");
    require((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "NotAPVM",
            "blocks must be self-adjoint");
    require((p * p - p).cwiseAbs().maxCoeff() <= 1e-10, "NotAPVM",
            "blocks must be idempotent");
    sum += p;
  }
  require((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10,
          "NotAPVM", "blocks must sum to the identity");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require((pvm[i] * pvm[j]).cwiseAbs().maxCoeff() <= 1e-10, "NotAPVM",
              "blocks must be mutually orthogonal");

  PhaseUnitaryReport report;
  report.unitary = CMat::Zero(d, d);
  for (int k = 0; k < n; ++k)
    report.unitary +=
        std::exp(std::complex<double>(0.0, 2.0 * M_PI * (k + 1) / n)) * pvm[k];

  const Channel pinch = Channel::from_kraus(d, pvm);
  std::vector<CMat> averaged;
  CMat power = CMat::Identity(d, d);
  for (int k = 1; k <= n; ++k) {
    power = CMat(power * report.unitary);
    averaged.push_back(CMat(power / std::sqrt(static_cast<double>(n))));
  }
  const Channel mixed = Channel::from_kraus(d, std::move(averaged));
  report.max_deviation =
      (transfer_matrix(pinch) - transfer_matrix(mixed)).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace qexpand
