#include "qexpand/dualcayley.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qexpand/error.hpp"

namespace qexpand {

namespace {

void check_element_size(const DualGroupAlgebra& alg, const CVec& a) {
  require(a.size() == alg.group.order(), "BadInput",
          "lambda-coefficient vector does not match the group order");
}

void check_irrep_set(const DualGroupAlgebra& alg, const std::vector<int>& E) {
  for (int x : E)
    require(x >= 0 && x < static_cast<int>(alg.irreps.size()), "UnknownSet",
            "irrep index out of range");
}

}  // namespace

DualGroupAlgebra dual_group_algebra(const FiniteGroup& G, std::uint64_t seed) {
  return DualGroupAlgebra{G, irreps(G, seed)};
}

cplx dual_haar(const DualGroupAlgebra& alg, const CVec& a) {
  check_element_size(alg, a);
  return static_cast<double>(alg.group.order()) * a[FiniteGroup::identity];
}

CVec dual_antipode(const DualGroupAlgebra& alg, const CVec& a) {
  check_element_size(alg, a);
  CVec out(a.size());
  for (int g = 0; g < alg.group.order(); ++g) out[alg.group.inverse(g)] = a[g];
  return out;
}

cplx dual_counit(const DualGroupAlgebra& alg, const CVec& a) {
  check_element_size(alg, a);
  return a.sum();
}

CVec group_algebra_product(const DualGroupAlgebra& alg, const CVec& a, const CVec& b) {
  check_element_size(alg, a);
  check_element_size(alg, b);
  const int n = alg.group.order();
  CVec out = CVec::Zero(n);
  for (int g = 0; g < n; ++g) {
    if (a[g] == cplx(0.0, 0.0)) continue;
    for (int h = 0; h < n; ++h) out[alg.group.mult(g, h)] += a[g] * b[h];
  }
  return out;
}

std::vector<CMat> fourier_blocks(const DualGroupAlgebra& alg, const CVec& a) {
  check_element_size(alg, a);
  std::vector<CMat> blocks;
  blocks.reserve(alg.irreps.size());
  for (const Irrep& rep : alg.irreps) {
    CMat block = CMat::Zero(rep.dimension, rep.dimension);
    for (int g = 0; g < alg.group.order(); ++g) block += a[g] * rep.matrices[g];
    blocks.push_back(std::move(block));
  }
  return blocks;
}

CVec inverse_fourier(const DualGroupAlgebra& alg, const std::vector<CMat>& blocks) {
  require(blocks.size() == alg.irreps.size(), "BadInput",
          "block count does not match the irrep list");
  const int n = alg.group.order();
  CVec out = CVec::Zero(n);
  for (int g = 0; g < n; ++g) {
    cplx c = 0.0;
    for (size_t x = 0; x < blocks.size(); ++x) {
      const Irrep& rep = alg.irreps[x];
      c += static_cast<double>(rep.dimension) *
           (rep.matrices[static_cast<size_t>(g)].adjoint() * blocks[x]).trace();
    }
    out[g] = c / static_cast<double>(n);
  }
  return out;
}

CMat fourier_unitary(const DualGroupAlgebra& alg) {
  const int n = alg.group.order();
  CMat f = CMat::Zero(n, n);
  int row = 0;
  for (const Irrep& rep : alg.irreps) {
    const double scale = std::sqrt(static_cast<double>(rep.dimension) / n);
    for (int i = 0; i < rep.dimension; ++i)
      for (int j = 0; j < rep.dimension; ++j) {
        for (int g = 0; g < n; ++g) f(row, g) = scale * rep.matrices[static_cast<size_t>(g)](i, j);
        ++row;
      }
  }
  return f;
}

CVec central_projection(const DualGroupAlgebra& alg, const std::vector<int>& E) {
  check_irrep_set(alg, E);
  const int n = alg.group.order();
  CVec out = CVec::Zero(n);
  for (int x : E) {
    const std::vector<cplx> chi = alg.irreps[static_cast<size_t>(x)].character();
    const double scale = static_cast<double>(alg.irreps[static_cast<size_t>(x)].dimension) / n;
    for (int g = 0; g < n; ++g) out[g] += scale * std::conj(chi[static_cast<size_t>(g)]);
  }
  return out;
}

CVec convolve(const DualGroupAlgebra& alg, const CVec& a, const CVec& b) {
  check_element_size(alg, a);
  check_element_size(alg, b);
  return static_cast<double>(alg.group.order()) * a.cwiseProduct(b);
}

CVec convolve_by_comultiplication(const DualGroupAlgebra& alg, const CVec& a, const CVec& b) {
  check_element_size(alg, a);
  check_element_size(alg, b);
  const int n = alg.group.order();
  // Coproduct of b: sum_h b_h lambda_h (x) lambda_h.  Pair the first leg with
  // omega_a o S, where omega_a = h(. a); the second leg carries the result.
  CVec out = CVec::Zero(n);
  for (int h = 0; h < n; ++h) {
    if (b[h] == cplx(0.0, 0.0)) continue;
    CVec first_leg = CVec::Zero(n);
    first_leg[alg.group.inverse(h)] = 1.0;  // S(lambda_h)
    const cplx pairing = dual_haar(alg, group_algebra_product(alg, first_leg, a));
    out[h] += pairing * b[h];
  }
  return out;
}

RVec dual_weights(const DualGroupAlgebra& alg, const std::vector<int>& E) {
  check_irrep_set(alg, E);
  const int n = alg.group.order();
  CVec w = CVec::Zero(n);
  for (int x : E) {
    const Irrep& rep = alg.irreps[static_cast<size_t>(x)];
    const std::vector<cplx> chi = rep.character();
    for (int g = 0; g < n; ++g)
      w[g] += static_cast<double>(rep.dimension) * std::conj(chi[static_cast<size_t>(g)]);
  }
  require(w.imag().cwiseAbs().maxCoeff() <= 1e-8, "NotSymmetric",
          "irrep set is not closed under conjugate representations");
  return w.real();
}

DualCayley quantum_cayley(const DualGroupAlgebra& alg, const std::vector<int>& E) {
  check_irrep_set(alg, E);
  for (int x : E)
    require(!alg.irreps[static_cast<size_t>(x)].is_trivial(), "ContainsTrivial",
            "irrep set contains the trivial representation");
  RVec weights = dual_weights(alg, E);
  const double degree = weights[FiniteGroup::identity];
  bool generating = true;
  for (int g = 1; g < alg.group.order(); ++g)
    if (weights[g] >= degree - 1e-9) generating = false;

  std::vector<int> block_dims;
  block_dims.reserve(alg.irreps.size());
  for (const Irrep& rep : alg.irreps) block_dims.push_back(rep.dimension);
  const CMat f = fourier_unitary(alg);
  const CMat a = f * weights.cast<cplx>().asDiagonal() * f.adjoint();
  return DualCayley{alg,       E, weights, degree, generating,
                    QuantumGraph{MultiMatrixAlgebra(block_dims), a}};
}

Coideal coideal_from_subgroup(const DualGroupAlgebra& alg, const std::vector<int>& H) {
  require(is_subgroup(alg.group, H), "NotASubgroup",
          "coideal seed is not a subgroup");
  Coideal c{H};
  std::sort(c.basis.begin(), c.basis.end());
  return c;
}

QuantumGraph schreier_restrict(const DualCayley& qc, const Coideal& coideal, std::uint64_t seed) {
  const FiniteGroup& big = qc.alg.group;
  const std::vector<int>& basis = coideal.basis;
  const int m = static_cast<int>(basis.size());
  require(m >= 1 && basis[0] == FiniteGroup::identity, "NotASubgroup",
          "coideal basis must contain the identity");

  // Invariance of span{lambda_h}: transport A back to the lambda-basis
  // (where it should be diag(n_E)) and measure leakage out of the basis.
  const CMat f = fourier_unitary(qc.alg);
  const CMat a_lambda = f.adjoint() * qc.graph.A * f;
  std::vector<char> inside(static_cast<size_t>(big.order()), 0);
  for (int h : basis) inside[static_cast<size_t>(h)] = 1;
  double leak = 0.0;
  for (int h : basis)
    for (int g = 0; g < big.order(); ++g)
      if (!inside[static_cast<size_t>(g)]) leak = std::max(leak, std::abs(a_lambda(g, h)));
  require(leak <= 1e-10, "NotInvariant",
          "adjacency operator leaks outside the coideal");

  // The restriction is diagonal with eigenvalues n_E(h); express it on the
  // block algebra of H via the Fourier unitary of H.
  std::vector<std::vector<int>> table(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int product = big.mult(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
      const auto it = std::lower_bound(basis.begin(), basis.end(), product);
      require(it != basis.end() && *it == product, "NotASubgroup",
              "coideal basis is not closed under multiplication");
      table[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          static_cast<int>(it - basis.begin());
    }
  const DualGroupAlgebra sub = dual_group_algebra(FiniteGroup::from_mult_table(table), seed);

  RVec restricted_weights(m);
  for (int i = 0; i < m; ++i) restricted_weights[i] = qc.weights[basis[static_cast<size_t>(i)]];
  std::vector<int> block_dims;
  block_dims.reserve(sub.irreps.size());
  for (const Irrep& rep : sub.irreps) block_dims.push_back(rep.dimension);
  const CMat fh = fourier_unitary(sub);
  const CMat restricted = fh * restricted_weights.cast<cplx>().asDiagonal() * fh.adjoint();
  return QuantumGraph{MultiMatrixAlgebra(block_dims), restricted};
}

RMat classical_cayley_operator(const FiniteGroup& gamma, const std::vector<int>& E,
                               const std::vector<int>& H) {
  require(!E.empty(), "NotGenerating", "element set is empty");
  for (int s : E) {
    require(s != FiniteGroup::identity, "ContainsIdentity",
            "element set contains the identity");
    require(std::find(E.begin(), E.end(), gamma.inverse(s)) != E.end(), "NotSymmetric",
            "element set is not closed under inverses");
  }
  const std::vector<std::vector<int>> parts = cosets(gamma, H);
  const int k = static_cast<int>(parts.size());
  std::vector<int> coset_of(static_cast<size_t>(gamma.order()), -1);
  for (int i = 0; i < k; ++i)
    for (int g : parts[static_cast<size_t>(i)]) coset_of[static_cast<size_t>(g)] = i;
  RMat op = RMat::Zero(k, k);
  // A f(gH) = sum_{s in E} f(s g H): row gH, column s g H.
  for (int i = 0; i < k; ++i) {
    const int rep = parts[static_cast<size_t>(i)].front();
    for (int s : E) op(i, coset_of[static_cast<size_t>(gamma.mult(s, rep))]) += 1.0;
  }
  return op;
}

double dual_kazhdan_lower_bound(const DualCayley& qc) {
  require(qc.generating, "NotGenerating",
          "dual generating set has a nontrivial fixed direction");
  double worst = -qc.degree;
  for (int g = 1; g < qc.alg.group.order(); ++g) worst = std::max(worst, qc.weights[g]);
  if (qc.alg.group.order() == 1) worst = qc.degree;  // no nontrivial direction
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - worst / qc.degree)));
}

SchreierCertificateReport schreier_gap_certificate(const QuantumGraph& restricted, double eps,
                                                   const std::vector<int>& e_dims) {
  require(!e_dims.empty(), "BadInput", "generating block dimension list is empty");
  SchreierCertificateReport report;
  const QuantumGraphGap spectrum = gap(restricted);
  report.spectrum = spectrum.eigenvalues;
  report.lambda2 = spectrum.lambda2;
  report.degree = *is_regular(restricted, 1e-8);
  int min_dim = e_dims.front();
  for (int d : e_dims) {
    require(d >= 1, "BadInput", "generating block dimensions must be positive");
    min_dim = std::min(min_dim, d);
  }
  report.lambda_min_ratio = static_cast<double>(min_dim) / report.degree;
  report.bound = 1.0 - report.lambda_min_ratio * eps * eps / 2.0;
  report.vacuous = !spectrum.lambda2.has_value();
  if (!report.vacuous)
    require(*spectrum.lambda2 <= report.bound + 1e-9, "CertificateViolated",
            "restricted second eigenvalue exceeds the property (T) bound");
  return report;
}

}  // namespace qexpand
