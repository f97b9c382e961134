#include "qexpand/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qexpand/rng.hpp"

namespace qexpand {

Channel Channel::from_kraus(int dim, std::vector<CMat> kraus) {
  require(dim >= 1, "BadInput", "channel dimension must be positive");
  require(!kraus.empty(), "BadInput", "channel needs at least one Kraus operator");
  for (const auto& K : kraus)
    require(K.rows() == dim && K.cols() == dim, "BadInput",
            "Kraus operator does not match the channel dimension");
  Channel phi;
  phi.dim = dim;
  phi.kraus = std::move(kraus);
  return phi;
}

CMat Channel::apply(const CMat& rho) const {
  CMat out = CMat::Zero(dim, dim);
  for (const auto& K : kraus) out += K * rho * K.adjoint();
  return out;
}

CMat transfer_matrix(const Channel& phi) {
  const int n2 = phi.dim * phi.dim;
  CMat T = CMat::Zero(n2, n2);
  for (const auto& K : phi.kraus) T += kron(K, K.conjugate());
  return T;
}

CMat choi_matrix(const Channel& phi) {
  // J = sum_ij e_ij (x) Phi(e_ij) = sum_m w_m w_m^dag, w_m = sum_i e_i (x) K_m e_i.
  const int n = phi.dim;
  CMat J = CMat::Zero(n * n, n * n);
  for (const auto& K : phi.kraus) {
    CVec w(n * n);
    for (int i = 0; i < n; ++i) w.segment(static_cast<Eigen::Index>(i) * n, n) = K.col(i);
    J += w * w.adjoint();
  }
  return J;
}

int degree(const Channel& phi) { return rank_eps(choi_matrix(phi), 1e-8); }

Channel minimal_kraus(const Channel& phi) {
  const int n = phi.dim;
  const EigResult eig = hermitian_eig(choi_matrix(phi), 1e-8);
  std::vector<CMat> kraus;
  for (Eigen::Index m = eig.eigenvalues.size() - 1; m >= 0; --m) {
    if (eig.eigenvalues[m] <= 1e-10) break;  // ascending order: done
    const CVec w = std::sqrt(eig.eigenvalues[m]) * eig.eigenvectors.col(m);
    CMat K(n, n);
    for (int i = 0; i < n; ++i) K.col(i) = w.segment(static_cast<Eigen::Index>(i) * n, n);
    kraus.push_back(std::move(K));
  }
  require(!kraus.empty(), "NotPSD", "Choi matrix has no positive eigenvalue");
  return Channel::from_kraus(n, std::move(kraus));
}

namespace {

bool is_hermitian_rel(const CMat& M, double tol) {
  return hermitian_deviation(M) <= tol * std::max(1.0, max_abs(M));
}

/// Columns of `vectors` with Gram eigenvalue below the kernel threshold.
CMat kernel_basis(const CMat& gram) {
  const EigResult eig = hermitian_eig(gram, 1e-9);
  const double tol = 1e-12 * std::max(1.0, max_abs(gram));
  Eigen::Index k = 0;
  while (k < eig.eigenvalues.size() && eig.eigenvalues[k] < tol) ++k;
  return eig.eigenvectors.leftCols(k);
}

}  // namespace

CMat fixed_point_space(const Channel& phi) {
  const CMat T = transfer_matrix(phi);
  const Eigen::Index n2 = T.rows();
  if (is_hermitian_rel(T, 1e-9)) {
    const EigResult eig = hermitian_eig(T, 1e-9);
    Eigen::Index k = 0;
    while (k < n2 && eig.eigenvalues[n2 - 1 - k] > 1.0 - 1e-7) ++k;
    return eig.eigenvectors.rightCols(k);
  }
  const CMat D = T - CMat::Identity(n2, n2);
  return kernel_basis(D.adjoint() * D);
}

CMat kraus_commutant(const Channel& phi) {
  const int n = phi.dim;
  const CMat id = CMat::Identity(n, n);
  CMat gram = CMat::Zero(n * n, n * n);
  for (const auto& K : phi.kraus) {
    const CMat L = kron(K, id) - kron(id, K.transpose());  // vec(KX - XK)
    gram += L.adjoint() * L;
  }
  return kernel_basis(gram);
}

ChannelChecks validate_channel(const Channel& phi) {
  const int n = phi.dim;
  const CMat id = CMat::Identity(n, n);
  ChannelChecks out;

  const EigResult choi_eig = hermitian_eig(choi_matrix(phi), 1e-9);
  out.completely_positive = choi_eig.eigenvalues[0] >= -1e-9;

  CMat tp = CMat::Zero(n, n), un = CMat::Zero(n, n);
  for (const auto& K : phi.kraus) {
    tp += K.adjoint() * K;
    un += K * K.adjoint();
  }
  out.trace_preserving = max_abs(tp - id) <= 1e-9;
  out.unital = max_abs(un - id) <= 1e-9;

  out.undirected = is_hermitian_rel(transfer_matrix(phi), 1e-9);
  out.connected = fixed_point_space(phi).cols() == 1;
  return out;
}

TransferSpectrum transfer_spectrum(const Channel& phi) {
  const CMat T = transfer_matrix(phi);
  require(is_hermitian_rel(T, 1e-9), "NotUndirected",
          "transfer matrix is not Hermitian; the channel is directed");
  const EigResult eig = hermitian_eig(T, 1e-9);
  TransferSpectrum out;
  out.eigenvalues = eig.eigenvalues.reverse();
  while (out.fixed_dim < out.eigenvalues.size() &&
         out.eigenvalues[out.fixed_dim] > 1.0 - 1e-7)
    ++out.fixed_dim;
  if (out.fixed_dim < out.eigenvalues.size())
    out.second_below_fixed = out.eigenvalues[out.fixed_dim];
  return out;
}

double lambda2(const Channel& phi) {
  const TransferSpectrum ts = transfer_spectrum(phi);
  require(ts.eigenvalues.size() > 1, "NotConnected",
          "scalar transfer matrix has no second eigenvalue");
  require(ts.fixed_dim == 1, "NotConnected",
          "fixed-point space is not one dimensional; the channel is disconnected");
  return ts.eigenvalues[1];
}

// ---------------------------------------------------------------------------
// Expansion estimation.
// ---------------------------------------------------------------------------
namespace {

struct RatioSearch {
  const Channel& phi;
  double best = std::numeric_limits<double>::infinity();
  CMat best_projector;
  int trials = 0;

  /// Expansion ratio Tr[(1-P) Phi(P)] / min(tr P, n - tr P) of a projector.
  double ratio(const CMat& P) {
    ++trials;
    const double t = P.trace().real();
    const double denom = std::min(t, phi.dim - t);
    if (denom < 0.5) return std::numeric_limits<double>::infinity();
    const CMat phiP = phi.apply(P);
    const double cut = std::max(0.0, (phiP.trace() - (P * phiP).trace()).real());
    return cut / denom;
  }

  void consider(const CMat& P) {
    const double r = ratio(P);
    if (r < best) {
      best = r;
      best_projector = P;
    }
  }
};

/// Hermitian operators spanning the top two eigenvalue clusters of the
/// transfer matrix.  Each eigenspace of the (Hermitian) transfer matrix is
/// closed under the adjoint, so splitting eigenvectors into Hermitian and
/// anti-Hermitian parts and orthonormalizing over the reals spans it.
std::vector<CMat> cluster_hermitian_operators(const Channel& phi, const TransferSpectrum& ts) {
  const int n = phi.dim;
  const CMat T = transfer_matrix(phi);
  const EigResult eig = hermitian_eig(T, 1e-9);  // ascending
  const Eigen::Index n2 = eig.eigenvalues.size();

  std::vector<Eigen::Index> picked;  // positions in the ascending order
  for (Eigen::Index k = 0; k < ts.fixed_dim; ++k) picked.push_back(n2 - 1 - k);
  if (ts.second_below_fixed) {
    const double second = *ts.second_below_fixed;
    for (Eigen::Index k = ts.fixed_dim; k < n2; ++k) {
      if (ts.eigenvalues[k] > second - 1e-7)
        picked.push_back(n2 - 1 - k);
      else
        break;
    }
  }

  std::vector<CMat> ops;
  auto add = [&](CMat H) {
    // Real Gram-Schmidt against the operators kept so far (HS inner product
    // of Hermitian operators is real).
    for (const CMat& B : ops) H -= (B.adjoint() * H).trace().real() * B;
    const double norm = std::sqrt(std::max(0.0, (H.adjoint() * H).trace().real()));
    if (norm > 1e-8) ops.push_back(H / norm);
  };
  for (const Eigen::Index pos : picked) {
    const CMat X = unvec(eig.eigenvectors.col(pos), n, n);
    add(0.5 * (X + X.adjoint()));
    add(cplx(0.0, 0.5) * (X - X.adjoint()));
  }
  return ops;
}

}  // namespace

ExpansionEstimate estimate_hq(const Channel& phi, int budget, std::uint64_t seed) {
  const TransferSpectrum ts = transfer_spectrum(phi);  // throws NotUndirected
  const int n = phi.dim;
  ExpansionEstimate out;
  if (n == 1) return out;  // no proper projector exists
  out.lower_certificate =
      std::max(0.0, 0.5 * (1.0 - ts.eigenvalues[1]));  // 0 when disconnected

  RatioSearch search{phi};
  const CMat id = CMat::Identity(n, n);

  // (a) Eigenbasis subsets of each Hermitian eigen-operator of the top two
  // transfer clusters.  The sweep over threshold cuts of the second cluster
  // is the constructive half of the Cheeger upper bound; the fixed-cluster
  // operators locate exact zero-ratio witnesses of disconnected channels.
  for (const CMat& H : cluster_hermitian_operators(phi, ts)) {
    const EigResult he = hermitian_eig(H, 1e-8);
    if (n <= 12) {
      for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        CMat V(n, __builtin_popcount(mask));
        int c = 0;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) V.col(c++) = he.eigenvectors.col(i);
        search.consider(V * V.adjoint());
      }
    } else {
      for (int k = 1; k < n; ++k) {
        const CMat V = he.eigenvectors.rightCols(k);  // top-k eigenvectors
        search.consider(V * V.adjoint());
      }
    }
  }

  // (b) Diagonal subsets (classical cuts in the standard basis).
  if (n <= 12) {
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      CMat P = CMat::Zero(n, n);
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) P(i, i) = 1.0;
      search.consider(P);
    }
  }

  // (c) Seeded random projectors with Givens-rotation hill climbing.
  for (int t = 0; t < budget; ++t) {
    Rng rng(seed * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL * (t + 1));
    const int r = 1 + t % (n - 1);
    CMat A(n, r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) A(i, j) = rng.gaussian_complex();
    CMat Q = Eigen::HouseholderQR<CMat>(A).householderQ() * CMat::Identity(n, r);
    double cur = search.ratio(Q * Q.adjoint());
    CMat cur_P = Q * Q.adjoint();
    for (int step = 0; step < 50; ++step) {
      const int i = static_cast<int>(rng.integer(n));
      int j = static_cast<int>(rng.integer(n - 1));
      if (j >= i) ++j;
      const double theta = (rng.uniform() - 0.5) * M_PI * std::pow(0.5, step / 10.0);
      const double phase = 2.0 * M_PI * rng.uniform();
      CMat G = CMat::Identity(n, n);
      G(i, i) = std::cos(theta);
      G(j, j) = std::cos(theta);
      G(i, j) = -std::sin(theta) * std::exp(cplx(0.0, -phase));
      G(j, i) = std::sin(theta) * std::exp(cplx(0.0, phase));
      const CMat Q2 = G * Q;
      const CMat P2 = Q2 * Q2.adjoint();
      const double r2 = search.ratio(P2);
      if (r2 < cur) {
        cur = r2;
        Q = Q2;
        cur_P = P2;
      }
    }
    if (cur < search.best) {
      search.best = cur;
      search.best_projector = cur_P;
    }
  }

  out.upper_estimate = search.best;
  out.witness_projector = search.best_projector;
  out.trials_used = search.trials;
  return out;
}

// ---------------------------------------------------------------------------
// Constructions.
// ---------------------------------------------------------------------------

Channel lift_graph(const Graph& g, const CycleCoverDecomposition& dec) {
  const auto deg = g.regular_degree();
  require(deg.has_value() && *deg >= 1, "NotRegular",
          "graph lift needs a regular graph of degree at least 1");
  const int d = *deg;
  require(static_cast<int>(dec.perms.size()) == d, "DecompositionFailed",
          "decomposition size does not match the graph degree");
  RMat total = RMat::Zero(g.n, g.n);
  std::vector<CMat> kraus;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (const auto& perm : dec.perms) {
    const RMat P = permutation_matrix(perm);
    total += P;
    kraus.push_back(scale * P.cast<cplx>());
  }
  require(max_abs(total - g.adjacency()) == 0.0, "DecompositionFailed",
          "decomposition does not sum to the adjacency matrix");
  return Channel::from_kraus(g.n, std::move(kraus));
}

Channel lift_graph(const Graph& g, std::uint64_t seed) {
  return lift_graph(g, cycle_cover_decomposition(g, seed));
}

Channel group_average_channel(const FiniteGroup& G, const Irrep& pi, const std::vector<int>& S,
                              const std::vector<double>& weights) {
  require(!pi.is_trivial(), "TrivialRep",
          "the averaging channel over the trivial representation is the scalar identity");
  require(!S.empty(), "NotSymmetric", "empty generating set");
  for (int s : S) {
    require(s >= 0 && s < G.order(), "BadInput", "generator index out of range");
    require(std::find(S.begin(), S.end(), G.inverse(s)) != S.end(), "NotSymmetric",
            "generating set is not closed under inverses");
  }
  std::vector<double> w = weights;
  if (w.empty()) w.assign(S.size(), 1.0 / static_cast<double>(S.size()));
  require(w.size() == S.size(), "NotAState", "one weight per generator is required");
  double sum = 0.0;
  for (double x : w) {
    require(x > 0.0, "NotAState", "weights must be positive");
    sum += x;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "NotAState", "weights must sum to 1");

  std::vector<CMat> kraus;
  for (std::size_t i = 0; i < S.size(); ++i)
    kraus.push_back(std::sqrt(w[i]) * pi.matrices[S[i]]);
  Channel phi = Channel::from_kraus(pi.dimension, std::move(kraus));

  // Built-in spectral comparison for the uniform construction: the channel
  // gap is at least as large as the Cayley graph gap scaled by 1/|S|.
  if (weights.empty() && pi.dimension > 1) {
    const SpectralData sd = spectral_data(cayley_graph(G, S));
    if (sd.connected) {
      require(lambda2(phi) <= sd.lambda2 / static_cast<double>(S.size()) + 1e-9,
              "CertificateViolated",
              "channel second eigenvalue exceeds the scaled Cayley bound");
    }
  }
  return phi;
}

Channel rep_channel(const std::vector<RepBlock>& blocks, bool psi_symmetric,
                    bool allow_nonfaithful) {
  require(!blocks.empty(), "BadInput", "at least one block is required");
  int kdim = -1;
  double total_trace = 0.0;
  for (const auto& b : blocks) {
    const Eigen::Index ns = b.psi.rows();
    require(ns >= 1 && b.psi.cols() == ns, "NotAState", "state block must be square");
    require(hermitian_deviation(b.psi) <= 1e-9 * std::max(1.0, max_abs(b.psi)), "NotAState",
            "state block must be Hermitian");
    require(b.unitary.rows() == b.unitary.cols() && b.unitary.rows() % ns == 0,
            "NotUnitaryBlock", "block unitary size incompatible with the state block");
    const int k = static_cast<int>(b.unitary.rows() / ns);
    require(kdim < 0 || k == kdim, "NotUnitaryBlock",
            "all blocks must act on the same channel space");
    kdim = k;
    require(max_abs(b.unitary.adjoint() * b.unitary -
                    CMat::Identity(b.unitary.rows(), b.unitary.rows())) <= 1e-10,
            "NotUnitaryBlock", "block '" + b.label + "' is not unitary");
    total_trace += b.psi.trace().real();
  }
  require(std::abs(total_trace - 1.0) <= 1e-9, "NotAState",
          "state blocks must have unit total trace");

  std::vector<CMat> kraus;
  for (const auto& b : blocks) {
    const int ns = static_cast<int>(b.psi.rows());
    const EigResult psi_eig = hermitian_eig(b.psi, 1e-9);
    require(psi_eig.eigenvalues[0] >= -1e-12, "NotAState",
            "state block '" + b.label + "' is not positive semidefinite");
    // Rotate the unitary into the eigenbasis of the state block.
    const CMat W = kron(psi_eig.eigenvectors, CMat::Identity(kdim, kdim));
    const CMat U = W.adjoint() * b.unitary * W;
    for (int a = 0; a < ns; ++a) {
      const double lambda = psi_eig.eigenvalues[a];
      if (lambda <= 1e-12) {
        require(allow_nonfaithful, "NotFaithfulState",
                "state block '" + b.label + "' has a (near-)zero eigenvalue");
        continue;
      }
      const double root = std::sqrt(lambda);
      for (int c = 0; c < ns; ++c)
        kraus.push_back(root * U.block(static_cast<Eigen::Index>(a) * kdim,
                                       static_cast<Eigen::Index>(c) * kdim, kdim, kdim));
    }
  }
  Channel phi = Channel::from_kraus(kdim, std::move(kraus));

  // Unitality is automatic (row sums of a unitary's blocks); trace
  // preservation encodes bi-unitarity of the block family.
  CMat tp = CMat::Zero(kdim, kdim);
  for (const auto& K : phi.kraus) tp += K.adjoint() * K;
  require(max_abs(tp - CMat::Identity(kdim, kdim)) <= 1e-8, "NotUnitaryBlock",
          "block family is not bi-unitary: the channel would not be trace preserving");

  if (psi_symmetric)
    require(is_hermitian_rel(transfer_matrix(phi), 1e-9), "NotUndirected",
            "state was declared symmetric but the transfer matrix is not Hermitian");
  return phi;
}

GapCertificateReport check_gap_certificate(const Channel& phi, double eps, int dim_he,
                                           std::optional<double> lambda_min) {
  require(dim_he >= 1, "BadInput", "environment dimension must be positive");
  require(eps >= 0.0, "BadInput", "certificate constant must be nonnegative");
  GapCertificateReport rep;
  rep.lambda2 = lambda2(phi);  // throws NotUndirected / NotConnected
  rep.hq_lower = 0.5 * (1.0 - rep.lambda2);
  const double uniform = 1.0 / static_cast<double>(dim_he);
  const double lmin = lambda_min.value_or(uniform);
  require(lmin > 0.0 && lmin <= uniform + 1e-12, "NotAState",
          "smallest state eigenvalue must lie in (0, 1/dim_he]");
  rep.tracial = std::abs(lmin - uniform) <= 1e-12;
  rep.lambda2_bound = 1.0 - 0.5 * lmin * eps * eps;
  rep.hq_bound = 0.25 * lmin * eps * eps;
  require(rep.lambda2 <= rep.lambda2_bound + 1e-9, "CertificateViolated",
          "second transfer eigenvalue exceeds the certified bound");
  require(rep.hq_lower >= rep.hq_bound - 1e-9, "CertificateViolated",
          "spectral expansion lower bound falls below the certified bound");
  return rep;
}

}  // namespace qexpand
