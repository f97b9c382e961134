#include "qexpand/groups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "qexpand/rng.hpp"

namespace qexpand {

namespace {

/// (p*q)(x) = p(q(x)): q acts first.
std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out[x] = p[q[x]];
  return out;
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

void FiniteGroup::build_inverses() {
  inv_.assign(order_, -1);
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mult(a, b) == identity) {
        inv_[a] = b;
        break;
      }
  for (int a = 0; a < order_; ++a)
    require(inv_[a] >= 0, "NotASubgroup", "element without inverse; table is not a group");
}

void FiniteGroup::validate_axioms() const {
  for (int a = 0; a < order_; ++a) {
    require(mult(identity, a) == a && mult(a, identity) == a, "NotASubgroup",
            "identity axiom fails; table is not a group");
    require(mult(a, inv_[a]) == identity && mult(inv_[a], a) == identity, "NotASubgroup",
            "inverse axiom fails; table is not a group");
  }
  auto check_triple = [this](int a, int b, int c) {
    require(mult(mult(a, b), c) == mult(a, mult(b, c)), "NotASubgroup",
            "associativity fails; table is not a group");
  };
  if (order_ <= 64) {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c) check_triple(a, b, c);
  } else {
    Rng rng(0x5eedu);
    for (int t = 0; t < 10000; ++t)
      check_triple(static_cast<int>(rng.integer(order_)), static_cast<int>(rng.integer(order_)),
                   static_cast<int>(rng.integer(order_)));
  }
}

FiniteGroup FiniteGroup::from_mult_table(const std::vector<std::vector<int>>& table) {
  FiniteGroup G;
  G.order_ = static_cast<int>(table.size());
  require(G.order_ >= 1, "NotASubgroup", "empty multiplication table");
  require(G.order_ <= max_order, "ClosureTooLarge",
          "group order exceeds the supported maximum " + std::to_string(max_order));
  G.mult_.resize(static_cast<std::size_t>(G.order_) * G.order_);
  for (int a = 0; a < G.order_; ++a) {
    require(static_cast<int>(table[a].size()) == G.order_, "NotASubgroup",
            "multiplication table is not square");
    for (int b = 0; b < G.order_; ++b) {
      const int v = table[a][b];
      require(v >= 0 && v < G.order_, "NotASubgroup", "table entry out of range");
      G.mult_[static_cast<std::size_t>(a) * G.order_ + b] = static_cast<std::uint16_t>(v);
    }
  }
  G.build_inverses();
  G.validate_axioms();
  return G;
}

FiniteGroup FiniteGroup::from_permutation_generators(const std::vector<std::vector<int>>& gens) {
  require(!gens.empty(), "NotGenerating", "no generators given");
  const std::size_t n = gens[0].size();
  for (const auto& g : gens) {
    require(g.size() == n, "NotSymmetric", "generators act on different ground sets");
    require(is_permutation(g), "NotSymmetric", "generator is not a permutation");
  }
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);

  // BFS from the identity, appending x*s for each generator s in order; the
  // discovery order is the element indexing.
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : gens) {
      std::vector<int> next = compose(elems[head], s);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        require(static_cast<int>(elems.size()) <= max_order, "ClosureTooLarge",
                "closure exceeds " + std::to_string(max_order) + " elements");
      }
    }
  }

  FiniteGroup G;
  G.order_ = static_cast<int>(elems.size());
  G.mult_.resize(static_cast<std::size_t>(G.order_) * G.order_);
  for (int a = 0; a < G.order_; ++a)
    for (int b = 0; b < G.order_; ++b)
      G.mult_[static_cast<std::size_t>(a) * G.order_ + b] =
          static_cast<std::uint16_t>(index.at(compose(elems[a], elems[b])));
  G.perms_ = std::move(elems);
  G.build_inverses();
  G.validate_axioms();
  return G;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  int x = g;
  while (x != identity) {
    x = mult(x, g);
    ++k;
  }
  return k;
}

std::optional<int> FiniteGroup::index_of_permutation(const std::vector<int>& p) const {
  for (int i = 0; i < order_; ++i)
    if (perms_[i] == p) return i;
  return std::nullopt;
}

CMat regular_rep_matrix(const FiniteGroup& G, int g) {
  const int n = G.order();
  CMat L = CMat::Zero(n, n);
  for (int j = 0; j < n; ++j) L(G.mult(g, j), j) = 1.0;
  return L;
}

std::vector<cplx> Irrep::character() const {
  std::vector<cplx> chi(matrices.size());
  for (std::size_t g = 0; g < matrices.size(); ++g) chi[g] = matrices[g].trace();
  return chi;
}

bool Irrep::is_trivial(double tol) const {
  if (dimension != 1) return false;
  for (const auto& m : matrices)
    if (std::abs(m(0, 0) - 1.0) > tol) return false;
  return true;
}

namespace {

/// Random Hermitian element of the commutant of the left regular
/// representation: T = sum_g c_g rho(g) with rho the right regular
/// representation (rho(g) delta_h = delta_{hg}) and c_{g^-1} = conj(c_g).
CMat random_commutant_element(const FiniteGroup& G, Rng& rng) {
  const int n = G.order();
  CMat T = CMat::Zero(n, n);
  std::vector<cplx> c(n, cplx(0, 0));
  for (int g = 0; g < n; ++g) {
    const int gi = G.inverse(g);
    if (g < gi) {
      c[g] = rng.gaussian_complex();
      c[gi] = std::conj(c[g]);
    } else if (g == gi) {
      c[g] = rng.gaussian();
    }
  }
  for (int g = 0; g < n; ++g)
    for (int j = 0; j < n; ++j) T(G.mult(j, g), j) += c[g];
  return T;
}

/// Eigenvalue clusters (index ranges) split at relative gap 1e-6.
std::vector<std::pair<int, int>> cluster_eigenvalues(const RVec& lambda) {
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  std::vector<std::pair<int, int>> clusters;
  int start = 0;
  for (int k = 1; k <= lambda.size(); ++k) {
    if (k == lambda.size() || lambda[k] - lambda[k - 1] > 1e-6 * scale) {
      clusters.emplace_back(start, k);
      start = k;
    }
  }
  return clusters;
}

/// Compress the left regular representation to the span of B's columns:
/// pi(g) = B^* lambda(g) B, using (lambda(g) B)[i][:] = B[g^-1 * i][:].
std::vector<CMat> compress_regular(const FiniteGroup& G, const CMat& B) {
  const int n = G.order();
  const int m = static_cast<int>(B.cols());
  std::vector<CMat> pi(n);
  CMat LB(n, m);
  for (int g = 0; g < n; ++g) {
    const int gi = G.inverse(g);
    for (int i = 0; i < n; ++i) LB.row(i) = B.row(G.mult(gi, i));
    pi[g] = B.adjoint() * LB;
  }
  return pi;
}

bool verify_irrep(const FiniteGroup& G, const Irrep& rep, double tol) {
  const int n = G.order();
  const int m = rep.dimension;
  const CMat id = CMat::Identity(m, m);
  if (max_abs(rep.matrices[FiniteGroup::identity] - id) > tol) return false;
  for (int g = 0; g < n; ++g)
    if (max_abs(rep.matrices[g] * rep.matrices[g].adjoint() - id) > tol) return false;
  // Homomorphism: exhaustive on small groups, sampled above.
  auto check_pair = [&](int g, int h) {
    return max_abs(rep.matrices[g] * rep.matrices[h] - rep.matrices[G.mult(g, h)]) <= tol;
  };
  if (n <= 128) {
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        if (!check_pair(g, h)) return false;
  } else {
    Rng rng(0xc0ffee);
    for (int t = 0; t < 10000; ++t)
      if (!check_pair(static_cast<int>(rng.integer(n)), static_cast<int>(rng.integer(n))))
        return false;
  }
  // Irreducibility: the character norm (1/|G|) sum_g |chi(g)|^2 equals 1.
  double norm2 = 0.0;
  for (const auto& chi : rep.character()) norm2 += std::norm(chi);
  return std::abs(norm2 / n - 1.0) <= 1e-6;
}

bool characters_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-6) return false;
  return true;
}

/// Canonical cross-seed order: ascending dimension, then lexicographic
/// character (rounded real part, then rounded imaginary part, per element).
bool irrep_less(const Irrep& x, const Irrep& y) {
  if (x.dimension != y.dimension) return x.dimension < y.dimension;
  const auto cx = x.character();
  const auto cy = y.character();
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const auto rx = std::round(cx[i].real() * 1e6);
    const auto ry = std::round(cy[i].real() * 1e6);
    if (rx != ry) return rx < ry;
    const auto ix = std::round(cx[i].imag() * 1e6);
    const auto iy = std::round(cy[i].imag() * 1e6);
    if (ix != iy) return ix < iy;
  }
  return false;
}

}  // namespace

std::vector<Irrep> irreps(const FiniteGroup& G, std::uint64_t seed, double tol) {
  const int n = G.order();
  require(n <= FiniteGroup::max_order, "ClosureTooLarge", "group too large for irrep extraction");
  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(seed * 1000003u + static_cast<std::uint64_t>(attempt));
    const CMat T = random_commutant_element(G, rng);
    const EigResult eig = hermitian_eig(T, 1e-9);

    std::vector<Irrep> found;
    bool ok = true;
    for (const auto& [lo, hi] : cluster_eigenvalues(eig.eigenvalues)) {
      const CMat B = column_space_basis(eig.eigenvectors.middleCols(lo, hi - lo));
      if (B.cols() != hi - lo) {
        ok = false;
        break;
      }
      Irrep rep;
      rep.dimension = hi - lo;
      rep.matrices = compress_regular(G, B);
      if (!verify_irrep(G, rep, tol)) {
        ok = false;
        break;
      }
      bool duplicate = false;
      const auto chi = rep.character();
      for (const auto& prev : found)
        if (prev.dimension == rep.dimension && characters_equal(prev.character(), chi)) {
          duplicate = true;
          break;
        }
      if (!duplicate) found.push_back(std::move(rep));
    }
    if (!ok) continue;

    int dim2 = 0;
    for (const auto& rep : found) dim2 += rep.dimension * rep.dimension;
    if (dim2 != n) continue;  // a cluster merged two copies; reseed

    std::sort(found.begin(), found.end(), irrep_less);
    return found;
  }
  fail("SplitFailed", "irrep extraction failed after 8 reseeded attempts");
}

double kazhdan_lower_bound(const FiniteGroup& G, const std::vector<int>& S,
                           const std::vector<Irrep>& reps) {
  require(!S.empty(), "NotGenerating", "empty generating set");
  for (int s : S)
    require(std::find(S.begin(), S.end(), G.inverse(s)) != S.end(), "NotSymmetric",
            "generating set is not closed under inverses");
  double eps = std::numeric_limits<double>::infinity();
  bool saw_nontrivial = false;
  for (const auto& rep : reps) {
    if (rep.is_trivial()) continue;
    saw_nontrivial = true;
    CMat M = CMat::Zero(rep.dimension, rep.dimension);
    for (int s : S) M += rep.matrices[s];
    M /= static_cast<double>(S.size());
    const CMat H = 0.5 * (M + M.adjoint());
    const EigResult eig = hermitian_eig(H, 1e-8);
    const double lmax = eig.eigenvalues[eig.eigenvalues.size() - 1];
    require(lmax < 1.0 - 1e-9, "NotGenerating",
            "a nontrivial irrep has an S-invariant vector; S does not generate");
    eps = std::min(eps, std::sqrt(std::max(0.0, 2.0 * (1.0 - lmax))));
  }
  require(saw_nontrivial, "NotGenerating", "no nontrivial irreps supplied");
  return eps;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H) {
  if (H.empty()) return false;
  std::set<int> set(H.begin(), H.end());
  if (!set.count(FiniteGroup::identity)) return false;
  for (int a : set) {
    if (!set.count(G.inverse(a))) return false;
    for (int b : set)
      if (!set.count(G.mult(a, b))) return false;
  }
  return true;
}

std::vector<std::vector<int>> cosets(const FiniteGroup& G, const std::vector<int>& H) {
  require(is_subgroup(G, H), "NotASubgroup", "H is not closed under product and inverse");
  const int n = G.order();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> parts;
  for (int g = 0; g < n; ++g) {
    if (seen[g]) continue;
    std::vector<int> coset;
    for (int h : H) coset.push_back(G.mult(g, h));
    std::sort(coset.begin(), coset.end());
    for (int x : coset) seen[x] = 1;
    parts.push_back(std::move(coset));
  }
  return parts;
}

std::vector<int> subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens) {
  std::set<int> elems{FiniteGroup::identity};
  std::vector<int> queue{FiniteGroup::identity};
  for (int g : gens)
    if (elems.insert(g).second) queue.push_back(g);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int g : gens) {
      const int next = G.mult(queue[head], g);
      if (elems.insert(next).second) queue.push_back(next);
    }
  return {elems.begin(), elems.end()};
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& G) {
  std::set<std::vector<int>> known{{FiniteGroup::identity}};
  std::vector<std::vector<int>> queue{{FiniteGroup::identity}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::vector<int> H = queue[head];
    for (int x = 0; x < G.order(); ++x) {
      if (std::binary_search(H.begin(), H.end(), x)) continue;
      std::vector<int> gens = H;
      gens.push_back(x);
      std::vector<int> bigger = subgroup_closure(G, gens);
      if (known.insert(bigger).second) queue.push_back(std::move(bigger));
    }
  }
  std::vector<std::vector<int>> out(known.begin(), known.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<int> named_element_set(const FiniteGroup& G, const std::string& name) {
  require(G.has_permutations(), "UnknownSet",
          "named sets require a group built from permutation generators");
  std::vector<int> out;
  if (name == "transpositions") {
    for (int i = 0; i < G.order(); ++i) {
      const auto& p = G.permutation(i);
      int moved = 0;
      for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x] != static_cast<int>(x)) ++moved;
      if (moved == 2) out.push_back(i);
    }
  } else if (name == "involutions") {
    for (int i = 1; i < G.order(); ++i)
      if (G.mult(i, i) == FiniteGroup::identity) out.push_back(i);
  } else {
    fail("UnknownSet", "unknown named element set: " + name);
  }
  require(!out.empty(), "NotGenerating", "named set '" + name + "' matched no elements");
  return out;
}

}  // namespace qexpand
