#include "qexpand/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "qexpand/rng.hpp"

namespace qexpand {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  require(n >= 0, "BadInput", "negative vertex count");
  for (auto& [u, v] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n, "BadInput", "edge endpoint out of range");
    require(u != v, "BadInput", "loops are not allowed in a simple graph");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(), "BadInput",
          "duplicate edge in a simple graph");
  return Graph{n, std::move(edges)};
}

RMat Graph::adjacency() const {
  RMat A = RMat::Zero(n, n);
  for (const auto& [u, v] : edges) {
    A(u, v) = 1.0;
    A(v, u) = 1.0;
  }
  return A;
}

std::vector<std::vector<int>> Graph::adjacency_list() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::optional<int> Graph::regular_degree() const {
  if (n == 0) return std::nullopt;
  std::vector<int> deg(n, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  for (int v = 1; v < n; ++v)
    if (deg[v] != deg[0]) return std::nullopt;
  return deg[0];
}

bool Graph::is_connected() const {
  if (n <= 1) return true;
  const auto adj = adjacency_list();
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
  }
  return count == n;
}

Graph cycle_graph(int n) {
  require(n >= 3, "BadInput", "cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, std::move(edges));
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph::from_edges(10, std::move(edges));
}

Graph hypercube_graph(int k) {
  require(k >= 1 && k <= 20, "BadInput", "hypercube dimension out of range");
  const int n = 1 << k;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < k; ++b)
      if ((v ^ (1 << b)) > v) edges.emplace_back(v, v ^ (1 << b));
  return Graph::from_edges(n, std::move(edges));
}

Graph random_regular_graph(int n, int d, std::uint64_t seed) {
  require(n * d % 2 == 0 && d >= 1 && d < n, "BadInput", "no d-regular graph on n vertices");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    // Pairing model: n*d stubs, shuffled, paired consecutively.
    std::vector<int> stubs(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) stubs[static_cast<std::size_t>(v) * d + k] = v;
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.integer(i + 1)]);
    std::set<std::pair<int, int>> edge_set;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!edge_set.emplace(u, v).second) {
        simple = false;
        break;
      }
    }
    if (!simple) continue;
    Graph g = Graph::from_edges(n, {edge_set.begin(), edge_set.end()});
    if (g.is_connected()) return g;
  }
  fail("DecompositionFailed", "pairing model failed to produce a simple connected graph");
}

double expansion_constant(const Graph& g) {
  require(g.n >= 2, "BadInput", "expansion constant needs at least 2 vertices");
  require(g.n <= 24, "TooLarge", "exhaustive subset enumeration capped at 24 vertices");
  const int n = g.n;
  double best = std::numeric_limits<double>::infinity();
  // Fix vertex 0 inside U; this halves the enumeration (U vs complement).
  const std::uint32_t limit = 1u << (n - 1);
  for (std::uint32_t m = 0; m < limit; ++m) {
    const std::uint32_t mask = (m << 1) | 1u;
    const int size = __builtin_popcount(mask);
    if (size == n) continue;  // proper subsets only
    int cut = 0;
    for (const auto& [u, v] : g.edges) cut += ((mask >> u) ^ (mask >> v)) & 1u;
    const double ratio = static_cast<double>(cut) / std::min(size, n - size);
    best = std::min(best, ratio);
  }
  return best;
}

SpectralData spectral_data(const Graph& g) {
  require(g.n >= 1, "BadInput", "empty graph");
  const EigResult eig = hermitian_eig(g.adjacency().cast<cplx>(), 1e-9);
  SpectralData out;
  out.eigenvalues = eig.eigenvalues.reverse();
  out.lambda2 = g.n >= 2 ? out.eigenvalues[1] : 0.0;
  out.regular_degree = g.regular_degree();
  if (out.regular_degree) {
    // d-regular: connected iff eigenvalue d has multiplicity 1.
    const double d = *out.regular_degree;
    int mult = 0;
    for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k)
      if (out.eigenvalues[k] > d - 1e-9) ++mult;
    out.connected = (mult == 1);
  } else {
    out.connected = g.is_connected();
  }
  return out;
}

CheegerReport check_cheeger(const Graph& g) {
  const SpectralData sd = spectral_data(g);
  require(sd.regular_degree.has_value(), "NotRegular", "Cheeger bounds need a regular graph");
  require(sd.connected, "NotConnected", "Cheeger bounds need a connected graph");
  CheegerReport r;
  r.degree = *sd.regular_degree;
  r.h = expansion_constant(g);
  r.lambda2 = sd.lambda2;
  const double d = r.degree;
  r.lower = 0.5 * (d - r.lambda2);
  r.upper = std::sqrt(std::max(0.0, 2.0 * d * (d - r.lambda2)));
  r.mohar = std::sqrt(std::max(0.0, d * d - r.lambda2 * r.lambda2));
  r.lower_ok = r.lower <= r.h + 1e-9;
  r.upper_ok = r.h <= r.upper + 1e-9;
  r.mohar_ok = r.h <= r.mohar + 1e-9;
  return r;
}

namespace {

void validate_symmetric_set(const FiniteGroup& G, const std::vector<int>& S) {
  require(!S.empty(), "NotSymmetric", "empty generating set");
  for (int s : S) {
    require(s >= 0 && s < G.order(), "BadInput", "generator index out of range");
    require(std::find(S.begin(), S.end(), G.inverse(s)) != S.end(), "NotSymmetric",
            "generating set is not closed under inverses");
  }
}

}  // namespace

Graph cayley_graph(const FiniteGroup& G, const std::vector<int>& S) {
  validate_symmetric_set(G, S);
  require(std::find(S.begin(), S.end(), FiniteGroup::identity) == S.end(), "ContainsIdentity",
          "generating set contains the identity");
  std::set<std::pair<int, int>> edge_set;
  for (int g = 0; g < G.order(); ++g)
    for (int s : S) {
      int u = g, v = G.mult(g, s);
      if (u > v) std::swap(u, v);
      edge_set.emplace(u, v);
    }
  return Graph::from_edges(G.order(), {edge_set.begin(), edge_set.end()});
}

SchreierGraph schreier_graph(const FiniteGroup& G, const std::vector<int>& H,
                             const std::vector<int>& S) {
  validate_symmetric_set(G, S);
  SchreierGraph out;
  out.coset_partition = cosets(G, H);
  const int k = static_cast<int>(out.coset_partition.size());
  std::vector<int> coset_of(G.order(), -1);
  for (int i = 0; i < k; ++i)
    for (int g : out.coset_partition[i]) coset_of[g] = i;
  out.weighted = Eigen::MatrixXi::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    const int rep = out.coset_partition[i].front();
    for (int s : S) ++out.weighted(i, coset_of[G.mult(s, rep)]);
  }
  std::vector<std::pair<int, int>> simple_edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (out.weighted(i, j) > 0) simple_edges.emplace_back(i, j);
  out.simple = Graph::from_edges(k, std::move(simple_edges));
  return out;
}

// ---------------------------------------------------------------------------
// Cycle-cover decomposition machinery.
// ---------------------------------------------------------------------------
namespace {

/// Maximum matching in a general graph (classic blossom contraction, O(V^3)).
/// Returns match[v] = partner or -1.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const std::vector<std::vector<int>>& adj)
      : n_(static_cast<int>(adj.size())), adj_(adj), match_(n_, -1), parent_(n_, -1),
        base_(n_, 0), used_(n_, false), blossom_(n_, false) {}

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1) {
        const int u = find_path(v);
        if (u != -1) augment(u);
      }
    return match_;
  }

 private:
  void augment(int u) {
    while (u != -1) {
      const int pv = parent_[u];
      const int ppv = match_[pv];
      match_[u] = pv;
      match_[pv] = u;
      u = ppv;
    }
  }

  int lowest_common_base(int a, int b) {
    std::vector<bool> on_path(n_, false);
    int cur = a;
    while (true) {
      cur = base_[cur];
      on_path[cur] = true;
      if (match_[cur] == -1) break;
      cur = parent_[match_[cur]];
    }
    cur = b;
    while (!on_path[base_[cur]]) cur = parent_[match_[cur]];
    return base_[cur];
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = true;
      blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          const int cur_base = lowest_common_base(v, to);
          std::fill(blossom_.begin(), blossom_.end(), false);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n_; ++i)
            if (blossom_[base_[i]]) {
              base_[i] = cur_base;
              if (!used_[i]) {
                used_[i] = true;
                q.push(i);
              }
            }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = true;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<bool> used_, blossom_;
};

/// Orient every edge along an Euler circuit of its component (all degrees
/// even).  Returns out-neighbor lists: each vertex gets exactly deg/2 heads.
std::vector<std::vector<int>> euler_orient(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> inc(n);  // (neighbor, edge id)
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    inc[edges[e].first].emplace_back(edges[e].second, e);
    inc[edges[e].second].emplace_back(edges[e].first, e);
  }
  std::vector<std::size_t> next_arc(n, 0);
  std::vector<bool> edge_used(edges.size(), false);
  std::vector<std::vector<int>> out(n);
  for (int start = 0; start < n; ++start) {
    if (next_arc[start] >= inc[start].size()) continue;
    // Hierholzer: walk until stuck (back at a vertex of even remaining
    // degree, i.e. the start), orienting arcs in walk direction.
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int v = stack.back();
      bool advanced = false;
      while (next_arc[v] < inc[v].size()) {
        const auto [w, id] = inc[v][next_arc[v]++];
        if (edge_used[id]) continue;
        edge_used[id] = true;
        out[v].push_back(w);
        stack.push_back(w);
        advanced = true;
        break;
      }
      if (!advanced) stack.pop_back();
    }
  }
  return out;
}

/// Perfect matching in a bipartite graph given as left-to-right adjacency
/// (Kuhn's augmenting paths).  Returns right-partner per left vertex, or an
/// empty vector if no perfect matching exists.
std::vector<int> bipartite_perfect_matching(const std::vector<std::vector<int>>& adj, int n) {
  std::vector<int> match_right(n, -1), match_left(n, -1);
  std::vector<char> visited(n, 0);
  std::function<bool(int)> try_kuhn = [&](int v) -> bool {
    for (int w : adj[v]) {
      if (visited[w]) continue;
      visited[w] = 1;
      if (match_right[w] == -1 || try_kuhn(match_right[w])) {
        match_right[w] = v;
        match_left[v] = w;
        return true;
      }
    }
    return false;
  };
  for (int v = 0; v < n; ++v) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_kuhn(v)) return {};
  }
  return match_left;
}

}  // namespace

RMat permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  RMat P = RMat::Zero(n, n);
  for (int v = 0; v < n; ++v) P(v, perm[v]) = 1.0;
  return P;
}

CycleCoverDecomposition cycle_cover_decomposition(const Graph& g, std::uint64_t seed) {
  const auto deg = g.regular_degree();
  require(deg.has_value(), "NotRegular", "cycle covers need a regular graph");
  const int d = *deg;
  const int n = g.n;
  CycleCoverDecomposition out;
  if (d == 0) return out;

  Rng rng(seed);
  std::vector<std::pair<int, int>> remaining = g.edges;
  std::vector<int> matching_perm;

  if (d % 2 == 1) {
    // Remove one perfect matching first; the remainder is even-regular.
    auto adj = g.adjacency_list();
    // Seeded tie-breaking: shuffle each neighbor list once up front.
    for (auto& list : adj)
      for (std::size_t i = list.size(); i > 1; --i)
        std::swap(list[i - 1], list[rng.integer(i)]);
    const std::vector<int> match = BlossomMatcher(adj).solve();
    for (int v = 0; v < n; ++v)
      require(match[v] != -1, "DecompositionFailed",
              "perfect matching stage: odd-degree graph has no perfect matching");
    matching_perm = match;
    std::set<std::pair<int, int>> matched;
    for (int v = 0; v < n; ++v) matched.emplace(std::min(v, match[v]), std::max(v, match[v]));
    std::vector<std::pair<int, int>> kept;
    for (const auto& e : remaining)
      if (!matched.count(e)) kept.push_back(e);
    remaining = std::move(kept);
  }

  const int pairs = d / 2;
  if (pairs > 0) {
    // Euler-orient the even-regular remainder, then peel the out-degree-
    // (d/2) orientation into permutations by bipartite perfect matchings.
    // Orienting first means arcs v->w and w->v never coexist, so no peeled
    // permutation contains a 2-cycle and the matrix-sum identity is exact.
    std::vector<std::vector<int>> arcs = euler_orient(n, remaining);
    for (auto& list : arcs)
      for (std::size_t i = list.size(); i > 1; --i)
        std::swap(list[i - 1], list[rng.integer(i)]);
    for (int round = 0; round < pairs; ++round) {
      const std::vector<int> sigma = bipartite_perfect_matching(arcs, n);
      require(!sigma.empty(), "DecompositionFailed",
              "2-factor stage: regular bipartite peel has no perfect matching");
      std::vector<int> sigma_inv(n);
      for (int v = 0; v < n; ++v) sigma_inv[sigma[v]] = v;
      out.perms.push_back(sigma);
      out.perms.push_back(std::move(sigma_inv));
      for (int v = 0; v < n; ++v)
        arcs[v].erase(std::find(arcs[v].begin(), arcs[v].end(), sigma[v]));
    }
  }

  if (!matching_perm.empty()) out.perms.push_back(std::move(matching_perm));
  return out;
}

}  // namespace qexpand
