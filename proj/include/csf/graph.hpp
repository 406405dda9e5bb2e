#pragma once

// Vertex-labeled graphs with a fixed total order on the edges, the standard
// constructors (cycles, cliques, paths, trees, graph sums, chains) and the
// broken-circuit machinery that the forest-triple expansion is built on.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "csf/errors.hpp"

namespace csf {

/// Bit v-1 set <=> vertex v present.
using VertexMask = std::uint64_t;
/// Bit j set <=> edge of rank j present.
using EdgeMask = std::uint64_t;

inline constexpr int max_mask_bits = 64;

inline constexpr VertexMask vertex_bit(int v) { return VertexMask{1} << (v - 1); }
inline constexpr EdgeMask edge_bit(int rank) { return EdgeMask{1} << rank; }
inline int min_vertex(VertexMask m) { return std::countr_zero(m) + 1; }
inline int popcount(std::uint64_t m) { return std::popcount(m); }

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class LabeledGraph {
 public:
  LabeledGraph() = default;

  LabeledGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw domain_error("LabeledGraph: negative vertex count");
    if (n > max_mask_bits) throw domain_error("LabeledGraph: more than 64 vertices");
    if (edges_.size() > static_cast<std::size_t>(max_mask_bits))
      throw domain_error("LabeledGraph: more than 64 edges");
    for (const Edge& e : edges_) {
      if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
        throw domain_error("LabeledGraph: endpoint out of range");
      if (e.u == e.v) throw domain_error("LabeledGraph: loops are not allowed");
    }
  }

  [[nodiscard]] int vertex_count() const noexcept { return n_; }
  [[nodiscard]] int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const Edge& edge(int rank) const { return edges_.at(static_cast<std::size_t>(rank)); }
  [[nodiscard]] VertexMask all_vertices() const noexcept {
    return n_ == 64 ? ~VertexMask{0} : (VertexMask{1} << n_) - 1;
  }
  [[nodiscard]] EdgeMask all_edges() const noexcept {
    return edges_.size() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << edges_.size()) - 1;
  }

  /// Vertex set spanned by the given edges.
  [[nodiscard]] VertexMask vertices_of(EdgeMask edges) const {
    VertexMask out = 0;
    for (EdgeMask m = edges; m; m &= m - 1) {
      const Edge& e = edges_[static_cast<std::size_t>(std::countr_zero(m))];
      out |= vertex_bit(e.u) | vertex_bit(e.v);
    }
    return out;
  }

  /// Same vertices, edges reordered: new rank j holds old edge perm[j].
  [[nodiscard]] LabeledGraph with_edge_order(const std::vector<int>& perm) const {
    if (perm.size() != edges_.size()) throw domain_error("with_edge_order: permutation size mismatch");
    std::vector<bool> seen(edges_.size(), false);
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (int p : perm) {
      if (p < 0 || p >= edge_count() || seen[static_cast<std::size_t>(p)])
        throw domain_error("with_edge_order: not a permutation");
      seen[static_cast<std::size_t>(p)] = true;
      out.push_back(edges_[static_cast<std::size_t>(p)]);
    }
    return LabeledGraph(n_, std::move(out));
  }

  /// Adjacency as vertex masks indexed by vertex (entry 0 unused), parallel
  /// edges collapsed.
  [[nodiscard]] std::vector<VertexMask> adjacency() const {
    std::vector<VertexMask> adj(static_cast<std::size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
      adj[static_cast<std::size_t>(e.u)] |= vertex_bit(e.v);
      adj[static_cast<std::size_t>(e.v)] |= vertex_bit(e.u);
    }
    return adj;
  }

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

namespace detail {

/// Union-find over vertices 1..n small enough to copy per search level.
class VertexPartition {
 public:
  explicit VertexPartition(int n) : parent_(static_cast<std::size_t>(n) + 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// A connected piece of a forest: its vertices and its edges.
struct ForestComponent {
  VertexMask vertices = 0;
  EdgeMask edges = 0;
  friend bool operator==(const ForestComponent&, const ForestComponent&) = default;
};

/// Connected components of (V(G), S), including isolated vertices, sorted by
/// minimum vertex.
inline std::vector<ForestComponent> components(const LabeledGraph& g, EdgeMask s) {
  detail::VertexPartition uf(g.vertex_count());
  for (EdgeMask m = s; m; m &= m - 1) {
    const Edge& e = g.edge(std::countr_zero(m));
    uf.unite(e.u, e.v);
  }
  std::vector<int> slot(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  std::vector<ForestComponent> out;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    int root = uf.find(v);
    auto& idx = slot[static_cast<std::size_t>(root)];
    if (idx < 0) {
      idx = static_cast<int>(out.size());
      out.push_back({});
    }
    out[static_cast<std::size_t>(idx)].vertices |= vertex_bit(v);
  }
  for (EdgeMask m = s; m; m &= m - 1) {
    int rank = std::countr_zero(m);
    int root = uf.find(g.edge(rank).u);
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].edges |= edge_bit(rank);
  }
  return out;
}

inline bool is_acyclic(const LabeledGraph& g, EdgeMask s) {
  detail::VertexPartition uf(g.vertex_count());
  for (EdgeMask m = s; m; m &= m - 1) {
    const Edge& e = g.edge(std::countr_zero(m));
    if (!uf.unite(e.u, e.v)) return false;
  }
  return true;
}

inline bool is_connected(const LabeledGraph& g) {
  return g.vertex_count() <= 1 || components(g, g.all_edges()).size() == 1;
}

// ---------------------------------------------------------------------------
// Constructors

/// C_a with edges (1,2) < (2,3) < ... < (a-1,a) < (a,1). C_2 is a doubled edge.
inline LabeledGraph cycle_graph(int a) {
  if (a < 2) throw domain_error("cycle_graph: a must be at least 2");
  std::vector<Edge> edges;
  for (int j = 1; j < a; ++j) edges.push_back({j, j + 1});
  edges.push_back({a, 1});
  return LabeledGraph(a, std::move(edges));
}

/// K_k with edges in lexicographic order of (smaller, larger) endpoint.
inline LabeledGraph clique_graph(int k) {
  if (k < 1) throw domain_error("clique_graph: k must be at least 1");
  std::vector<Edge> edges;
  for (int u = 1; u <= k; ++u)
    for (int v = u + 1; v <= k; ++v) edges.push_back({u, v});
  return LabeledGraph(k, std::move(edges));
}

/// P_k: 1 - 2 - ... - k.
inline LabeledGraph path_graph(int k) {
  if (k < 1) throw domain_error("path_graph: k must be at least 1");
  std::vector<Edge> edges;
  for (int j = 1; j < k; ++j) edges.push_back({j, j + 1});
  return LabeledGraph(k, std::move(edges));
}

/// Star on k vertices centred at vertex 1.
inline LabeledGraph star_graph(int k) {
  if (k < 1) throw domain_error("star_graph: k must be at least 1");
  std::vector<Edge> edges;
  for (int j = 2; j <= k; ++j) edges.push_back({1, j});
  return LabeledGraph(k, std::move(edges));
}

inline LabeledGraph empty_graph(int n) { return LabeledGraph(n, {}); }

/// Validated tree on vertices 1..n; edges keep the given order.
inline LabeledGraph tree_graph(int n, std::vector<Edge> edges) {
  if (n < 1) throw domain_error("tree_graph: need at least one vertex");
  if (edges.size() != static_cast<std::size_t>(n - 1))
    throw domain_error("tree_graph: a tree on n vertices has n-1 edges");
  LabeledGraph g(n, std::move(edges));
  if (!is_acyclic(g, g.all_edges())) throw domain_error("tree_graph: edge list contains a cycle");
  return g;
}

/// G1 + G2: vertex |G1| of G1 is glued to vertex 1 of G2; G2's vertices shift
/// by |G1|-1 and all of G1's edges precede G2's.
inline LabeledGraph graph_sum(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (g1.vertex_count() < 1 || g2.vertex_count() < 1) throw domain_error("graph_sum: empty operand");
  const int shift = g1.vertex_count() - 1;
  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges()) edges.push_back({e.u + shift, e.v + shift});
  return LabeledGraph(g1.vertex_count() + g2.vertex_count() - 1, std::move(edges));
}

enum class SegmentKind { cycle, clique };

struct ChainSegment {
  SegmentKind kind = SegmentKind::cycle;
  int size = 0;
  friend bool operator==(const ChainSegment&, const ChainSegment&) = default;
};

using ChainSpec = std::vector<ChainSegment>;

inline void validate_chain(const ChainSpec& spec) {
  if (spec.empty()) throw domain_error("chain: empty specification");
  for (const auto& s : spec) {
    if (s.kind == SegmentKind::cycle && s.size < 2) throw domain_error("chain: cycle segments need size >= 2");
    if (s.kind == SegmentKind::clique && s.size < 1) throw domain_error("chain: clique segments need size >= 1");
  }
}

inline LabeledGraph segment_graph(const ChainSegment& s) {
  return s.kind == SegmentKind::cycle ? cycle_graph(s.size) : clique_graph(s.size);
}

/// Left fold of graph_sum over the segments.
inline LabeledGraph chain_graph(const ChainSpec& spec) {
  validate_chain(spec);
  LabeledGraph g = segment_graph(spec.front());
  for (std::size_t i = 1; i < spec.size(); ++i) g = graph_sum(g, segment_graph(spec[i]));
  return g;
}

inline int chain_vertex_count(const ChainSpec& spec) {
  validate_chain(spec);
  int n = 1;
  for (const auto& s : spec) n += s.size - 1;
  return n;
}

/// Parses "C4+C3+K5" (case-insensitive).
inline ChainSpec parse_chain_spec(const std::string& text) {
  ChainSpec spec;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, '+')) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    token.erase(token.begin(), std::find_if(token.begin(), token.end(), not_space));
    token.erase(std::find_if(token.rbegin(), token.rend(), not_space).base(), token.end());
    if (token.size() < 2) throw domain_error("chain spec: malformed segment '" + token + "'");
    char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    if (kind != 'C' && kind != 'K') throw domain_error("chain spec: unknown segment kind in '" + token + "'");
    std::string digits = token.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw domain_error("chain spec: bad size in '" + token + "'");
    int size = 0;
    try {
      size = std::stoi(digits);
    } catch (const std::exception&) {
      throw domain_error("chain spec: bad size in '" + token + "'");
    }
    spec.push_back({kind == 'C' ? SegmentKind::cycle : SegmentKind::clique, size});
  }
  if (text.empty() || text.back() == '+') throw domain_error("chain spec: empty segment");
  validate_chain(spec);
  return spec;
}

inline std::string to_string(const ChainSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i) out += '+';
    out += spec[i].kind == SegmentKind::cycle ? 'C' : 'K';
    out += std::to_string(spec[i].size);
  }
  return out;
}

/// Reads the text format: `n <count>` then `e <u> <v>` lines in edge order.
/// Blank lines and `#` comments are ignored.
inline LabeledGraph parse_graph_text(std::istream& in) {
  std::optional<int> n;
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    auto fail = [&](const std::string& why) {
      throw domain_error("graph text line " + std::to_string(lineno) + ": " + why);
    };
    if (tag == "n") {
      int count = 0;
      if (n) fail("duplicate vertex count");
      if (!(ls >> count) || count < 1) fail("expected positive vertex count");
      n = count;
    } else if (tag == "e") {
      Edge e;
      if (!n) fail("edge before vertex count");
      if (!(ls >> e.u >> e.v)) fail("expected two endpoints");
      edges.push_back(e);
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing content");
  }
  if (!n) throw domain_error("graph text: missing vertex count");
  return LabeledGraph(*n, std::move(edges));
}

inline LabeledGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph_text(in);
}

inline std::string to_graph_text(const LabeledGraph& g) {
  std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
  for (const Edge& e : g.edges()) out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Broken circuits

/// Edge sets of all simple cycles (a doubled edge counts as a 2-cycle).
inline std::vector<EdgeMask> simple_cycles(const LabeledGraph& g) {
  const int m = g.edge_count();
  std::vector<std::vector<std::pair<int, int>>> incident(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (int j = 0; j < m; ++j) {
    const Edge& e = g.edge(j);
    incident[static_cast<std::size_t>(e.u)].push_back({e.v, j});
    incident[static_cast<std::size_t>(e.v)].push_back({e.u, j});
  }
  std::vector<EdgeMask> out;
  // Each cycle is found once: from its lowest-rank edge s = (u,v), walk from v
  // back to u through edges of rank > s.
  for (int s = 0; s < m; ++s) {
    const int start = g.edge(s).u;
    const int target = start;
    auto dfs = [&](auto&& self, int at, VertexMask visited, EdgeMask used) -> void {
      for (auto [next, rank] : incident[static_cast<std::size_t>(at)]) {
        if (rank <= s || (used & edge_bit(rank))) continue;
        if (next == target) {
          out.push_back(used | edge_bit(rank));
          continue;
        }
        if (visited & vertex_bit(next)) continue;
        self(self, next, visited | vertex_bit(next), used | edge_bit(rank));
      }
    };
    const int v = g.edge(s).v;
    dfs(dfs, v, vertex_bit(start) | vertex_bit(v), edge_bit(s));
  }
  return out;
}

/// Every cycle minus its highest-rank edge, duplicates collapsed.
inline std::set<EdgeMask> broken_circuits(const LabeledGraph& g) {
  std::set<EdgeMask> out;
  for (EdgeMask c : simple_cycles(g)) {
    int top = 63 - std::countl_zero(c);
    out.insert(c & ~edge_bit(top));
  }
  return out;
}

/// S is acyclic and no edge outside S closes a cycle in which it is the
/// largest edge (path-max criterion; equivalent to containing no broken circuit).
inline bool is_nbc_forest(const LabeledGraph& g, EdgeMask s) {
  if (s & ~g.all_edges()) throw domain_error("is_nbc_forest: edge rank out of range");
  if (!is_acyclic(g, s)) return false;
  // Adding edges in increasing rank, an edge whose endpoints are already joined
  // by smaller S-edges would be the maximum of a cycle through S.
  detail::VertexPartition uf(g.vertex_count());
  for (int j = 0; j < g.edge_count(); ++j) {
    const Edge& e = g.edge(j);
    if (uf.find(e.u) == uf.find(e.v)) return false;
    if (s & edge_bit(j)) uf.unite(e.u, e.v);
  }
  return true;
}

/// Visits every NBC forest once. Depth-first over edges in increasing rank;
/// a branch dies as soon as the current edge's endpoints are already joined
/// by chosen smaller edges. Excluded branch is explored before included.
template <class Fn>
void for_each_nbc_forest(const LabeledGraph& g, Fn&& fn) {
  const int m = g.edge_count();
  const int n = g.vertex_count();
  // comp[v] = component label; copied per level (n <= 64).
  std::vector<std::vector<int>> stack(static_cast<std::size_t>(m) + 1, std::vector<int>(static_cast<std::size_t>(n) + 1));
  std::iota(stack[0].begin(), stack[0].end(), 0);
  auto rec = [&](auto&& self, int j, EdgeMask chosen) -> void {
    if (j == m) {
      fn(chosen);
      return;
    }
    const auto& comp = stack[static_cast<std::size_t>(j)];
    const Edge& e = g.edge(j);
    const int cu = comp[static_cast<std::size_t>(e.u)];
    const int cv = comp[static_cast<std::size_t>(e.v)];
    if (cu == cv) return;
    auto& next = stack[static_cast<std::size_t>(j) + 1];
    next = comp;
    self(self, j + 1, chosen);
    next = comp;
    const int lo = std::min(cu, cv);
    const int hi = std::max(cu, cv);
    for (auto& c : next)
      if (c == hi) c = lo;
    self(self, j + 1, chosen | edge_bit(j));
  };
  rec(rec, 0, 0);
}

inline std::vector<EdgeMask> enumerate_nbc_forests(const LabeledGraph& g) {
  std::vector<EdgeMask> out;
  for_each_nbc_forest(g, [&](EdgeMask s) { out.push_back(s); });
  return out;
}

}  // namespace csf
