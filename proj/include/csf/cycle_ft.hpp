#pragma once

// Compact ⟨(v, α, r), ...⟩ encoding of forest triples on a cycle C_a, possibly
// with a tree U hanging off vertex a. Each tree covers an arc of the cycle
// starting at v; the arc through vertex a also carries all of U.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "csf/algebra.hpp"
#include "csf/errors.hpp"
#include "csf/forest_triples.hpp"
#include "csf/graph.hpp"

namespace csf {

/// A graph whose vertices 1..a and edge ranks 0..a-1 form C_a in its standard
/// order, plus k-1 extra vertices and edges forming a tree attached at a. The
/// graph may contain further vertices; encode/decode only touch the trees
/// that meet the cycle.
struct CycleHost {
  LabeledGraph graph;
  int a = 0;
  int k = 1;
  EdgeMask extra_edges = 0;
  VertexMask extra_vertices = 0;

  [[nodiscard]] VertexMask cycle_vertices() const { return (VertexMask{1} << a) - 1; }
};

inline CycleHost cycle_host(int a) { return CycleHost{cycle_graph(a), a, 1, 0, 0}; }

/// Host for FT'(C_a + U).
inline CycleHost cycle_tree_host(int a, const LabeledGraph& u) {
  CutAttachment att = attach_tree(cycle_graph(a), u);
  VertexMask extra = att.graph.all_vertices() & ~((VertexMask{1} << a) - 1);
  return CycleHost{att.graph, a, att.k, att.u_edges, extra};
}

struct ArcTriple {
  int v = 1;
  Composition alpha;
  int r = 1;
  friend bool operator==(const ArcTriple&, const ArcTriple&) = default;
  friend auto operator<=>(const ArcTriple&, const ArcTriple&) = default;
};

/// Trees not containing vertex 1 in increasing order of start vertex, then
/// the tree containing vertex 1.
struct CycleFT {
  std::vector<ArcTriple> entries;
  friend bool operator==(const CycleFT&, const CycleFT&) = default;
  friend auto operator<=>(const CycleFT&, const CycleFT&) = default;
};

inline std::string to_string(const CycleFT& c) {
  std::string out = "<";
  for (std::size_t j = 0; j < c.entries.size(); ++j) {
    const auto& e = c.entries[j];
    if (j) out += ",";
    out += "(" + std::to_string(e.v) + "," + e.alpha.to_string() + "," + std::to_string(e.r) + ")";
  }
  return out + ">";
}

namespace detail {

/// Representative of x mod a in 1..a.
inline int wrap_vertex(int x, int a) { return ((x - 1) % a + a) % a + 1; }

/// Rank of the cycle edge entering v: (v-1, v), or (a, 1) for v = 1.
inline int incoming_rank(int v, int a) { return v >= 2 ? v - 2 : a - 1; }

/// Number of cycle vertices covered by an entry: the arc through vertex a
/// also carries the k-1 extra vertices.
inline int arc_length(const ArcTriple& t, int a, int k) {
  const int s = t.alpha.sum();
  if (t.v + s - 1 <= a - 1) return s;
  return s - k + 1;
}

inline bool arc_contains_one(const ArcTriple& t, int a, int k) {
  return t.v == 1 || t.v + arc_length(t, a, k) - 1 > a;
}

}  // namespace detail

/// Restores canonical entry order.
inline void canonicalize(CycleFT& c, int a, int k) {
  std::stable_sort(c.entries.begin(), c.entries.end(), [&](const ArcTriple& x, const ArcTriple& y) {
    bool x1 = detail::arc_contains_one(x, a, k);
    bool y1 = detail::arc_contains_one(y, a, k);
    if (x1 != y1) return y1;
    return x.v < y.v;
  });
}

/// Trees of F that meet the cycle, as a CycleFT. Trees entirely outside the
/// cycle are ignored. Throws domain_error if the tree through a does not hold
/// all of U.
inline CycleFT encode_cycle(const CycleHost& host, const ForestTriple& f) {
  const int a = host.a;
  CycleFT out;
  for (const auto& t : f.trees) {
    VertexMask cyc = t.vertices & host.cycle_vertices();
    if (!cyc) continue;
    if (t.contains(a)) {
      if ((t.edges & host.extra_edges) != host.extra_edges || (t.vertices & host.extra_vertices) != host.extra_vertices)
        throw domain_error("encode_cycle: tree through the attachment vertex does not contain the attached tree");
    }
    int start = 0;
    for (VertexMask m = cyc; m; m &= m - 1) {
      int v = std::countr_zero(m) + 1;
      if (!(t.edges & edge_bit(detail::incoming_rank(v, a)))) {
        if (start) throw domain_error("encode_cycle: tree is not an arc of the cycle");
        start = v;
      }
    }
    if (!start) throw domain_error("encode_cycle: tree covers the whole cycle with a closed loop");
    out.entries.push_back({start, t.alpha, t.r});
  }
  canonicalize(out, a, host.k);
  return out;
}

/// Inverse of encode_cycle: tree triples covering the cycle (and U).
inline std::vector<TreeTriple> decode_cycle(const CycleHost& host, const CycleFT& c) {
  const int a = host.a;
  const int k = host.k;
  std::vector<TreeTriple> out;
  VertexMask covered = 0;
  for (const auto& e : c.entries) {
    if (e.v < 1 || e.v > a) throw domain_error("decode_cycle: start vertex out of range");
    if (e.alpha.empty()) throw domain_error("decode_cycle: empty composition");
    const int len = detail::arc_length(e, a, k);
    if (len < 1 || len > a) throw domain_error("decode_cycle: arc length out of range");
    const bool through_a = e.v + len - 1 >= a;
    if (through_a && e.alpha.sum() != len + k - 1) throw domain_error("decode_cycle: size mismatch at attachment");
    TreeTriple t;
    t.alpha = e.alpha;
    t.r = e.r;
    for (int j = 0; j < len; ++j) {
      int x = detail::wrap_vertex(e.v + j, a);
      t.vertices |= vertex_bit(x);
      if (j + 1 < len) t.edges |= edge_bit(x - 1);  // edge (x, x+1) has rank x-1
    }
    if (through_a) {
      t.vertices |= host.extra_vertices;
      t.edges |= host.extra_edges;
    }
    if (covered & t.vertices) throw domain_error("decode_cycle: arcs overlap");
    covered |= t.vertices;
    out.push_back(std::move(t));
  }
  if ((covered & host.cycle_vertices()) != host.cycle_vertices()) throw domain_error("decode_cycle: arcs do not tile the cycle");
  return out;
}

/// decode_cycle plus the trees of `rest` that avoid the cycle.
inline ForestTriple decode_cycle_into(const CycleHost& host, const CycleFT& c, const ForestTriple& rest) {
  std::vector<TreeTriple> trees = decode_cycle(host, c);
  for (const auto& t : rest.trees)
    if (!(t.vertices & host.cycle_vertices())) trees.push_back(t);
  return ForestTriple(std::move(trees));
}

inline ForestTriple decode_cycle_forest(const CycleHost& host, const CycleFT& c) {
  return ForestTriple(decode_cycle(host, c));
}

}  // namespace csf
