#pragma once

// First-preserving sign-reversing involutions on forest triples: the cycle
// involution on FT(C_a), the cycle+tree involution on FT'(C_a+U_k), the
// composition across a cut vertex for C_a + G', a table-driven fallback for
// small graphs, and an audit harness for the involution axioms.

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <tuple>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csf/algebra.hpp"
#include "csf/cycle_ft.hpp"
#include "csf/errors.hpp"
#include "csf/forest_triples.hpp"
#include "csf/graph.hpp"

namespace csf {

using Involution = std::function<ForestTriple(const ForestTriple&)>;

struct InvolutionClass {
  enum class Label { A, B, C, D, E, F, G, H, I1, I2 };
  Label label = Label::E;
  int index = 0;  // meaningful for A_i, B_i, C_i, D_i, G_i, H_i

  friend bool operator==(const InvolutionClass&, const InvolutionClass&) = default;
  friend auto operator<=>(const InvolutionClass&, const InvolutionClass&) = default;

  [[nodiscard]] std::string to_string() const {
    static const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H", "I1", "I2"};
    std::string s = names[static_cast<int>(label)];
    if (has_index_) s += "_" + std::to_string(index);
    return s;
  }

  static InvolutionClass make(Label l, int i = 0, bool with_index = false) {
    InvolutionClass c;
    c.label = l;
    c.index = i;
    c.has_index_ = with_index;
    return c;
  }

 private:
  bool has_index_ = false;
};

namespace detail {

using Label = InvolutionClass::Label;

inline ArcTriple shifted(const ArcTriple& t, int by, int a) { return {wrap_vertex(t.v + by, a), t.alpha, t.r}; }

inline Composition single(int part) { return Composition{part}; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Cycle involution on FT(C_a). Entries T_1..T_m with T_m holding vertex 1;
// "wrap" means the edge (a,1) lies in T_m, i.e. v_m != 1.

inline InvolutionClass classify_cycle(const CycleFT& f, int a) {
  using detail::Label;
  const auto& e = f.entries;
  const std::size_t m = e.size();
  if (m == 0) detail::fail_internal("classify_cycle: empty forest triple");
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (e[j].alpha.length() >= 2) return InvolutionClass::make(Label::B, static_cast<int>(j) + 1, true);
    if (e[j].r == 1) return InvolutionClass::make(Label::A, static_cast<int>(j) + 1, true);
  }
  const ArcTriple& last = e[m - 1];
  const bool wrap = last.v != 1;
  // Breaking the last tree keeps vertex 1 in the second piece only when the
  // tree wraps and its last part fits before the seam.
  if (last.alpha.length() >= 2 && wrap && last.alpha.back() <= a - last.v + 1)
    return InvolutionClass::make(Label::B, static_cast<int>(m), true);
  if (!wrap) {
    if (m < 2) detail::fail_internal("classify_cycle: spanning tree without edge (a,1)");
    return InvolutionClass::make(Label::C, e[m - 2].r - 1, true);
  }
  if (last.alpha.length() >= 2) return InvolutionClass::make(Label::D, last.alpha.back() - a + last.v - 1, true);
  return InvolutionClass::make(Label::E);
}

inline CycleFT cycle_involution(const CycleFT& f, int a) {
  using detail::Label;
  const InvolutionClass cls = classify_cycle(f, a);
  const auto& e = f.entries;
  const std::size_t m = e.size();
  CycleFT out;
  switch (cls.label) {
    case Label::A: {
      // tjoin_i: T_i and T_{i+1} become (v_i, α^(i+1)·α^(i), r_{i+1}).
      const std::size_t j = static_cast<std::size_t>(cls.index) - 1;
      for (std::size_t x = 0; x < m; ++x) {
        if (x == j) out.entries.push_back({e[j].v, e[j + 1].alpha.concat(e[j].alpha), e[j + 1].r});
        else if (x != j + 1) out.entries.push_back(e[x]);
      }
      break;
    }
    case Label::B: {
      // tbreak_i: T_i becomes (v_i, (α_l), 1) and (v_i + α_l, α∖α_l, r_i).
      const std::size_t j = static_cast<std::size_t>(cls.index) - 1;
      for (std::size_t x = 0; x < m; ++x) {
        if (x != j) {
          out.entries.push_back(e[x]);
          continue;
        }
        const int t = e[j].alpha.back();
        out.entries.push_back({e[j].v, detail::single(t), 1});
        out.entries.push_back({detail::wrap_vertex(e[j].v + t, a), e[j].alpha.without_last(), e[j].r});
      }
      break;
    }
    case Label::C: {
      // rotatejoin_i: rotate by i, join T_{m-1} and T_m.
      const int i = cls.index;
      for (std::size_t x = 0; x + 2 < m; ++x) out.entries.push_back(detail::shifted(e[x], i, a));
      out.entries.push_back({detail::wrap_vertex(e[m - 2].v + i, a), e[m - 1].alpha.concat(e[m - 2].alpha), e[m - 1].r});
      break;
    }
    case Label::D: {
      // rotatebreak_i: rotate by -i, split off the last part of T_m.
      const int i = cls.index;
      const ArcTriple& last = e[m - 1];
      for (std::size_t x = 0; x + 1 < m; ++x) out.entries.push_back(detail::shifted(e[x], -i, a));
      out.entries.push_back({detail::wrap_vertex(last.v - i, a), detail::single(last.alpha.back()), i + 1});
      out.entries.push_back({1, last.alpha.without_last(), last.r});
      break;
    }
    default:
      return f;
  }
  canonicalize(out, a, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Cycle+tree involution on FT'(C_a + U_k). Entries R_1..R_m (regular trees),
// then T' (the tree through a, present only when (a,1) is not used), then
// T_min holding vertex 1.

namespace detail {

struct CycleTreeView {
  std::size_t m = 0;     // number of regular trees
  bool wrap = false;     // (a,1) in T_min
  std::size_t prime = 0; // index of T' when !wrap
  std::size_t min = 0;   // index of T_min
};

inline CycleTreeView view_cycle_tree(const CycleFT& f) {
  CycleTreeView v;
  const std::size_t n = f.entries.size();
  if (n == 0) fail_internal("cycle+tree: empty forest triple");
  v.min = n - 1;
  v.wrap = f.entries[v.min].v != 1;
  if (v.wrap) {
    v.m = n - 1;
  } else {
    if (n < 2) fail_internal("cycle+tree: missing tree through the attachment vertex");
    v.prime = n - 2;
    v.m = n - 2;
  }
  return v;
}

}  // namespace detail

inline InvolutionClass classify_cycle_tree(const CycleFT& f, int a, int k) {
  using detail::Label;
  const auto& e = f.entries;
  const auto view = detail::view_cycle_tree(f);
  const std::size_t m = view.m;
  for (std::size_t j = 0; j < m; ++j) {
    if (e[j].alpha.length() >= 2) return InvolutionClass::make(Label::B, static_cast<int>(j) + 1, true);
    if (e[j].r == 1) {
      if (j + 1 < m) return InvolutionClass::make(Label::A, static_cast<int>(j) + 1, true);
      break;
    }
  }
  const ArcTriple& tmin = e[view.min];
  const bool last_regular_root = m >= 1 && e[m - 1].r == 1;
  if (view.wrap) {
    if (last_regular_root) {
      if (tmin.alpha.length() >= 2 || e[m - 1].alpha.sum() >= k) return InvolutionClass::make(Label::C);
      return InvolutionClass::make(Label::I1);
    }
    if (tmin.alpha.length() >= 2) {
      if (tmin.alpha[1] <= a - tmin.v) return InvolutionClass::make(Label::D);
      const int v1 = m >= 1 ? e[0].v : tmin.v;
      return InvolutionClass::make(Label::H, v1 - 1 - tmin.alpha.front(), true);
    }
    return InvolutionClass::make(Label::I1);
  }
  const ArcTriple& tp = e[view.prime];
  if (last_regular_root) return InvolutionClass::make(Label::E);
  if (tmin.alpha.length() >= 2) return InvolutionClass::make(Label::F);
  const int tp_size = tp.alpha.sum();
  const int tmin_size = tmin.alpha.sum();
  if (tp.r <= tp_size + tmin_size - k) return InvolutionClass::make(Label::G, tp_size - k - tp.r + 1, true);
  return InvolutionClass::make(Label::I2);
}

inline CycleFT cycle_tree_involution(const CycleFT& f, int a, int k) {
  using detail::Label;
  const InvolutionClass cls = classify_cycle_tree(f, a, k);
  const auto& e = f.entries;
  const auto view = detail::view_cycle_tree(f);
  const std::size_t m = view.m;
  const ArcTriple& tmin = e[view.min];
  CycleFT out;
  switch (cls.label) {
    case Label::A: {
      const std::size_t j = static_cast<std::size_t>(cls.index) - 1;
      for (std::size_t x = 0; x < e.size(); ++x) {
        if (x == j) out.entries.push_back({e[j].v, e[j + 1].alpha.concat(e[j].alpha), e[j + 1].r});
        else if (x != j + 1) out.entries.push_back(e[x]);
      }
      break;
    }
    case Label::B: {
      const std::size_t j = static_cast<std::size_t>(cls.index) - 1;
      for (std::size_t x = 0; x < e.size(); ++x) {
        if (x != j) {
          out.entries.push_back(e[x]);
          continue;
        }
        const int t = e[j].alpha.back();
        out.entries.push_back({e[j].v, detail::single(t), 1});
        out.entries.push_back({e[j].v + t, e[j].alpha.without_last(), e[j].r});
      }
      break;
    }
    case Label::C: {
      // secondjoin: T_m's single part goes into second position of T_min.
      for (std::size_t x = 0; x + 1 < m; ++x) out.entries.push_back(e[x]);
      Composition joined = detail::single(tmin.alpha.front()).concat(e[m - 1].alpha).concat(tmin.alpha.without_first());
      out.entries.push_back({e[m - 1].v, joined, tmin.r});
      break;
    }
    case Label::D: {
      // secondbreak: split the second part of T_min off the front.
      for (std::size_t x = 0; x < m; ++x) out.entries.push_back(e[x]);
      const int t = tmin.alpha[1];
      out.entries.push_back({tmin.v, detail::single(t), 1});
      out.entries.push_back({detail::wrap_vertex(tmin.v + t, a), tmin.alpha.without(1), tmin.r});
      break;
    }
    case Label::E: {
      // shiftjoin: T_m moves onto the end of T_min.
      const int t = e[m - 1].alpha.front();
      for (std::size_t x = 0; x + 1 < m; ++x) out.entries.push_back(detail::shifted(e[x], t, a));
      out.entries.push_back(e[view.prime]);
      out.entries.push_back({1, tmin.alpha.concat(e[m - 1].alpha), tmin.r});
      break;
    }
    case Label::F: {
      // shiftbreak: the last part of T_min becomes a new tree just before T'.
      const int t = tmin.alpha.back();
      for (std::size_t x = 0; x < m; ++x) out.entries.push_back(detail::shifted(e[x], -t, a));
      out.entries.push_back({e[view.prime].v - t, detail::single(t), 1});
      out.entries.push_back(e[view.prime]);
      out.entries.push_back({1, tmin.alpha.without_last(), tmin.r});
      break;
    }
    case Label::G: {
      // rotatejoin_i: rotate by i and merge T' behind T_min across (a,1).
      const int i = cls.index;
      const ArcTriple& tp = e[view.prime];
      for (std::size_t x = 0; x < m; ++x) out.entries.push_back(detail::shifted(e[x], i, a));
      out.entries.push_back({a - tp.r + 1, tmin.alpha.concat(tp.alpha), tmin.r});
      break;
    }
    case Label::H: {
      // rotatebreak_i: rotate by -i, T_min keeps only its first part.
      const int i = cls.index;
      for (std::size_t x = 0; x < m; ++x) out.entries.push_back(detail::shifted(e[x], -i, a));
      out.entries.push_back({detail::wrap_vertex(tmin.v - i, a), tmin.alpha.without_first(), a - tmin.v + 1});
      out.entries.push_back({1, detail::single(tmin.alpha.front()), tmin.r});
      break;
    }
    default:
      return f;
  }
  canonicalize(out, a, k);
  return out;
}

/// The cycle involution as a map on FT(C_a).
inline Involution make_cycle_involution(int a) {
  CycleHost host = cycle_host(a);
  return [host](const ForestTriple& f) {
    return decode_cycle_forest(host, cycle_involution(encode_cycle(host, f), host.a));
  };
}

/// The cycle+tree involution as a map on FT'(C_a + U).
inline Involution make_cycle_tree_involution(int a, const LabeledGraph& u) {
  CycleHost host = cycle_tree_host(a, u);
  return [host](const ForestTriple& f) {
    return decode_cycle_forest(host, cycle_tree_involution(encode_cycle(host, f), host.a, host.k));
  };
}

/// Members of FT(C_a) fixed by the cycle involution, built directly: for each
/// β ⊨ a the tree through vertex 1 has size β₁ and uses edge (a,1), the others
/// follow consecutively with root index at least 2.
inline std::vector<CycleFT> cycle_fixed_points(int a) {
  if (a < 2) throw domain_error("cycle_fixed_points: a must be at least 2");
  std::vector<CycleFT> out;
  for_each_composition(a, [&](const Composition& beta) {
    const int b1 = beta.front();
    if (std::any_of(beta.parts().begin() + 1, beta.parts().end(), [](int p) { return p < 2; })) return;
    for (int vm = a - b1 + 2; vm <= a; ++vm) {
      // Remaining trees tile vm + b1 .. vm - 1 (mod a) in order.
      std::vector<int> start;
      int v = vm + b1;
      for (std::size_t j = 1; j < beta.length(); ++j) {
        start.push_back(detail::wrap_vertex(v, a));
        v += beta[j];
      }
      std::vector<int> roots(beta.length(), 2);
      for (int rm = 1; rm <= b1; ++rm) {
        std::fill(roots.begin() + 1, roots.end(), 2);
        while (true) {
          CycleFT c;
          for (std::size_t j = 1; j < beta.length(); ++j)
            c.entries.push_back({start[j - 1], detail::single(beta[j]), roots[j]});
          c.entries.push_back({vm, detail::single(b1), rm});
          canonicalize(c, a, 1);
          out.push_back(std::move(c));
          std::size_t j = 1;
          while (j < roots.size() && ++roots[j] > beta[j]) roots[j++] = 2;
          if (j == roots.size()) break;
        }
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Cut-vertex composition for G = C_a + G'. Vertices 1..a and edge ranks
// 0..a-1 are the cycle; G' vertex w is G vertex w + a - 1 and G' edge rank j
// is G rank j + a.

struct Restriction {
  ForestTriple on_cycle;  // almost forest triple of C_a
  ForestTriple on_rest;   // forest triple of G'
};

namespace detail {

inline VertexMask shift_vertices(VertexMask m, int by) { return by >= 0 ? m << by : m >> -by; }
inline EdgeMask shift_edges(EdgeMask m, int by) { return by >= 0 ? m << by : m >> -by; }

}  // namespace detail

/// Splits F ∈ FT(C_a + G') at the cut vertex a. The shared tree keeps
/// first(α, |cycle part|) with its root on the cycle side and
/// last(α, |G' part|) with root 1 on the G' side.
inline Restriction restrict_at_cut(const ForestTriple& f, int a) {
  const VertexMask cyc_v = (VertexMask{1} << a) - 1;
  const EdgeMask cyc_e = (EdgeMask{1} << a) - 1;
  Restriction out;
  for (const auto& t : f.trees) {
    if (t.contains(a)) {
      TreeTriple c{t.vertices & cyc_v, t.edges & cyc_e, {}, t.r};
      TreeTriple g{detail::shift_vertices(t.vertices & ~cyc_v, -(a - 1)) | 1, detail::shift_edges(t.edges & ~cyc_e, -a), {}, 1};
      c.alpha = split_first(t.alpha, c.size());
      g.alpha = split_last(t.alpha, g.size());
      out.on_cycle.trees.push_back(std::move(c));
      out.on_rest.trees.push_back(std::move(g));
    } else if (t.vertices & cyc_v) {
      out.on_cycle.trees.push_back(t);
    } else {
      out.on_rest.trees.push_back({detail::shift_vertices(t.vertices, -(a - 1)), detail::shift_edges(t.edges, -a), t.alpha, t.r});
    }
  }
  out.on_cycle.canonicalize();
  out.on_rest.canonicalize();
  return out;
}

/// F1 + F2: glues the tree of F1 through a to the min tree of F2. The seam
/// part is α_l^(i) + α_1^(i+1) - 1 because the two trees share vertex a.
inline ForestTriple combine_at_cut(const ForestTriple& on_cycle, const ForestTriple& on_rest, int a) {
  const TreeTriple* t = triple_containing(on_cycle, a);
  if (!t) throw domain_error("combine: no tree of the cycle part contains the cut vertex");
  const TreeTriple* mt = triple_containing(on_rest, 1);
  if (!mt) throw domain_error("combine: no tree of the attached part contains its vertex 1");
  if (mt->r != 1) throw domain_error("combine: attached min triple must have root index 1");
  std::vector<int> parts(t->alpha.parts().begin(), t->alpha.parts().end());
  parts.back() += mt->alpha.front() - 1;
  parts.insert(parts.end(), mt->alpha.parts().begin() + 1, mt->alpha.parts().end());
  if (t->r > parts.front()) throw domain_error("combine: root index exceeds the merged first part");
  std::vector<TreeTriple> trees;
  for (const auto& x : on_cycle.trees)
    if (&x != t) trees.push_back(x);
  trees.push_back({t->vertices | detail::shift_vertices(mt->vertices, a - 1), t->edges | detail::shift_edges(mt->edges, a),
                   Composition(std::move(parts)), t->r});
  for (const auto& x : on_rest.trees)
    if (&x != mt) trees.push_back({detail::shift_vertices(x.vertices, a - 1), detail::shift_edges(x.edges, a), x.alpha, x.r});
  return ForestTriple(std::move(trees));
}

/// First-preserving involution on FT(C_a + G') from one on FT(G'). When the
/// G' side is moved by inner, only the G' side changes; otherwise the trees
/// meeting the cycle go through the cycle+tree involution with U the G' part
/// of the tree through a.
inline Involution make_composed_involution(int a, const LabeledGraph& inner_graph, Involution inner) {
  LabeledGraph g = graph_sum(cycle_graph(a), inner_graph);
  return [a, g, inner = std::move(inner)](const ForestTriple& f) -> ForestTriple {
    Restriction parts = restrict_at_cut(f, a);
    ForestTriple moved = inner(parts.on_rest);
    if (moved != parts.on_rest) return combine_at_cut(parts.on_cycle, moved, a);
    const TreeTriple* t = triple_containing(f, a);
    const VertexMask cyc_v = (VertexMask{1} << a) - 1;
    const EdgeMask cyc_e = (EdgeMask{1} << a) - 1;
    CycleHost host{g, a, popcount(t->vertices & ~cyc_v) + 1, t->edges & ~cyc_e, t->vertices & ~cyc_v};
    CycleFT head = encode_cycle(host, f);
    return decode_cycle_into(host, cycle_tree_involution(head, a, host.k), f);
  };
}

// ---------------------------------------------------------------------------
// Table-driven first-preserving involution for small graphs: forest triples
// are grouped by (type, α₁ of the min triple, r of the min triple) and
// opposite signs are paired inside each group, non-unit positives first.

inline std::optional<Involution> make_tabulated_involution(const std::vector<ForestTriple>& domain) {
  using Key = std::tuple<Partition, int, int>;
  std::map<Key, std::array<std::vector<std::size_t>, 3>> groups;  // 0 neg, 1 non-unit pos, 2 unit pos
  for (std::size_t j = 0; j < domain.size(); ++j) {
    const auto& f = domain[j];
    const TreeTriple& t = min_triple(f);
    auto& g = groups[Key{triple_type(f), t.alpha.front(), t.r}];
    if (triple_sign(f) < 0) g[0].push_back(j);
    else if (!is_unit(f)) g[1].push_back(j);
    else g[2].push_back(j);
  }
  auto table = std::make_shared<std::map<ForestTriple, ForestTriple>>();
  for (auto& [key, g] : groups) {
    const auto& neg = g[0];
    if (neg.size() < g[1].size() || neg.size() > g[1].size() + g[2].size()) return std::nullopt;
    std::vector<std::size_t> pos = g[1];
    pos.insert(pos.end(), g[2].begin(), g[2].end());
    for (std::size_t j = 0; j < neg.size(); ++j) {
      (*table)[domain[neg[j]]] = domain[pos[j]];
      (*table)[domain[pos[j]]] = domain[neg[j]];
    }
  }
  return Involution([table](const ForestTriple& f) {
    auto it = table->find(f);
    return it == table->end() ? f : it->second;
  });
}

// ---------------------------------------------------------------------------
// Audit

struct AuditViolation {
  ForestTriple triple;
  std::string axiom;
};

struct InvolutionAuditReport {
  std::size_t domain_size = 0;
  std::size_t fixed_points = 0;
  std::vector<AuditViolation> violations;
  std::vector<ForestTriple> fixed;

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks φ∘φ = id, φ(F) ∈ domain, type preservation, sign reversal off the
/// fixed set, fixed points positive (and unit, with α₁ and r of the min
/// triple preserved, when first_preserving is set). Exceptions thrown by φ
/// are recorded as violations.
inline InvolutionAuditReport audit_involution(const std::vector<ForestTriple>& domain, const Involution& phi,
                                              bool first_preserving, std::size_t max_violations = 100) {
  InvolutionAuditReport rep;
  rep.domain_size = domain.size();
  std::set<ForestTriple> members(domain.begin(), domain.end());
  auto violate = [&](const ForestTriple& f, std::string axiom) {
    if (rep.violations.size() < max_violations) rep.violations.push_back({f, std::move(axiom)});
  };
  for (const auto& f : domain) {
    ForestTriple g;
    try {
      g = phi(f);
    } catch (const std::exception& ex) {
      violate(f, std::string("map raised: ") + ex.what());
      continue;
    }
    if (!members.count(g)) {
      violate(f, "image outside domain: " + to_string(g));
      continue;
    }
    try {
      if (phi(g) != f) violate(f, "not an involution");
    } catch (const std::exception& ex) {
      violate(f, std::string("map raised on image: ") + ex.what());
    }
    if (triple_type(g) != triple_type(f)) violate(f, "type not preserved");
    if (g == f) {
      ++rep.fixed_points;
      rep.fixed.push_back(f);
      if (triple_sign(f) != 1) violate(f, "fixed point with negative sign");
      if (first_preserving && !is_unit(f)) violate(f, "fixed point is not unit");
    } else if (triple_sign(g) == triple_sign(f)) {
      violate(f, "sign not reversed");
    }
    if (first_preserving) {
      const TreeTriple& a = min_triple(f);
      const TreeTriple& b = min_triple(g);
      if (a.alpha.front() != b.alpha.front() || a.r != b.r) violate(f, "first part or root of min triple changed");
    }
  }
  return rep;
}

}  // namespace csf
