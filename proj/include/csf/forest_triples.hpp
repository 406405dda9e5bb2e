#pragma once

// Tree and forest triples over NBC forests, their enumeration, and the signed
// elementary expansions X_G = Σ sign(F) e_type(F) and X_G^(i).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csf/algebra.hpp"
#include "csf/errors.hpp"
#include "csf/graph.hpp"

namespace csf {

struct TreeTriple {
  VertexMask vertices = 0;
  EdgeMask edges = 0;
  Composition alpha;
  int r = 1;

  [[nodiscard]] int size() const noexcept { return popcount(vertices); }
  [[nodiscard]] int min_vertex() const noexcept { return csf::min_vertex(vertices); }
  [[nodiscard]] bool contains(int v) const noexcept { return (vertices & vertex_bit(v)) != 0; }

  friend bool operator==(const TreeTriple&, const TreeTriple&) = default;
  friend auto operator<=>(const TreeTriple&, const TreeTriple&) = default;
};

/// Trees are kept sorted by minimum vertex, so the triple containing vertex 1
/// (when present) comes first.
struct ForestTriple {
  std::vector<TreeTriple> trees;

  ForestTriple() = default;
  explicit ForestTriple(std::vector<TreeTriple> t) : trees(std::move(t)) { canonicalize(); }

  void canonicalize() {
    std::sort(trees.begin(), trees.end(),
              [](const TreeTriple& x, const TreeTriple& y) { return x.min_vertex() < y.min_vertex(); });
  }

  [[nodiscard]] EdgeMask edges() const noexcept {
    EdgeMask m = 0;
    for (const auto& t : trees) m |= t.edges;
    return m;
  }
  [[nodiscard]] VertexMask vertices() const noexcept {
    VertexMask m = 0;
    for (const auto& t : trees) m |= t.vertices;
    return m;
  }

  friend bool operator==(const ForestTriple&, const ForestTriple&) = default;
  friend auto operator<=>(const ForestTriple&, const ForestTriple&) = default;
};

inline std::string to_string(const ForestTriple& f);

/// Partition formed by all composition parts.
inline Partition triple_type(const ForestTriple& f) {
  std::vector<int> parts;
  for (const auto& t : f.trees) parts.insert(parts.end(), t.alpha.parts().begin(), t.alpha.parts().end());
  return Partition(std::move(parts));
}

/// (-1)^{Σ (ℓ(α)-1)}.
inline int triple_sign(const ForestTriple& f) {
  std::size_t over = 0;
  for (const auto& t : f.trees) over += t.alpha.length() - 1;
  return over % 2 == 0 ? 1 : -1;
}

inline bool is_unit(const ForestTriple& f) {
  return std::all_of(f.trees.begin(), f.trees.end(), [](const TreeTriple& t) { return t.alpha.is_unit(); });
}

/// The triple whose tree contains vertex 1.
inline const TreeTriple& min_triple(const ForestTriple& f) {
  for (const auto& t : f.trees)
    if (t.contains(1)) return t;
  throw domain_error("min_triple: no tree contains vertex 1");
}

/// type(F) with the first part of the min triple's composition removed.
inline Partition type_prime(const ForestTriple& f) {
  std::vector<int> parts;
  for (const auto& t : f.trees) {
    auto p = t.alpha.parts();
    auto begin = p.begin();
    if (t.contains(1)) ++begin;
    parts.insert(parts.end(), begin, p.end());
  }
  return Partition(std::move(parts));
}

/// The triple containing vertex v, or nullptr.
inline const TreeTriple* triple_containing(const ForestTriple& f, int v) {
  for (const auto& t : f.trees)
    if (t.contains(v)) return &t;
  return nullptr;
}

/// Structural check: trees partition V(G), each tree is a component of an NBC
/// forest, compositions have the right sums and 1 <= r <= α₁.
inline bool is_forest_triple(const LabeledGraph& g, const ForestTriple& f, std::string* why = nullptr) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  VertexMask seen = 0;
  for (const auto& t : f.trees) {
    if (t.vertices == 0) return fail("empty tree");
    if (seen & t.vertices) return fail("trees overlap");
    seen |= t.vertices;
    if (t.alpha.sum() != t.size()) return fail("composition does not sum to tree size");
    if (t.r < 1 || t.r > t.alpha.front()) return fail("root index out of range");
    if ((g.vertices_of(t.edges) & ~t.vertices) != 0) return fail("tree edge leaves its vertex set");
  }
  if (seen != g.all_vertices()) return fail("trees do not cover the vertices");
  const EdgeMask s = f.edges();
  if (s & ~g.all_edges()) return fail("edge rank out of range");
  if (!is_nbc_forest(g, s)) return fail("edges do not form an NBC forest");
  auto comps = components(g, s);
  if (comps.size() != f.trees.size()) return fail("trees are not the forest components");
  ForestTriple sorted = f;
  sorted.canonicalize();
  for (std::size_t j = 0; j < comps.size(); ++j)
    if (comps[j].vertices != sorted.trees[j].vertices || comps[j].edges != sorted.trees[j].edges)
      return fail("trees are not the forest components");
  return true;
}

/// All (α, r) with α ⊨ s and 1 <= r <= α₁; there are 2^s - 1 of them.
inline std::vector<std::pair<Composition, int>> tree_options(int s) {
  std::vector<std::pair<Composition, int>> out;
  for_each_composition(s, [&](const Composition& c) {
    for (int r = 1; r <= c.front(); ++r) out.emplace_back(c, r);
  });
  return out;
}

/// Calls fn(F) for every forest triple built over an NBC forest S accepted by
/// forest_filter(S). The ForestTriple passed to fn is reused between calls.
template <class ForestFilter, class Fn>
void for_each_forest_triple_filtered(const LabeledGraph& g, ForestFilter&& forest_filter, Fn&& fn) {
  std::vector<std::vector<std::pair<Composition, int>>> options_by_size(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (int s = 1; s <= g.vertex_count(); ++s) options_by_size[static_cast<std::size_t>(s)] = tree_options(s);
  ForestTriple f;
  std::vector<std::size_t> odo;
  for_each_nbc_forest(g, [&](EdgeMask s) {
    if (!forest_filter(s)) return;
    auto comps = components(g, s);
    f.trees.assign(comps.size(), TreeTriple{});
    for (std::size_t j = 0; j < comps.size(); ++j) {
      f.trees[j].vertices = comps[j].vertices;
      f.trees[j].edges = comps[j].edges;
    }
    odo.assign(comps.size(), 0);
    auto opts = [&](std::size_t j) -> const auto& {
      return options_by_size[static_cast<std::size_t>(popcount(comps[j].vertices))];
    };
    while (true) {
      for (std::size_t j = 0; j < comps.size(); ++j) {
        const auto& [alpha, r] = opts(j)[odo[j]];
        f.trees[j].alpha = alpha;
        f.trees[j].r = r;
      }
      fn(static_cast<const ForestTriple&>(f));
      std::size_t j = 0;
      while (j < odo.size() && ++odo[j] == opts(j).size()) odo[j++] = 0;
      if (j == odo.size()) break;
    }
  });
}

template <class Fn>
void for_each_forest_triple(const LabeledGraph& g, Fn&& fn) {
  for_each_forest_triple_filtered(g, [](EdgeMask) { return true; }, std::forward<Fn>(fn));
}

inline constexpr std::size_t default_max_triples = 5'000'000;

/// Materialized FT(G); resource_error if more than max_triples would be stored.
inline std::vector<ForestTriple> enumerate_forest_triples(const LabeledGraph& g,
                                                          std::size_t max_triples = default_max_triples) {
  std::vector<ForestTriple> out;
  for_each_forest_triple(g, [&](const ForestTriple& f) {
    if (out.size() >= max_triples)
      throw resource_error("forest triple enumeration exceeds cap of " + std::to_string(max_triples));
    out.push_back(f);
  });
  return out;
}

/// |FT(G)| = Σ over NBC forests of Π_T (2^{|T|} - 1), without enumerating triples.
inline Integer count_forest_triples(const LabeledGraph& g) {
  Integer total = 0;
  for_each_nbc_forest(g, [&](EdgeMask s) {
    Integer prod = 1;
    for (const auto& c : components(g, s)) prod *= (Integer(1) << popcount(c.vertices)) - 1;
    total += prod;
  });
  return total;
}

template <class Range>
ESym signed_type_sum(const Range& triples) {
  ESym out;
  for (const ForestTriple& f : triples) out.add_term(triple_type(f), triple_sign(f));
  return out;
}

template <class Range>
ESym signed_type_prime_sum(const Range& triples) {
  ESym out;
  for (const ForestTriple& f : triples) out.add_term(type_prime(f), triple_sign(f));
  return out;
}

/// Σ sign·e_type over FT(G), visiting every forest triple.
inline ESym csf_forest_triples_literal(const LabeledGraph& g) {
  ESym out;
  for_each_forest_triple(g, [&](const ForestTriple& f) { out.add_term(triple_type(f), triple_sign(f)); });
  return out;
}

namespace detail {

/// Σ_{α ⊨ s} (-1)^{ℓ-1} α₁ e_α: the contribution of one tree of size s.
inline ESym tree_factor(int s) {
  ESym out;
  for_each_composition(s, [&](const Composition& c) {
    out.add_term(sort_to_partition(c), Integer(c.length() % 2 == 1 ? 1 : -1) * c.front());
  });
  return out;
}

/// Σ_{α ⊨ s, α₁ = i} (-1)^{ℓ-1} e_{α∖α₁}: the min tree's contribution to X^(i).
inline ESym min_tree_factor(int s, int i) {
  ESym out;
  if (i > s) return out;
  for_each_composition(s - i, [&](const Composition& rest) {
    out.add_term(sort_to_partition(rest), rest.length() % 2 == 0 ? 1 : -1);
  });
  return out;
}

/// NBC forests grouped by (size of the tree holding vertex 1, sorted sizes of the others).
inline std::map<std::vector<int>, Integer> forest_size_profile(const LabeledGraph& g) {
  std::map<std::vector<int>, Integer> profile;
  std::vector<int> key;
  for_each_nbc_forest(g, [&](EdgeMask s) {
    key.clear();
    for (const auto& c : components(g, s)) key.push_back(popcount(c.vertices));
    // components() sorts by min vertex, so key[0] is the tree of vertex 1.
    std::sort(key.begin() + 1, key.end(), std::greater<>());
    profile[key] += 1;
  });
  return profile;
}

}  // namespace detail

/// X_G as Σ sign·e_type over FT(G). Forests with the same tree-size profile
/// contribute identical products of per-tree factors, so each profile is
/// evaluated once; equals csf_forest_triples_literal.
inline ESym csf_forest_triples(const LabeledGraph& g) {
  if (g.vertex_count() == 0) return ESym::constant(1);
  std::map<int, ESym> factor;
  auto tf = [&](int s) -> const ESym& {
    auto it = factor.find(s);
    if (it == factor.end()) it = factor.emplace(s, detail::tree_factor(s)).first;
    return it->second;
  };
  ESym out;
  for (const auto& [key, count] : detail::forest_size_profile(g)) {
    ESym prod = ESym::constant(count);
    for (int s : key) prod = prod * tf(s);
    out += prod;
  }
  return out;
}

inline void check_i_range(const LabeledGraph& g, int i, const char* who) {
  if (i < 1 || i > g.vertex_count()) throw domain_error(std::string(who) + ": i out of range");
}

/// FT^(i)(G): α₁ of the min triple equals i and its root index is 1.
inline std::vector<ForestTriple> ft_i_members(const LabeledGraph& g, int i,
                                              std::size_t max_triples = default_max_triples) {
  std::vector<ForestTriple> out;
  if (i < 1 || i > g.vertex_count()) return out;
  for_each_forest_triple(g, [&](const ForestTriple& f) {
    const TreeTriple& t = f.trees.front();
    if (t.alpha.front() != i || t.r != 1) return;
    if (out.size() >= max_triples)
      throw resource_error("FT^(i) enumeration exceeds cap of " + std::to_string(max_triples));
    out.push_back(f);
  });
  return out;
}

namespace detail {

/// X^(i) for every i in 1..|G| from one pass over the NBC forests.
inline std::vector<ESym> pieces_from_profile(const LabeledGraph& g, const std::map<std::vector<int>, Integer>& profile) {
  std::map<int, ESym> factor;
  auto tf = [&](int s) -> const ESym& {
    auto it = factor.find(s);
    if (it == factor.end()) it = factor.emplace(s, tree_factor(s)).first;
    return it->second;
  };
  std::vector<ESym> out(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (const auto& [key, count] : profile) {
    if (key.empty()) continue;
    ESym rest = ESym::constant(count);
    for (std::size_t j = 1; j < key.size(); ++j) rest = rest * tf(key[j]);
    for (int i = 1; i <= key[0]; ++i) out[static_cast<std::size_t>(i)] += min_tree_factor(key[0], i) * rest;
  }
  return out;
}

}  // namespace detail

/// X_G^(i) = Σ_{F ∈ FT^(i)(G)} sign(F)·e_{type'(F)}, homogeneous of degree |G| - i.
inline ESym csf_i(const LabeledGraph& g, int i) {
  check_i_range(g, i, "csf_i");
  return detail::pieces_from_profile(g, detail::forest_size_profile(g))[static_cast<std::size_t>(i)];
}

/// Same as csf_i, by visiting FT^(i)(G) member by member.
inline ESym csf_i_literal(const LabeledGraph& g, int i) {
  check_i_range(g, i, "csf_i");
  ESym out;
  for_each_forest_triple(g, [&](const ForestTriple& f) {
    const TreeTriple& t = f.trees.front();
    if (t.alpha.front() == i && t.r == 1) out.add_term(type_prime(f), triple_sign(f));
  });
  return out;
}

/// All X_G^(i) for i = 1..|G| (index 0 unused).
inline std::vector<ESym> csf_i_all(const LabeledGraph& g) {
  return detail::pieces_from_profile(g, detail::forest_size_profile(g));
}

/// Σ_i e_i · i · X^(i).
inline ESym assemble_from_pieces(const std::vector<ESym>& pieces) {
  ESym out;
  for (std::size_t i = 1; i < pieces.size(); ++i)
    out += e(static_cast<int>(i)) * pieces[i] * Integer(static_cast<long long>(i));
  return out;
}

// ---------------------------------------------------------------------------
// FT'(A + U): the tree holding the cut vertex |A| must contain every edge of
// U and end its composition with a part of size at least |U|.

struct CutAttachment {
  LabeledGraph graph;     // A + U
  int cut_vertex = 0;     // |A|
  int k = 0;              // |U|
  EdgeMask u_edges = 0;   // ranks of U's edges inside A + U
};

inline CutAttachment attach_tree(const LabeledGraph& a, const LabeledGraph& u) {
  if (u.vertex_count() < 1) throw domain_error("attach_tree: U must have at least one vertex");
  if (u.edge_count() != u.vertex_count() - 1 || !is_acyclic(u, u.all_edges()))
    throw domain_error("attach_tree: U must be a tree");
  CutAttachment out{graph_sum(a, u), a.vertex_count(), u.vertex_count(), 0};
  for (int j = a.edge_count(); j < out.graph.edge_count(); ++j) out.u_edges |= edge_bit(j);
  return out;
}

inline bool is_ft_prime(const CutAttachment& host, const ForestTriple& f) {
  const TreeTriple* t = triple_containing(f, host.cut_vertex);
  return t && (t->edges & host.u_edges) == host.u_edges && t->alpha.back() >= host.k;
}

template <class Fn>
void for_each_ft_prime(const CutAttachment& host, Fn&& fn) {
  for_each_forest_triple_filtered(
      host.graph, [&](EdgeMask s) { return (s & host.u_edges) == host.u_edges; },
      [&](const ForestTriple& f) {
        if (is_ft_prime(host, f)) fn(f);
      });
}

/// Members of FT'(A+U) (optionally FT'^(i)).
inline std::vector<ForestTriple> ft_prime_members(const CutAttachment& host, std::optional<int> i = std::nullopt,
                                                  std::size_t max_triples = default_max_triples) {
  std::vector<ForestTriple> out;
  for_each_ft_prime(host, [&](const ForestTriple& f) {
    if (i) {
      const TreeTriple& t = f.trees.front();
      if (t.alpha.front() != *i || t.r != 1) return;
    }
    if (out.size() >= max_triples)
      throw resource_error("FT' enumeration exceeds cap of " + std::to_string(max_triples));
    out.push_back(f);
  });
  return out;
}

inline std::vector<ForestTriple> ft_prime_members(int a, const LabeledGraph& u, std::optional<int> i = std::nullopt,
                                                  std::size_t max_triples = default_max_triples) {
  return ft_prime_members(attach_tree(cycle_graph(a), u), i, max_triples);
}

inline std::string to_string(const ForestTriple& f) {
  std::string out = "{";
  for (std::size_t j = 0; j < f.trees.size(); ++j) {
    const auto& t = f.trees[j];
    if (j) out += ", ";
    out += "([";
    bool first = true;
    for (VertexMask m = t.vertices; m; m &= m - 1) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(std::countr_zero(m) + 1);
    }
    out += "], " + t.alpha.to_string() + ", " + std::to_string(t.r) + ")";
  }
  return out + "}";
}

}  // namespace csf
