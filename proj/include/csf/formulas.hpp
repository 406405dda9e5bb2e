#pragma once

// Closed-form elementary expansions: cycles, the cycle-attachment factors
// B_{a,k} and B_{a,k}^(i), two cycles glued at a vertex, and the right-to-left
// evaluation of cycle/clique chains.

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "csf/algebra.hpp"
#include "csf/errors.hpp"
#include "csf/forest_triples.hpp"
#include "csf/graph.hpp"

namespace csf {

namespace detail {

/// Π_{j >= from} (α_j - 1), 0-based index.
inline Integer tail_product(const Composition& alpha, std::size_t from) {
  Integer p = 1;
  for (std::size_t j = from; j < alpha.length(); ++j) p *= alpha[j] - 1;
  return p;
}

}  // namespace detail

/// X_{C_a} = Σ_{α ⊨ a} α₁ (α₁-1)(α₂-1)...(α_l-1) e_sort(α).
inline ESym cycle_csf(int a) {
  if (a < 2) throw domain_error("cycle_csf: a must be at least 2");
  ESym out;
  for_each_composition(a, [&](const Composition& alpha) {
    out.add_term(sort_to_partition(alpha), Integer(alpha.front()) * detail::tail_product(alpha, 0));
  });
  return out;
}

/// X^(i)_{C_a} = Σ_{α ⊨ a-i} (i-1)(α₁-1)...(α_l-1) e_sort(α).
inline ESym cycle_csf_i(int a, int i) {
  if (a < 2) throw domain_error("cycle_csf_i: a must be at least 2");
  if (i < 1 || i > a) throw domain_error("cycle_csf_i: i out of range");
  ESym out;
  for_each_composition(a - i, [&](const Composition& alpha) {
    out.add_term(sort_to_partition(alpha), Integer(i - 1) * detail::tail_product(alpha, 0));
  });
  return out;
}

/// B_{a,k}: sum over α ⊨ a+k with ℓ(α) >= 2 and α₁ <= k <= α₂ of
/// (α₂-α₁+1)(α₁+α₂-k-1)(α₃-1)...(α_l-1) e_sort(α₁-1, α₂, ..., α_l).
inline ESym b_formula(int a, int k) {
  if (a < 2) throw domain_error("b_formula: a must be at least 2");
  if (k < 1) throw domain_error("b_formula: k must be at least 1");
  ESym out;
  for_each_composition(a + k, [&](const Composition& alpha) {
    if (alpha.length() < 2 || alpha[0] > k || alpha[1] < k) return;
    Integer c = Integer(alpha[1] - alpha[0] + 1) * (alpha[0] + alpha[1] - k - 1) * detail::tail_product(alpha, 2);
    std::vector<int> key(alpha.parts().begin(), alpha.parts().end());
    key[0] -= 1;
    out.add_term(sort_to_partition(key), c);
  });
  return out;
}

/// B^(i)_{a,k}, for 1 <= i <= a+k-1.
inline ESym b_i_formula(int a, int k, int i) {
  if (a < 2) throw domain_error("b_i_formula: a must be at least 2");
  if (k < 1) throw domain_error("b_i_formula: k must be at least 1");
  if (i < 1 || i > a + k - 1) throw domain_error("b_i_formula: i out of range");
  ESym out;
  if (i <= k - 1) {
    for_each_composition(a + k - i - 1, [&](const Composition& alpha) {
      if (alpha.front() < k) return;
      out.add_term(sort_to_partition(alpha), Integer(k - i) * detail::tail_product(alpha, 1));
    });
  } else {
    for_each_composition(a + k - i, [&](const Composition& alpha) {
      if (alpha.front() > k) return;
      std::vector<int> key(alpha.parts().begin(), alpha.parts().end());
      key[0] -= 1;
      out.add_term(sort_to_partition(key), Integer(i - k) * detail::tail_product(alpha, 1));
    });
  }
  return out;
}

/// X_{C_a + C_b} in closed form.
inline ESym two_cycle_csf(int a, int b) {
  if (a < 2 || b < 2) throw domain_error("two_cycle_csf: cycle sizes must be at least 2");
  ESym out;
  for_each_composition(a, [&](const Composition& alpha) {
    const Integer ca = detail::tail_product(alpha, 0);
    if (ca == 0) return;
    const int a1 = alpha.front();
    for_each_composition(b + a1, [&](const Composition& beta) {
      if (beta.length() < 2 || beta[0] > a1 || beta[1] < a1) return;
      Integer c = ca * (beta[1] - beta[0] + 1) * (beta[0] + beta[1] - a1 - 1) * detail::tail_product(beta, 2);
      std::vector<int> key(alpha.parts().begin() + 1, alpha.parts().end());
      key.insert(key.end(), beta.parts().begin() + 1, beta.parts().end());
      key.push_back(beta[0] - 1);
      out.add_term(sort_to_partition(key), c);
    });
  });
  return out;
}

/// Σ_k xk[k] · B_{a,k}; xk[0] is ignored.
inline ESym attach_cycle_csf(int a, const std::vector<ESym>& xk) {
  ESym out;
  for (std::size_t k = 1; k < xk.size(); ++k)
    if (!xk[k].is_zero()) out += xk[k] * b_formula(a, static_cast<int>(k));
  return out;
}

/// Σ_k xk[k] · B^(i)_{a,k}; terms with i > a+k-1 vanish (no such forest triples).
inline ESym attach_cycle_csf_i(int a, const std::vector<ESym>& xk, int i) {
  if (i < 1) throw domain_error("attach_cycle_csf_i: i must be positive");
  ESym out;
  for (std::size_t k = 1; k < xk.size(); ++k) {
    if (xk[k].is_zero() || i > a + static_cast<int>(k) - 1) continue;
    out += xk[k] * b_i_formula(a, static_cast<int>(k), i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chains

inline constexpr int default_direct_vertex_cap = 12;

/// Memo of X^(k) pieces per chain suffix, keyed by its text form.
class ChainCache {
 public:
  const std::vector<ESym>* find(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = pieces_.find(key);
    return it == pieces_.end() ? nullptr : &it->second;
  }
  const std::vector<ESym>& insert(const std::string& key, std::vector<ESym> value) {
    std::lock_guard lock(mu_);
    return pieces_.emplace(key, std::move(value)).first->second;
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::vector<ESym>> pieces_;
};

/// X^(i) for i = 1..|chain| (index 0 unused), folding right to left. The
/// last segment and every clique segment are enumerated directly on the
/// current suffix; each cycle segment applies the B^(i) transfer.
inline std::vector<ESym> chain_csf_pieces(const ChainSpec& spec, int direct_vertex_cap = default_direct_vertex_cap,
                                          ChainCache* cache = nullptr) {
  validate_chain(spec);
  std::vector<ESym> pieces;
  for (std::size_t start = spec.size(); start-- > 0;) {
    ChainSpec suffix(spec.begin() + static_cast<std::ptrdiff_t>(start), spec.end());
    const std::string key = to_string(suffix);
    if (cache) {
      if (const auto* hit = cache->find(key)) {
        pieces = *hit;
        continue;
      }
    }
    const ChainSegment& seg = spec[start];
    const bool last = start + 1 == spec.size();
    if (last || seg.kind == SegmentKind::clique) {
      const int n = chain_vertex_count(suffix);
      if (n > direct_vertex_cap)
        throw resource_error("chain: direct enumeration of " + key + " needs " + std::to_string(n) +
                             " vertices, cap is " + std::to_string(direct_vertex_cap));
      pieces = csf_i_all(chain_graph(suffix));
    } else {
      const int a = seg.size;
      const int n = static_cast<int>(pieces.size()) - 1 + a - 1;
      std::vector<ESym> next(static_cast<std::size_t>(n) + 1);
      for (int i = 1; i <= n; ++i) next[static_cast<std::size_t>(i)] = attach_cycle_csf_i(a, pieces, i);
      pieces = std::move(next);
    }
    if (cache) cache->insert(key, pieces);
  }
  return pieces;
}

inline ESym chain_csf_i(const ChainSpec& spec, int i, int direct_vertex_cap = default_direct_vertex_cap) {
  auto pieces = chain_csf_pieces(spec, direct_vertex_cap);
  if (i < 1 || i >= static_cast<int>(pieces.size())) throw domain_error("chain_csf_i: i out of range");
  return pieces[static_cast<std::size_t>(i)];
}

inline ESym chain_csf(const ChainSpec& spec, int direct_vertex_cap = default_direct_vertex_cap,
                      ChainCache* cache = nullptr) {
  return assemble_from_pieces(chain_csf_pieces(spec, direct_vertex_cap, cache));
}

// ---------------------------------------------------------------------------
// Attachment factor for an arbitrary graph A at its highest vertex
// (experimental: no positivity claim outside A = C_a).

inline ESym generic_b(const LabeledGraph& a, const LabeledGraph& u) {
  CutAttachment host = attach_tree(a, u);
  ESym out;
  for_each_ft_prime(host, [&](const ForestTriple& f) { out.add_term(triple_type(f), triple_sign(f)); });
  return out;
}

inline ESym generic_b_i(const LabeledGraph& a, const LabeledGraph& u, int i) {
  CutAttachment host = attach_tree(a, u);
  ESym out;
  for_each_ft_prime(host, [&](const ForestTriple& f) {
    const TreeTriple& t = f.trees.front();
    if (t.alpha.front() == i && t.r == 1) out.add_term(type_prime(f), triple_sign(f));
  });
  return out;
}

/// Σ_k X^(k)_{G'} · B_{A,k}, using a path for U_k.
inline ESym attach_generic_csf(const LabeledGraph& a, const LabeledGraph& inner) {
  ESym out;
  for (int k = 1; k <= inner.vertex_count(); ++k) {
    ESym xk = csf_i(inner, k);
    if (!xk.is_zero()) out += xk * generic_b(a, path_graph(k));
  }
  return out;
}

}  // namespace csf
