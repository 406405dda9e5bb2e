#pragma once

// Ground truth from proper colorings, in the monomial basis, plus the
// e-to-monomial change of basis used to compare against e-expansions.

#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "csf/algebra.hpp"
#include "csf/errors.hpp"
#include "csf/graph.hpp"

namespace csf {

inline constexpr int default_oracle_cap = 12;
inline constexpr int default_bruteforce_cap = 8;

/// All partitions of n, lexicographically descending.
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw domain_error("partitions_of: negative n");
  std::vector<Partition> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(rest - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

namespace detail {

inline Integer factorial(int n) {
  Integer f = 1;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

/// Π_i m_i(λ)! where m_i is the multiplicity of part i.
inline Integer multiplicity_factorial(const Partition& lambda) {
  std::map<int, int> mult;
  for (int p : lambda.parts()) ++mult[p];
  Integer out = 1;
  for (auto [p, m] : mult) out *= factorial(m);
  return out;
}

inline void check_oracle_cap(const LabeledGraph& g, int cap, const char* who) {
  if (g.vertex_count() > cap)
    throw resource_error(std::string(who) + ": " + std::to_string(g.vertex_count()) + " vertices exceeds cap " +
                         std::to_string(cap));
}

}  // namespace detail

/// X_G in the monomial basis. The coefficient of m_λ counts proper colorings
/// whose j-th color class has λ_j vertices, which is the number of partitions
/// of V into independent sets of sizes λ times Π m_i(λ)!.
inline MonomialSym csf_coloring_oracle(const LabeledGraph& g, int cap = default_oracle_cap) {
  detail::check_oracle_cap(g, cap, "csf_coloring_oracle");
  const int n = g.vertex_count();
  MonomialSym out;
  if (n == 0) return MonomialSym::constant(1);
  const auto adj = g.adjacency();
  std::vector<VertexMask> blocks;
  std::map<Partition, Integer, std::greater<Partition>> tally;
  std::function<void(int)> place = [&](int v) {
    if (v > n) {
      std::vector<int> sizes;
      for (VertexMask b : blocks) sizes.push_back(popcount(b));
      tally[Partition(sizes)] += 1;
      return;
    }
    const VertexMask nbrs = adj[static_cast<std::size_t>(v)];
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (blocks[j] & nbrs) continue;
      blocks[j] |= vertex_bit(v);
      place(v + 1);
      blocks[j] &= ~vertex_bit(v);
    }
    blocks.push_back(vertex_bit(v));
    place(v + 1);
    blocks.pop_back();
  };
  place(1);
  for (auto& [lambda, count] : tally) out.add_term(lambda, count * detail::multiplicity_factorial(lambda));
  return out;
}

/// Independent n^n sweep over all colorings with n colors. Each monomial
/// pattern λ arises from n! / (Π m_i(λ)! (n-ℓ)!) color assignments.
inline MonomialSym csf_coloring_bruteforce(const LabeledGraph& g, int cap = default_bruteforce_cap) {
  detail::check_oracle_cap(g, cap, "csf_coloring_bruteforce");
  const int n = g.vertex_count();
  if (n == 0) return MonomialSym::constant(1);
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  std::map<Partition, Integer, std::greater<Partition>> tally;
  const auto& edges = g.edges();
  for (;;) {
    bool proper = true;
    for (const auto& ed : edges)
      if (color[static_cast<std::size_t>(ed.u - 1)] == color[static_cast<std::size_t>(ed.v - 1)]) {
        proper = false;
        break;
      }
    if (proper) {
      std::vector<int> counts(static_cast<std::size_t>(n), 0);
      for (int c : color) ++counts[static_cast<std::size_t>(c)];
      tally[Partition(counts)] += 1;
    }
    int j = 0;
    while (j < n && ++color[static_cast<std::size_t>(j)] == n) color[static_cast<std::size_t>(j++)] = 0;
    if (j == n) break;
  }
  MonomialSym out;
  for (auto& [lambda, count] : tally) {
    Integer arrangements = detail::factorial(n) /
                           (detail::multiplicity_factorial(lambda) * detail::factorial(n - static_cast<int>(lambda.length())));
    if (count % arrangements != 0) detail::fail_internal("csf_coloring_bruteforce: tally not divisible");
    out.add_term(lambda, count / arrangements);
  }
  return out;
}

namespace detail {

/// Number of 0-1 matrices with row sums `rows` and column sums `cols`.
class ZeroOneCounter {
 public:
  Integer count(const Partition& rows, const Partition& cols) {
    rows_ = std::vector<int>(rows.parts().begin(), rows.parts().end());
    memo_.clear();
    std::vector<int> demand(cols.parts().begin(), cols.parts().end());
    return rec(0, demand);
  }

 private:
  static Integer binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer b = 1;
    for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
    return b;
  }

  // Columns are grouped by remaining demand; a row picks c_d columns from the
  // group with demand d in C(n_d, c_d) ways.
  Integer rec(std::size_t row, std::vector<int>& demand) {
    if (row == rows_.size()) {
      for (int d : demand)
        if (d) return 0;
      return 1;
    }
    std::sort(demand.begin(), demand.end(), std::greater<>());
    while (!demand.empty() && demand.back() == 0) demand.pop_back();
    auto key = std::make_pair(row, demand);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::pair<int, int>> groups;  // (demand, columns)
    for (int d : demand) {
      if (!groups.empty() && groups.back().first == d)
        ++groups.back().second;
      else
        groups.emplace_back(d, 1);
    }
    Integer total = 0;
    std::vector<int> take(groups.size(), 0);
    std::function<void(std::size_t, int, Integer)> choose = [&](std::size_t gi, int left, Integer ways) {
      if (gi == groups.size()) {
        if (left) return;
        std::vector<int> next;
        for (std::size_t j = 0; j < groups.size(); ++j) {
          for (int c = 0; c < groups[j].second; ++c) next.push_back(groups[j].first - (c < take[j] ? 1 : 0));
        }
        total += ways * rec(row + 1, next);
        return;
      }
      for (int c = 0; c <= std::min(left, groups[gi].second); ++c) {
        take[gi] = c;
        choose(gi + 1, left - c, ways * binom(groups[gi].second, c));
      }
      take[gi] = 0;
    };
    choose(0, rows_[row], 1);
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::vector<int> rows_;
  std::map<std::pair<std::size_t, std::vector<int>>, Integer> memo_;
};

/// Monomial expansion of a single e_μ, cached.
inline const MonomialSym& e_basis_in_monomials(const Partition& mu) {
  static std::mutex mu_lock;
  static std::map<Partition, MonomialSym> cache;
  std::lock_guard lock(mu_lock);
  if (auto it = cache.find(mu); it != cache.end()) return it->second;
  MonomialSym out;
  ZeroOneCounter counter;
  for (const auto& lambda : partitions_of(mu.sum())) {
    Integer c = counter.count(mu, lambda);
    if (c != 0) out.add_term(lambda, c);
  }
  return cache.emplace(mu, std::move(out)).first->second;
}

}  // namespace detail

/// Expands x in the monomial basis over nvars variables; patterns with more
/// than nvars parts are dropped.
inline MonomialSym e_to_monomial(const ESym& x, int nvars) {
  if (x.degree() > nvars) throw domain_error("e_to_monomial: fewer variables than the degree");
  MonomialSym out;
  for (const auto& [mu, c] : x.terms()) {
    for (const auto& [lambda, d] : detail::e_basis_in_monomials(mu).terms()) {
      if (static_cast<int>(lambda.length()) <= nvars) out.add_term(lambda, c * d);
    }
  }
  return out;
}

/// Inverse change of basis for a homogeneous symmetric function: peel off the
/// lexicographically largest monomial λ using e_{λ'} = m_λ + (smaller terms).
inline ESym monomial_to_e(MonomialSym x) {
  ESym out;
  while (!x.is_zero()) {
    const auto& [lambda, c] = *x.terms().begin();
    const Partition mu = lambda.conjugate();
    const Integer coeff = c;
    out.add_term(mu, coeff);
    MonomialSym step = detail::e_basis_in_monomials(mu);
    step *= coeff;
    x -= step;
  }
  return out;
}

/// e-expansion of X_G from the coloring oracle.
inline ESym csf_oracle_e(const LabeledGraph& g, int cap = default_oracle_cap) {
  return monomial_to_e(csf_coloring_oracle(g, cap));
}

inline bool check_equal(const ESym& x, const LabeledGraph& g, int cap = default_oracle_cap) {
  return e_to_monomial(x, g.vertex_count()) == csf_coloring_oracle(g, cap);
}

struct PositivityReport {
  bool positive = true;
  std::vector<std::pair<Partition, Integer>> negative_terms;
};

inline PositivityReport positivity(const ESym& x) {
  PositivityReport r;
  for (const auto& [lambda, c] : x.terms())
    if (c < 0) r.negative_terms.emplace_back(lambda, c);
  r.positive = r.negative_terms.empty();
  return r;
}

}  // namespace csf
