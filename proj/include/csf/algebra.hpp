#pragma once

// Compositions, partitions, and exact linear combinations over the
// elementary (and monomial) symmetric function bases.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "csf/errors.hpp"

namespace csf {

using Integer = boost::multiprecision::cpp_int;

class Partition;

/// Ordered tuple of positive integers. The empty composition is the
/// unique composition of 0.
class Composition {
 public:
  Composition() = default;
  Composition(std::initializer_list<int> parts) : parts_(parts) { validate(); }
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }

  [[nodiscard]] std::size_t length() const noexcept { return parts_.size(); }
  [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
  [[nodiscard]] int sum() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  [[nodiscard]] int operator[](std::size_t i) const { return parts_.at(i); }
  [[nodiscard]] int front() const { return parts_.at(0); }
  [[nodiscard]] int back() const { return parts_.at(parts_.size() - 1); }
  [[nodiscard]] bool is_unit() const noexcept { return parts_.size() == 1; }
  [[nodiscard]] std::span<const int> parts() const noexcept { return parts_; }

  /// The composition with part `i` (0-based) removed.
  [[nodiscard]] Composition without(std::size_t i) const {
    if (i >= parts_.size()) throw domain_error("Composition::without: index out of range");
    std::vector<int> out;
    out.reserve(parts_.size() - 1);
    for (std::size_t j = 0; j < parts_.size(); ++j)
      if (j != i) out.push_back(parts_[j]);
    return Composition(std::move(out));
  }
  [[nodiscard]] Composition without_first() const { return without(0); }
  [[nodiscard]] Composition without_last() const { return without(parts_.size() - 1); }

  /// Concatenation α·β.
  [[nodiscard]] Composition concat(const Composition& other) const {
    std::vector<int> out(parts_);
    out.insert(out.end(), other.parts_.begin(), other.parts_.end());
    return Composition(std::move(out));
  }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
  }

 private:
  void validate() const {
    for (int p : parts_)
      if (p < 1) throw domain_error("Composition: parts must be positive");
  }

  std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const Composition& c) { return os << c.to_string(); }

/// Weakly decreasing tuple of positive integers.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Sorts `parts` into non-increasing order and drops zero entries (e_0 = 1).
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 0) throw domain_error("Partition: negative part");
    std::erase(parts_, 0);
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  [[nodiscard]] std::size_t length() const noexcept { return parts_.size(); }
  [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
  [[nodiscard]] int sum() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  [[nodiscard]] int operator[](std::size_t i) const { return parts_.at(i); }
  [[nodiscard]] std::span<const int> parts() const noexcept { return parts_; }

  /// Multiset union, i.e. the key of e_λ · e_μ.
  [[nodiscard]] Partition merged(const Partition& other) const {
    std::vector<int> out(parts_);
    out.insert(out.end(), other.parts_.begin(), other.parts_.end());
    return Partition(std::move(out));
  }

  /// λ' with λ'_j = #{i : λ_i ≥ j}.
  [[nodiscard]] Partition conjugate() const {
    std::vector<int> out(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) ++out[static_cast<std::size_t>(j)];
    return Partition(std::move(out));
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

  /// Comma-joined parts, e.g. "4,2"; the empty partition is "".
  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  static Partition parse(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw domain_error("Partition::parse: empty part in '" + text + "'");
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw domain_error("Partition::parse: bad part '" + item + "'");
      parts.push_back(v);
    }
    return Partition(std::move(parts));
  }

 private:
  std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << '(' << p.to_string() << ')'; }

/// sort(α): parts of α in non-increasing order.
inline Partition sort_to_partition(const Composition& alpha) {
  return Partition(std::vector<int>(alpha.parts().begin(), alpha.parts().end()));
}

/// Builds a partition from raw integers that may include zero pseudo-parts
/// (from expressions like α₁ − 1); zeros are dropped.
inline Partition sort_to_partition(std::span<const int> raw) { return Partition(std::vector<int>(raw.begin(), raw.end())); }

/// Visits every composition of n exactly once, in lexicographic order of the
/// part sequence; n = 0 yields the empty composition.
template <class Fn>
void for_each_composition(int n, Fn&& fn) {
  if (n < 0) throw domain_error("compositions_of: n must be non-negative");
  if (n == 0) {
    fn(Composition{});
    return;
  }
  // Compositions of n <-> subsets of the n-1 internal cut points. Walking
  // lexicographically: start from all ones and step like an odometer.
  std::vector<int> parts(static_cast<std::size_t>(n), 1);
  while (true) {
    fn(Composition(parts));
    // Lexicographic successor: drop the last part, add it to the new last.
    if (parts.size() == 1) break;
    int tail = parts.back();
    parts.pop_back();
    parts.back() += 1;
    for (int i = 1; i < tail; ++i) parts.push_back(1);
  }
}

inline std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  for_each_composition(n, [&](const Composition& c) { out.push_back(c); });
  return out;
}

namespace detail {

inline void check_split_range(const Composition& alpha, int j, const char* who) {
  if (j < 1 || j > alpha.sum()) throw domain_error(std::string(who) + ": j out of range");
}

}  // namespace detail

/// last(α, j): the unique composition (k, α_{i+1}, …, α_l) of j with 1 ≤ k ≤ α_i.
inline Composition split_last(const Composition& alpha, int j) {
  detail::check_split_range(alpha, j, "split_last");
  std::vector<int> out;
  int remaining = j;
  for (std::size_t idx = alpha.length(); idx-- > 0;) {
    int part = alpha[idx];
    if (part >= remaining) {
      out.push_back(remaining);
      break;
    }
    out.push_back(part);
    remaining -= part;
  }
  std::reverse(out.begin(), out.end());
  return Composition(std::move(out));
}

/// first(α, j): the unique composition (α_1, …, α_{i-1}, k) of j with 1 ≤ k ≤ α_i.
inline Composition split_first(const Composition& alpha, int j) {
  detail::check_split_range(alpha, j, "split_first");
  std::vector<int> out;
  int remaining = j;
  for (std::size_t idx = 0; idx < alpha.length(); ++idx) {
    int part = alpha[idx];
    if (part >= remaining) {
      out.push_back(remaining);
      break;
    }
    out.push_back(part);
    remaining -= part;
  }
  return Composition(std::move(out));
}

struct ElementaryBasis {
  static constexpr const char* symbol = "e";
};
struct MonomialBasis {
  static constexpr const char* symbol = "m";
};

/// Finite exact-integer combination Σ c_λ b_λ over a partition-indexed basis.
/// Zero coefficients are never stored. Terms iterate in lexicographically
/// descending partition order.
template <class Basis>
class SymExpansion {
 public:
  using TermMap = std::map<Partition, Integer, std::greater<Partition>>;

  SymExpansion() = default;

  static SymExpansion basis(const Partition& lambda, Integer coeff = 1) {
    SymExpansion out;
    out.add_term(lambda, std::move(coeff));
    return out;
  }
  static SymExpansion constant(Integer c) { return basis(Partition{}, std::move(c)); }

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

  /// Common weight of all stored partitions; -1 for the zero element.
  [[nodiscard]] int degree() const noexcept { return terms_.empty() ? -1 : terms_.begin()->first.sum(); }

  [[nodiscard]] Integer coefficient(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const Partition& lambda, const Integer& coeff) {
    if (coeff == 0) return;
    if (!terms_.empty() && terms_.begin()->first.sum() != lambda.sum())
      throw domain_error("SymExpansion: adding terms of different degree");
    auto [it, inserted] = terms_.try_emplace(lambda, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SymExpansion& operator+=(const SymExpansion& other) {
    if (!is_zero() && !other.is_zero() && degree() != other.degree())
      throw domain_error("SymExpansion: degree mismatch in addition");
    for (const auto& [lambda, c] : other.terms_) add_term(lambda, c);
    return *this;
  }
  SymExpansion& operator-=(const SymExpansion& other) {
    if (!is_zero() && !other.is_zero() && degree() != other.degree())
      throw domain_error("SymExpansion: degree mismatch in subtraction");
    for (const auto& [lambda, c] : other.terms_) add_term(lambda, -c);
    return *this;
  }
  SymExpansion& operator*=(const Integer& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [lambda, c] : terms_) c *= k;
    return *this;
  }

  friend SymExpansion operator+(SymExpansion a, const SymExpansion& b) { return a += b; }
  friend SymExpansion operator-(SymExpansion a, const SymExpansion& b) { return a -= b; }
  friend SymExpansion operator*(SymExpansion a, const Integer& k) { return a *= k; }
  friend SymExpansion operator*(const Integer& k, SymExpansion a) { return a *= k; }
  friend SymExpansion operator-(SymExpansion a) { return a *= Integer(-1); }
  friend bool operator==(const SymExpansion&, const SymExpansion&) = default;

  /// True when no stored coefficient is negative.
  [[nodiscard]] bool is_nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
  }

  /// Human-readable form, e.g. "30e_{6} + 18e_{4,2}".
  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [lambda, c] : terms_) {
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (lambda.empty()) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag;
      os << Basis::symbol << "_{" << lambda.to_string() << '}';
    }
    return os.str();
  }

 private:
  TermMap terms_;
};

using ESym = SymExpansion<ElementaryBasis>;
using MonomialSym = SymExpansion<MonomialBasis>;

template <class Basis>
std::ostream& operator<<(std::ostream& os, const SymExpansion<Basis>& x) {
  return os << x.to_string();
}

/// e_λ
inline ESym e(const Partition& lambda) { return ESym::basis(lambda); }
/// e_(k); e_(0) is the constant 1.
inline ESym e(int k) { return ESym::basis(Partition(std::vector<int>{k})); }

/// Product in the e-basis: e_λ · e_μ = e_{sort(λ·μ)}.
inline ESym operator*(const ESym& a, const ESym& b) {
  ESym out;
  for (const auto& [la, ca] : a.terms())
    for (const auto& [lb, cb] : b.terms()) out.add_term(la.merged(lb), ca * cb);
  return out;
}

inline ESym& operator*=(ESym& a, const ESym& b) { return a = a * b; }

}  // namespace csf
