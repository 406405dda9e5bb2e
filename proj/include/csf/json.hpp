#pragma once

// JSON views of expansions and audit reports (nlohmann::ordered_json, so key
// order follows insertion and output is byte-stable).

#include <cstdint>
#include <limits>

#include <json.hpp>

#include "csf/algebra.hpp"
#include "csf/forest_triples.hpp"
#include "csf/involutions.hpp"

namespace csf {

using Json = nlohmann::ordered_json;

/// Integers that fit in int64 become JSON numbers, larger ones strings.
inline Json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

/// {"4,2": 18, ...} in lexicographically descending partition order.
template <class Basis>
Json terms_to_json(const SymExpansion<Basis>& x) {
  Json out = Json::object();
  for (const auto& [lambda, c] : x.terms()) out[lambda.to_string()] = integer_to_json(c);
  return out;
}

inline Json expansion_to_json(const ESym& x, int degree) {
  Json out;
  out["degree"] = degree;
  out["terms"] = terms_to_json(x);
  out["e_positive"] = x.is_nonnegative();
  return out;
}

inline Json audit_to_json(const InvolutionAuditReport& rep) {
  Json out;
  out["domain_size"] = rep.domain_size;
  out["fixed_points"] = rep.fixed_points;
  Json violations = Json::array();
  for (const auto& v : rep.violations) violations.push_back(Json{{"triple", to_string(v.triple)}, {"axiom", v.axiom}});
  out["violations"] = std::move(violations);
  return out;
}

}  // namespace csf
