#pragma once

#include <stdexcept>
#include <string>

namespace csf {

/// Precondition on an argument was violated (bad size, index out of range, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured cap (vertex count, materialized domain size) would be exceeded.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal invariant broken; indicates a bug rather than bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

[[noreturn]] inline void fail_internal(const std::string& what) { throw internal_error(what); }

}  // namespace detail
}  // namespace csf
