#pragma once

#include <stdexcept>
#include <string>

namespace randmult {

// Bad parameter value (k <= 0, sigma outside its range, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query outside the domain covered by a precomputed table.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A memory/time guard refused the computation.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Documented restriction of the implementation (e.g. composite modulus).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A self-check failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace randmult
