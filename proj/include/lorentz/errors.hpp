#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

/// Precondition violation at the API boundary (bad index, θ out of range, ...).
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index arithmetic would leave the 64-bit range.
class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A search or selection loop hit its configured growth bound.
class cutoff_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A norm evaluation produced a non-finite value.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw lorentz::invalid_argument(msg);
}

}  // namespace detail
}  // namespace lorentz
