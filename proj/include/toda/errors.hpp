#pragma once

#include <stdexcept>
#include <string>
#include <type_traits>

namespace toda {

/// Precondition failure on an argument (bad dimension, index, length).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Gram determinant evaluated non-positive. This cannot happen in exact
/// arithmetic, so it always signals numerical breakdown.
class PositivityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad run configuration or parameter file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool cond, const char* what) {
  if (!cond) throw InvalidArgument(what);
}
/// Builds the message only on failure.
template <class MakeMessage>
  requires std::is_invocable_r_v<std::string, MakeMessage>
inline void require(bool cond, MakeMessage&& make) {
  if (!cond) throw InvalidArgument(make());
}
}  // namespace detail

}  // namespace toda
