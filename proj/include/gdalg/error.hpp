#pragma once

#include <stdexcept>
#include <string>

namespace gdalg {

// Raised when an input violates a documented precondition. The reason tag is
// a short machine-readable token (e.g. "field_too_large").
class ConstraintError : public std::runtime_error {
 public:
  ConstraintError(std::string reason, const std::string& what)
      : std::runtime_error(what), reason_(std::move(reason)) {}

  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

// Raised when an internal consistency check fails. Indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const char* reason, const std::string& what) {
  if (!cond) throw ConstraintError(reason, what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

}  // namespace gdalg
