#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qlab {

// Domain error with a machine-readable kind ("DimensionMismatch",
// "SyntaxError", ...) next to the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& detail) {
  throw Error(std::move(kind), detail);
}

}  // namespace qlab
