#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gt {

/// Domain/contract violation carrying a stable machine-checkable code
/// ("domain", "empty-split", "end-effects", "invalid-spec", ...) alongside the
/// human-readable message.
class Fault : public std::runtime_error {
 public:
  Fault(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace gt
