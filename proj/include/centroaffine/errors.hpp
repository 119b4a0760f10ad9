#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace centroaffine {

// Domain error with a module-qualified code, e.g. "core_polygon/DegeneratePolygon".
// The CLI maps codes to nonzero exit statuses; library callers can switch on code().
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace centroaffine
