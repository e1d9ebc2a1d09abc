#pragma once

#include <stdexcept>
#include <string>

namespace penshrink {

// Error category; the CLI maps categories onto distinct exit codes.
enum class Errc {
  malformed_input,
  degenerate_layout,
  invalid_argument,
  numeric_failure,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace penshrink
