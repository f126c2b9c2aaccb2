#pragma once

#include <stdexcept>
#include <string>

namespace l2dict {

/// Failure categories surfaced by the library. The CLI maps parse_error to
/// exit code 2 and every other category to exit code 3.
enum class errc {
  invalid_input,
  not_psd,
  rank_too_low,
  invalid_bracket,
  k_too_small,
  use_general_path,
  not_representable,
  range_mismatch,
  empty_range,
  parse_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Thrown when a vector cannot be represented by a dictionary; carries the
/// relative residual of the best least-squares fit.
class NotRepresentable : public Error {
 public:
  NotRepresentable(double residual, const std::string& what)
      : Error(errc::not_representable, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace l2dict
