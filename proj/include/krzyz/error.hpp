// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace krzyz {

enum class Errc {
  order_mismatch,
  empty_input,
  domain,
  not_on_boundary,
  conditioning,
  not_nonnegative,
  numeric,
  cannot_normalize,
  nondifferentiable,
};

const char* errc_name(Errc code) noexcept;

/// Single exception type for the library; the code tells callers (and the
/// CLI exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace krzyz
