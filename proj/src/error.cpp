// SPDX-License-Identifier: Apache-2.0
#include "krzyz/error.hpp"

namespace krzyz {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::order_mismatch: return "order mismatch";
    case Errc::empty_input: return "empty input";
    case Errc::domain: return "domain error";
    case Errc::not_on_boundary: return "not on boundary";
    case Errc::conditioning: return "ill-conditioned";
    case Errc::not_nonnegative: return "not nonnegative";
    case Errc::numeric: return "numeric failure";
    case Errc::cannot_normalize: return "cannot normalize";
    case Errc::nondifferentiable: return "nondifferentiable point";
  }
  return "error";
}

}  // namespace krzyz
