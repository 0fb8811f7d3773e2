// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string>

#include "krzyz/error.hpp"
#include "krzyz/simd.hpp"

namespace krzyz::simd {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &detail::re_poly_on_circle_scalar,
                              &detail::reversed_dot_scalar};

#if defined(KRZYZ_BUILD_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &detail::re_poly_on_circle_avx2,
                            &detail::reversed_dot_avx2};
#endif

#if defined(KRZYZ_BUILD_NEON)
constexpr KernelTable kNeon{Isa::neon, &detail::re_poly_on_circle_neon,
                            &detail::reversed_dot_neon};
#endif

bool force_scalar() {
  const char* env = std::getenv("KRZYZ_SIMD");
  return env != nullptr && std::string(env) == "scalar";
}

const KernelTable& select() {
  if (force_scalar()) return kScalar;
#if defined(KRZYZ_BUILD_AVX2)
  if (isa_available(Isa::avx2)) return kAvx2;
#endif
#if defined(KRZYZ_BUILD_NEON)
  if (isa_available(Isa::neon)) return kNeon;
#endif
  return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(KRZYZ_BUILD_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(KRZYZ_BUILD_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(Errc::domain, "SIMD kernels for " + std::string(isa_name(isa)) +
                             " are not available on this build/CPU");
  }
  switch (isa) {
#if defined(KRZYZ_BUILD_AVX2)
    case Isa::avx2: return kAvx2;
#endif
#if defined(KRZYZ_BUILD_NEON)
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& kernels() {
  static const KernelTable& active = select();
  return active;
}

}  // namespace krzyz::simd
