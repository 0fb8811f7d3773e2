// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops shared by the series and circle-scan code.
//
// Every kernel has a scalar reference implementation; AVX2+FMA (x86-64) and
// NEON (aarch64) variants are compiled in separate translation units and the
// widest one the CPU supports is picked once at first use. Setting the
// environment variable KRZYZ_SIMD=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace krzyz::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  // out[j] = base + Re( sum_{k=1}^{n} c[k-1] * exp(i*k*phi[j]) ), Horner in z = exp(i*phi).
  void (*re_poly_on_circle)(double base, const cplx* c, std::size_t n, const double* phi,
                            double* out, std::size_t count);

  // sum_{j=0}^{len-1} a[j] * b[len-1-j]
  cplx (*reversed_dot)(const cplx* a, const cplx* b, std::size_t len);
};

bool isa_available(Isa isa) noexcept;

/// Table for a specific ISA. Throws krzyz::Error (Errc::domain) when the ISA is not
/// compiled in or not supported by the running CPU.
const KernelTable& kernels_for(Isa isa);

/// Runtime-selected table (cached after the first call).
const KernelTable& kernels();

// Convenience wrappers over the active table.

inline cplx reversed_dot(std::span<const cplx> a, std::span<const cplx> b) {
  // Equal lengths expected; otherwise the common prefix is used.
  const std::size_t len = a.size() < b.size() ? a.size() : b.size();
  return kernels().reversed_dot(a.data(), b.data(), len);
}

inline void re_poly_on_circle(double base, std::span<const cplx> c, std::span<const double> phi,
                              std::span<double> out) {
  kernels().re_poly_on_circle(base, c.data(), c.size(), phi.data(), out.data(), phi.size());
}

namespace detail {
// Per-ISA entry points; the AVX2 and NEON ones only exist when their TU is built.
void re_poly_on_circle_scalar(double, const cplx*, std::size_t, const double*, double*, std::size_t);
cplx reversed_dot_scalar(const cplx*, const cplx*, std::size_t);
void re_poly_on_circle_avx2(double, const cplx*, std::size_t, const double*, double*, std::size_t);
cplx reversed_dot_avx2(const cplx*, const cplx*, std::size_t);
void re_poly_on_circle_neon(double, const cplx*, std::size_t, const double*, double*, std::size_t);
cplx reversed_dot_neon(const cplx*, const cplx*, std::size_t);
}  // namespace detail

}  // namespace krzyz::simd
