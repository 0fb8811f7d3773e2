// SPDX-License-Identifier: Apache-2.0
//
// AVX2 + FMA variants. This file is compiled with -mavx2 -mfma and must only
// be entered after the dispatcher has checked CPU support.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

#include "krzyz/simd.hpp"

namespace krzyz::simd::detail {

namespace {

// (a0, a1) * (b0, b1) lane-wise complex product, interleaved re/im layout.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

}  // namespace

void re_poly_on_circle_avx2(double base, const cplx* c, std::size_t n, const double* phi,
                            double* out, std::size_t count) {
  // Four evaluation points per iteration, split-complex layout so the
  // Horner step is two FMAs per component.
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    alignas(32) double zr[4];
    alignas(32) double zi[4];
    for (int l = 0; l < 4; ++l) {
      zr[l] = std::cos(phi[j + l]);
      zi[l] = std::sin(phi[j + l]);
    }
    const __m256d vzr = _mm256_load_pd(zr);
    const __m256d vzi = _mm256_load_pd(zi);
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();
    for (std::size_t k = n; k > 0; --k) {
      const __m256d sr = _mm256_add_pd(acc_r, _mm256_set1_pd(c[k - 1].real()));
      const __m256d si = _mm256_add_pd(acc_i, _mm256_set1_pd(c[k - 1].imag()));
      acc_r = _mm256_fmsub_pd(sr, vzr, _mm256_mul_pd(si, vzi));
      acc_i = _mm256_fmadd_pd(sr, vzi, _mm256_mul_pd(si, vzr));
    }
    _mm256_storeu_pd(out + j, _mm256_add_pd(acc_r, _mm256_set1_pd(base)));
  }
  if (j < count) re_poly_on_circle_scalar(base, c, n, phi + j, out + j, count - j);
}

cplx reversed_dot_avx2(const cplx* a, const cplx* b, std::size_t len) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    // a[j], a[j+1] pair with b[len-1-j], b[len-2-j]: load b[len-2-j..len-1-j]
    // and swap the two complex halves.
    const __m256d va = _mm256_loadu_pd(ad + 2 * j);
    const __m256d vb_raw = _mm256_loadu_pd(bd + 2 * (len - 2 - j));
    const __m256d vb = _mm256_permute2f128_pd(vb_raw, vb_raw, 0x01);
    acc = _mm256_add_pd(acc, cmul(va, vb));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  if (j < len) {
    const cplx x = a[j];
    const cplx y = b[len - 1 - j];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re, im};
}

}  // namespace krzyz::simd::detail

#endif
