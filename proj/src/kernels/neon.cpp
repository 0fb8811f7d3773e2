// SPDX-License-Identifier: Apache-2.0
//
// NEON (aarch64, float64x2) variants. Compiled only on aarch64 targets.

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <cmath>

#include "krzyz/simd.hpp"

namespace krzyz::simd::detail {

void re_poly_on_circle_neon(double base, const cplx* c, std::size_t n, const double* phi,
                            double* out, std::size_t count) {
  std::size_t j = 0;
  for (; j + 2 <= count; j += 2) {
    const double zr_arr[2] = {std::cos(phi[j]), std::cos(phi[j + 1])};
    const double zi_arr[2] = {std::sin(phi[j]), std::sin(phi[j + 1])};
    const float64x2_t zr = vld1q_f64(zr_arr);
    const float64x2_t zi = vld1q_f64(zi_arr);
    float64x2_t acc_r = vdupq_n_f64(0.0);
    float64x2_t acc_i = vdupq_n_f64(0.0);
    for (std::size_t k = n; k > 0; --k) {
      const float64x2_t sr = vaddq_f64(acc_r, vdupq_n_f64(c[k - 1].real()));
      const float64x2_t si = vaddq_f64(acc_i, vdupq_n_f64(c[k - 1].imag()));
      acc_r = vfmsq_f64(vmulq_f64(sr, zr), si, zi);
      acc_i = vfmaq_f64(vmulq_f64(si, zr), sr, zi);
    }
    vst1q_f64(out + j, vaddq_f64(acc_r, vdupq_n_f64(base)));
  }
  if (j < count) re_poly_on_circle_scalar(base, c, n, phi + j, out + j, count - j);
}

cplx reversed_dot_neon(const cplx* a, const cplx* b, std::size_t len) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  // acc_rr = sum (xr*yr, xi*yi), acc_ri = sum (xr*yi, xi*yr)
  float64x2_t acc_rr = vdupq_n_f64(0.0);
  float64x2_t acc_ri = vdupq_n_f64(0.0);
  for (std::size_t j = 0; j < len; ++j) {
    const float64x2_t x = vld1q_f64(ad + 2 * j);
    const float64x2_t y = vld1q_f64(bd + 2 * (len - 1 - j));
    acc_rr = vfmaq_f64(acc_rr, x, y);
    acc_ri = vfmaq_f64(acc_ri, x, vextq_f64(y, y, 1));
  }
  return {vgetq_lane_f64(acc_rr, 0) - vgetq_lane_f64(acc_rr, 1),
          vgetq_lane_f64(acc_ri, 0) + vgetq_lane_f64(acc_ri, 1)};
}

}  // namespace krzyz::simd::detail

#endif
