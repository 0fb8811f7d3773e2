// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "krzyz/simd.hpp"

namespace krzyz::simd::detail {

void re_poly_on_circle_scalar(double base, const cplx* c, std::size_t n, const double* phi,
                              double* out, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) {
    const cplx z(std::cos(phi[j]), std::sin(phi[j]));
    cplx acc(0.0, 0.0);
    for (std::size_t k = n; k > 0; --k) acc = (acc + c[k - 1]) * z;
    out[j] = base + acc.real();
  }
}

cplx reversed_dot_scalar(const cplx* a, const cplx* b, std::size_t len) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    const cplx& x = a[j];
    const cplx& y = b[len - 1 - j];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re, im};
}

}  // namespace krzyz::simd::detail
