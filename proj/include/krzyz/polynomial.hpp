// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense complex polynomials in ascending-coefficient form a_0 + a_1 z + ...

#include <complex>
#include <span>
#include <vector>

namespace krzyz {

using cplx = std::complex<double>;

cplx poly_eval(std::span<const cplx> a, cplx z);

/// Value and first derivative at z (Horner).
std::pair<cplx, cplx> poly_eval_deriv(std::span<const cplx> a, cplx z);

std::vector<cplx> poly_derivative(std::span<const cplx> a);

/// Monic polynomial prod (z - r_k).
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);

/// All roots: companion-matrix eigenvalues followed by Newton polishing
/// (a step is kept only when it reduces |p|). Trailing exact-zero leading
/// coefficients are dropped first. Throws Errc::numeric if the eigen solver
/// fails and Errc::domain for the zero polynomial.
std::vector<cplx> poly_roots(std::span<const cplx> a);

/// Newton iterations on p from z0; returns the best iterate seen.
cplx newton_polish(std::span<const cplx> a, cplx z0, int max_iter = 20);

}  // namespace krzyz
