// SPDX-License-Identifier: Apache-2.0
#pragma once

// Real trigonometric polynomials T(phi) = a_0 + sum_k (a_k cos k phi - b_k sin k phi),
// viewed as the circle restriction of Re H for H(z) = h_0 + 2 sum_k h_k z^k with
// h_0 = a_0 and h_k = (a_k + i b_k)/2.

#include <cstddef>
#include <span>
#include <vector>

#include "krzyz/power_series.hpp"

namespace krzyz {

struct TrigTerm {
  double a = 0.0;
  double b = 0.0;

  bool operator==(const TrigTerm&) const = default;
};

class TrigPoly {
 public:
  /// Trailing terms with a_k = b_k = 0 are trimmed, so degree() is exact.
  explicit TrigPoly(double a0, std::vector<TrigTerm> terms = {});

  double a0() const noexcept { return a0_; }
  std::span<const TrigTerm> terms() const noexcept { return terms_; }
  std::size_t degree() const noexcept { return terms_.size(); }

  /// a_0 + sum |a_k| + |b_k|; the reference magnitude for tolerances.
  double scale() const noexcept;

  /// Complex coefficients h_1..h_n = (a_k + i b_k)/2.
  std::vector<cplx> half_coeffs() const;

  /// Same polynomial as an H coefficient vector (h_0..h_n).
  CoeffVec as_h() const;

  double operator()(double phi) const;
  double derivative(double phi) const;

 private:
  double a0_;
  std::vector<TrigTerm> terms_;
};

/// Circle restriction of Re H. Throws Errc::domain if h_0 is not real
/// (|Im h_0| > real_tol * max(1, |h_0|)).
TrigPoly from_poly_real_part(const CoeffVec& h, double real_tol = 1e-12);

double eval(const TrigPoly& t, double phi);

/// T at phi_j = 2 pi j / count, j = 0..count-1 (SIMD-backed).
std::vector<double> eval_grid(const TrigPoly& t, std::size_t count);

struct MinPoint {
  double phi;
  double value;
};

/// Global minimum on [0, 2pi): dense sampling (at least 16 samples per
/// unit of degree) and bisection on T' inside every sampled local-minimum
/// bracket until the bracket is narrower than 1e-12.
MinPoint global_min(const TrigPoly& t);

/// Refines a minimum of t bracketed by [lo, hi] (T' < 0 at lo, > 0 at hi
/// in the generic case) and returns the best point found.
MinPoint refine_min(const TrigPoly& t, double lo, double hi);

/// Outer spectral factor P with T(phi) = |P(e^{i phi})|^2, every root of
/// modulus >= 1 and p_0 > 0 real.
struct SpectralFactor {
  std::vector<cplx> p;

  std::size_t degree() const noexcept { return p.empty() ? 0 : p.size() - 1; }
  std::vector<cplx> roots() const;
};

struct FejerRieszOptions {
  double nonneg_tol = 1e-9;   // relative to scale(): min T >= -nonneg_tol*scale
  double circle_band = 1e-4;  // roots with ||z| - 1| below this are tested as circle double roots
  double circle_tol = 1e-7;   // a polished double root within this of the circle lies on it
};

/// Throws Errc::not_nonnegative when global_min says T < 0 or a circle root
/// has odd multiplicity, Errc::numeric when the root split is inconsistent.
SpectralFactor fejer_riesz(const TrigPoly& t, const FejerRieszOptions& opts = {});

/// max over a uniform grid of |T(phi) - |P(e^{i phi})|^2|.
double factor_residual(const TrigPoly& t, const SpectralFactor& f, std::size_t grid = 4096);

/// h_k = sum_{j=0}^{n-k} p_{j+k} conj(p_j), k = 0..n. Throws Errc::domain if
/// every p_k is zero.
CoeffVec autocorrelate(std::span<const cplx> p);
CoeffVec autocorrelate(const SpectralFactor& f);

/// True iff h_1..h_{n-1} vanish within tol*h_0 and |h_0 - 2|h_n|| <= tol*h_0,
/// i.e. H = h_0 (1 + eta z^n) with |eta| = 1.
bool is_extremal_form(const CoeffVec& h, double tol);

}  // namespace krzyz
