// SPDX-License-Identifier: Apache-2.0
#include "krzyz/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "krzyz/error.hpp"
#include "krzyz/simd.hpp"

namespace krzyz {

namespace {

CoeffVec truncated(const CoeffVec& c, std::size_t order) {
  auto coeffs = c.coeffs().first(order + 1);
  return CoeffVec(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

bool needs_rotation(const Candidate& c) {
  const cplx fn = c.f[c.n];
  return std::abs(fn.imag()) > 1e-12 * std::abs(fn) || fn.real() < 0.0;
}

Candidate positive(const Candidate& c) {
  if (c.f[c.n] == cplx(0.0, 0.0) || !needs_rotation(c)) return c;
  return rotate_to_positive(c);
}

}  // namespace

Candidate build_candidate(const AtomSet& atoms, std::size_t n, std::size_t order) {
  if (n < 1) throw Error(Errc::domain, "build_candidate: n must be >= 1");
  const std::size_t ord = std::max(n, order);
  CoeffVec f = series_exp_neg(herglotz_coeffs(atoms, ord));
  std::vector<cplx> h(n + 1);
  for (std::size_t k = 0; k <= n; ++k) h[k] = f[n - k];
  return Candidate{atoms, n, std::move(f), CoeffVec(std::move(h)), atoms.size() > n};
}

Candidate rotate_to_positive(const Candidate& c) {
  const cplx fn = c.f[c.n];
  if (fn == cplx(0.0, 0.0)) throw Error(Errc::cannot_normalize, "rotate_to_positive: f_n = 0");
  const double theta = -std::arg(fn) / static_cast<double>(c.n);
  Candidate out = build_candidate(c.atoms.rotated(theta), c.n, c.f.order());
  // Snap the residual phase of f_n (and so of h_0) left by rounding.
  std::vector<cplx> h(out.H.coeffs().begin(), out.H.coeffs().end());
  h[0] = cplx(std::abs(h[0]), 0.0);
  out.H = CoeffVec(std::move(h));
  return out;
}

Candidate reference_extremal(std::size_t n, double t, std::size_t order) {
  if (n < 1) throw Error(Errc::domain, "reference_extremal: n must be >= 1");
  if (!(t > 0.0)) throw Error(Errc::domain, "reference_extremal: t must be positive");
  std::vector<Atom> atoms(n);
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    atoms[k] = {t / nd, (std::numbers::pi + kTwoPi * static_cast<double>(k)) / nd};
  }
  return build_candidate(AtomSet(std::move(atoms)), n, order);
}

TrigPoly h_trig_poly(const Candidate& c) { return from_poly_real_part(c.H, 1e-12); }

std::vector<double> re_h_profile(const Candidate& c, std::size_t grid) {
  return eval_grid(h_trig_poly(positive(c)), grid);
}

ConditionReport verify_conditions(const Candidate& input, double tol, std::size_t grid) {
  const Candidate c = positive(input);
  const std::size_t n = c.n;
  const TrigPoly t = h_trig_poly(c);

  ConditionReport rep;
  rep.tol = tol;

  const MinPoint low = global_min(t);
  rep.h_in_C_margin = low.value;
  rep.margin_phi = low.phi;
  rep.h_in_C = low.value >= -tol;

  for (const auto& a : c.atoms.atoms()) rep.boundary_zero_residuals.push_back(std::abs(t(a.phi)));

  const CoeffVec fn = truncated(c.f, n);
  rep.pairing_value = pairing(fn, herglotz_coeffs(c.atoms, n));

  // pairing(f, kernel_phi) = Re(f_n + 2 sum_{k>=1} f_{n-k} e^{i k phi}), scanned on the grid.
  std::vector<cplx> weights(n);
  for (std::size_t k = 1; k <= n; ++k) weights[k - 1] = 2.0 * fn[n - k];
  std::vector<double> phis(grid);
  for (std::size_t j = 0; j < grid; ++j) phis[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
  std::vector<double> scan(grid);
  simd::re_poly_on_circle(fn[n].real(), weights, phis, scan);
  const auto it = std::min_element(scan.begin(), scan.end());
  const double step = kTwoPi / static_cast<double>(grid);
  const double centre = phis[static_cast<std::size_t>(it - scan.begin())];
  rep.min_pairing_over_kernels = *it;
  rep.min_pairing_phi = centre;
  const MinPoint refined = refine_min(t, centre - step, centre + step);
  if (refined.value < rep.min_pairing_over_kernels) {
    rep.min_pairing_over_kernels = refined.value;
    rep.min_pairing_phi = refined.phi;
  }
  return rep;
}

}  // namespace krzyz
