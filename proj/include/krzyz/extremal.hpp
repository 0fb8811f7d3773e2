// SPDX-License-Identifier: Apache-2.0
#pragma once

// Candidates f = exp(-h) with h a positive combination of Herglotz kernels,
// the polynomial H(z) = f_n + 2 f_{n-1} z + ... + 2 f_0 z^n built from their
// coefficients, and the first-order optimality conditions for |f_n|.

#include <cstddef>
#include <vector>

#include "krzyz/power_series.hpp"
#include "krzyz/trig_poly.hpp"

namespace krzyz {

inline constexpr double kTwoOverE = 0.73575888234288464319;  // 2/e

struct Candidate {
  AtomSet atoms;
  std::size_t n = 0;  // coefficient index under study
  CoeffVec f;         // Taylor coefficients of exp(-h), order >= n
  CoeffVec H;         // (h_0, ..., h_n) = (f_n, f_{n-1}, ..., f_0), H(z) = h_0 + 2 sum h_k z^k
  bool over_parameterized = false;  // more atoms than n; allowed for exploration
};

/// f = exp(-herglotz(atoms)) to order max(n, order), H from f_0..f_n.
Candidate build_candidate(const AtomSet& atoms, std::size_t n, std::size_t order = 0);

/// Rotates z -> e^{i theta} z with theta = -arg(f_n)/n so that f_n > 0.
/// Throws Errc::cannot_normalize when f_n = 0.
Candidate rotate_to_positive(const Candidate& c);

/// exp(-t (1 - z^n)/(1 + z^n)): n atoms of weight t/n at the n-th roots of -1.
/// Throws Errc::domain unless n >= 1 and t > 0.
Candidate reference_extremal(std::size_t n, double t, std::size_t order = 0);

struct ConditionReport {
  bool h_in_C = false;
  double h_in_C_margin = 0.0;  // min over the circle of Re H
  double margin_phi = 0.0;
  std::vector<double> boundary_zero_residuals;  // |Re H(e^{i phi_k})| per atom
  double pairing_value = 0.0;                   // Re sum f_{n-k} h_k
  double min_pairing_over_kernels = 0.0;        // min over a phi grid of pairing(f, kernel_phi)
  double min_pairing_phi = 0.0;
  double tol = 0.0;
};

/// Fills the report for the candidate rotated so that f_n >= 0 (the rotation
/// is applied here when needed; residuals refer to the rotated atoms).
ConditionReport verify_conditions(const Candidate& c, double tol = 1e-10, std::size_t grid = 4096);

/// Re H(e^{i phi_j}) at phi_j = 2 pi j / grid, for the rotated candidate.
std::vector<double> re_h_profile(const Candidate& c, std::size_t grid = 4096);

/// Real-part trigonometric polynomial of H (requires f_n real).
TrigPoly h_trig_poly(const Candidate& c);

}  // namespace krzyz
