// SPDX-License-Identifier: Apache-2.0
#pragma once

// Caratheodory-Toeplitz machinery: leading minors of the Hermitian Toeplitz
// matrix with first row (2 h_0, h_1, ..., h_n), membership of (h_0..h_n) in
// the coefficient body of the Caratheodory class, and recovery of the unique
// atomic extension on the boundary.

#include <cstddef>
#include <string>
#include <vector>

#include "krzyz/power_series.hpp"

namespace krzyz {

/// Rank decisions are made on minors normalized by their homogeneity weight.
inline constexpr double kDefaultMinorTol = 1e-8;

struct Classification {
  enum class Kind { interior, boundary, outside };

  Kind kind = Kind::interior;
  std::size_t rank = 0;  // number of atoms for Boundary, 0 otherwise

  static Classification interior() { return {Kind::interior, 0}; }
  static Classification boundary(std::size_t m) { return {Kind::boundary, m}; }
  static Classification outside() { return {Kind::outside, 0}; }

  /// "Interior", "Boundary(m)" or "Outside".
  std::string to_string() const;

  bool operator==(const Classification&) const = default;
};

struct MinorReport {
  std::vector<double> minors;  // M_1..M_n
  Classification classification;
  double tol = kDefaultMinorTol;
};

/// Hermitian Toeplitz matrix of size k+1 with first row (2 h_0, h_1, ..., h_k),
/// row-major. Exposed for tests and the recovery step.
std::vector<cplx> toeplitz_block(const CoeffVec& h, std::size_t k);

/// M_k for k = 1..n and the classification of h.
///
/// Classification uses the LDL^H pivots d_k = M_k / (2 h_0 M_{k-1}): all
/// pivots above `tol` means Interior; at the first pivot that is not, the
/// normalized Schur complement of the leading positive-definite block must
/// vanish to within `tol` for Boundary(k), otherwise Outside. Minors past a
/// vanishing pivot are evaluated with a fully pivoted LU of the leading block.
///
/// Throws Errc::domain unless h_0 is real and positive and n >= 1.
MinorReport toeplitz_minors(const CoeffVec& h, double tol = kDefaultMinorTol);

Classification membership(const CoeffVec& h, double tol = kDefaultMinorTol);

struct RecoverOptions {
  double tol = kDefaultMinorTol;     // classification tolerance
  double max_condition = 1e12;       // weight-system condition number limit
  double reproduce_tol = 1e-8;       // per-entry reproduction tolerance, relative to h_0
};

/// Unique atomic extension of a boundary point (Pisarenko-style): the null
/// vector of the rank-m Toeplitz block gives a polynomial whose roots are
/// e^{i phi_k}; weights solve the moment system in least squares, then a few
/// Gauss-Newton steps on all n+1 moments polish (alpha, phi).
///
/// Throws Errc::not_on_boundary for Interior/Outside input and
/// Errc::conditioning when the moment system is too ill-conditioned.
AtomSet recover_atoms(const CoeffVec& h, const RecoverOptions& opts = {});

}  // namespace krzyz
