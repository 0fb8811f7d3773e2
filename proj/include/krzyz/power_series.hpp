// SPDX-License-Identifier: Apache-2.0
#pragma once

// Truncated complex power series and Herglotz atom sets.
//
// A CoeffVec holds the Taylor coefficients c_0..c_n of a function about the
// origin; its order n is explicit and no operation silently extends it.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace krzyz {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class CoeffVec {
 public:
  /// Throws Errc::empty_input for an empty list and Errc::domain for a
  /// non-finite entry.
  explicit CoeffVec(std::vector<cplx> coeffs);

  static CoeffVec zeros(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  const cplx& operator[](std::size_t k) const { return coeffs_[k]; }

  CoeffVec operator-() const;
  CoeffVec scaled(double c) const;

  bool operator==(const CoeffVec&) const = default;

 private:
  std::vector<cplx> coeffs_;
};

struct Atom {
  double alpha;  // weight, > 0
  double phi;    // angle in [0, 2pi)

  bool operator==(const Atom&) const = default;
};

/// Positive combination of Herglotz kernels (1 + e^{i phi} z) / (1 - e^{i phi} z).
///
/// Canonical form: angles wrapped into [0, 2pi), sorted ascending, and atoms
/// closer than `merge_tol` (circularly) merged by summing their weights.
class AtomSet {
 public:
  static constexpr double kDefaultMergeTol = 1e-12;

  AtomSet() = default;
  explicit AtomSet(std::vector<Atom> atoms, double merge_tol = kDefaultMergeTol);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  double total_mass() const noexcept;

  /// Angles shifted by theta, i.e. the atom set of h(e^{i theta} z).
  AtomSet rotated(double theta) const;

  /// Flattened (alpha_1, phi_1, alpha_2, phi_2, ...), the ordering used for tie-breaks.
  std::vector<double> flattened() const;

  bool operator==(const AtomSet&) const = default;

 private:
  std::vector<Atom> atoms_;
};

/// Wraps an angle into [0, 2pi).
double wrap_angle(double phi) noexcept;

/// Signed circular distance b - a folded into (-pi, pi].
double angle_diff(double a, double b) noexcept;

/// Cauchy product truncated at the common order.
CoeffVec series_product(const CoeffVec& f, const CoeffVec& g);

/// exp(-h) truncated at h's order, via k f_k = -sum_{j=1}^{k} j h_j f_{k-j}.
CoeffVec series_exp_neg(const CoeffVec& h);

/// Taylor coefficients of sum_k alpha_k (1 + e^{i phi_k} z)/(1 - e^{i phi_k} z):
/// h_0 = sum alpha_k, h_j = 2 sum alpha_k e^{i j phi_k}.
CoeffVec herglotz_coeffs(const AtomSet& atoms, std::size_t order);

/// Coefficients of a single kernel (1 + e^{i phi} z)/(1 - e^{i phi} z) of unit weight.
CoeffVec kernel_coeffs(double phi, std::size_t order);

/// Re sum_{k=0}^{n} f_{n-k} g_k, the n-th coefficient of f*g, real part.
double pairing(const CoeffVec& f, const CoeffVec& g);

}  // namespace krzyz
