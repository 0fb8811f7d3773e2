// SPDX-License-Identifier: Apache-2.0
#include "krzyz/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "krzyz/error.hpp"

namespace krzyz {

cplx poly_eval(std::span<const cplx> a, cplx z) {
  cplx acc(0.0, 0.0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<cplx, cplx> poly_eval_deriv(std::span<const cplx> a, cplx z) {
  cplx p(0.0, 0.0);
  cplx dp(0.0, 0.0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

std::vector<cplx> poly_derivative(std::span<const cplx> a) {
  if (a.size() <= 1) return {cplx(0.0, 0.0)};
  std::vector<cplx> d(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = static_cast<double>(k) * a[k];
  return d;
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
  std::vector<cplx> q{cplx(1.0, 0.0)};
  for (const cplx& r : roots) {
    q.push_back(cplx(0.0, 0.0));
    for (std::size_t k = q.size() - 1; k > 0; --k) q[k] = q[k - 1] - r * q[k];
    q[0] = -r * q[0];
  }
  return q;
}

cplx newton_polish(std::span<const cplx> a, cplx z0, int max_iter) {
  cplx z = z0;
  double best = std::abs(poly_eval(a, z));
  for (int it = 0; it < max_iter && best > 0.0; ++it) {
    const auto [p, dp] = poly_eval_deriv(a, z);
    if (dp == cplx(0.0, 0.0)) break;
    const cplx next = z - p / dp;
    const double val = std::abs(poly_eval(a, next));
    if (!(val < best)) break;
    z = next;
    best = val;
  }
  return z;
}

std::vector<cplx> poly_roots(std::span<const cplx> a) {
  std::size_t deg = a.size();
  while (deg > 0 && a[deg - 1] == cplx(0.0, 0.0)) --deg;
  if (deg == 0) throw Error(Errc::domain, "poly_roots: zero polynomial");
  --deg;
  if (deg == 0) return {};

  const auto coeffs = a.first(deg + 1);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg),
                                                      static_cast<Eigen::Index>(deg));
  const cplx lead = coeffs[deg];
  for (std::size_t k = 0; k < deg; ++k) {
    companion(0, static_cast<Eigen::Index>(k)) = -coeffs[deg - 1 - k] / lead;
  }
  for (std::size_t k = 1; k < deg; ++k) {
    companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error(Errc::numeric, "companion eigensolver failed");

  std::vector<cplx> roots(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    roots[k] = newton_polish(coeffs, solver.eigenvalues()(static_cast<Eigen::Index>(k)));
  }
  return roots;
}

}  // namespace krzyz
