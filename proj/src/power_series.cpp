// SPDX-License-Identifier: Apache-2.0
#include "krzyz/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krzyz/error.hpp"
#include "krzyz/simd.hpp"

namespace krzyz {

CoeffVec::CoeffVec(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(Errc::empty_input, "coefficient vector needs at least c_0");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!std::isfinite(coeffs_[k].real()) || !std::isfinite(coeffs_[k].imag())) {
      throw Error(Errc::domain, "coefficient " + std::to_string(k) + " is not finite");
    }
  }
}

CoeffVec CoeffVec::zeros(std::size_t order) { return CoeffVec(std::vector<cplx>(order + 1)); }

CoeffVec CoeffVec::operator-() const { return scaled(-1.0); }

CoeffVec CoeffVec::scaled(double c) const {
  std::vector<cplx> out(coeffs_);
  for (auto& x : out) x *= c;
  return CoeffVec(std::move(out));
}

double wrap_angle(double phi) noexcept {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod round-up on tiny negatives
  return w;
}

double angle_diff(double a, double b) noexcept {
  double d = std::remainder(b - a, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

AtomSet::AtomSet(std::vector<Atom> atoms, double merge_tol) {
  for (auto& a : atoms) {
    if (!std::isfinite(a.alpha) || !(a.alpha > 0.0)) {
      throw Error(Errc::domain, "atom weight must be finite and positive");
    }
    if (!std::isfinite(a.phi)) throw Error(Errc::domain, "atom angle must be finite");
    a.phi = wrap_angle(a.phi);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.phi < y.phi; });

  for (const auto& a : atoms) {
    if (!atoms_.empty() && a.phi - atoms_.back().phi < merge_tol) {
      atoms_.back().alpha += a.alpha;
    } else {
      atoms_.push_back(a);
    }
  }
  // Wrap-around neighbour: an atom just below 2pi coincides with one at 0.
  if (atoms_.size() > 1 && atoms_.front().phi + kTwoPi - atoms_.back().phi < merge_tol) {
    atoms_.front().alpha += atoms_.back().alpha;
    atoms_.pop_back();
  }
}

double AtomSet::total_mass() const noexcept {
  double t = 0.0;
  for (const auto& a : atoms_) t += a.alpha;
  return t;
}

AtomSet AtomSet::rotated(double theta) const {
  std::vector<Atom> out(atoms_.begin(), atoms_.end());
  for (auto& a : out) a.phi += theta;
  return AtomSet(std::move(out));
}

std::vector<double> AtomSet::flattened() const {
  std::vector<double> out;
  out.reserve(2 * atoms_.size());
  for (const auto& a : atoms_) {
    out.push_back(a.alpha);
    out.push_back(a.phi);
  }
  return out;
}

CoeffVec series_product(const CoeffVec& f, const CoeffVec& g) {
  if (f.order() != g.order()) {
    throw Error(Errc::order_mismatch, "series_product: orders " + std::to_string(f.order()) +
                                          " and " + std::to_string(g.order()));
  }
  const auto& k = simd::kernels();
  const std::size_t n = f.order();
  std::vector<cplx> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out[i] = k.reversed_dot(f.coeffs().data(), g.coeffs().data(), i + 1);
  }
  return CoeffVec(std::move(out));
}

CoeffVec series_exp_neg(const CoeffVec& h) {
  const std::size_t n = h.order();
  const auto& k = simd::kernels();
  // weighted[j-1] = j h_j, so sum_{j=1}^{m} j h_j f_{m-j} is a reversed dot
  // of weighted[0..m) against f[0..m).
  std::vector<cplx> weighted(n);
  for (std::size_t j = 1; j <= n; ++j) weighted[j - 1] = static_cast<double>(j) * h[j];

  std::vector<cplx> f(n + 1);
  f[0] = std::exp(-h[0]);
  for (std::size_t m = 1; m <= n; ++m) {
    f[m] = -k.reversed_dot(weighted.data(), f.data(), m) / static_cast<double>(m);
  }
  return CoeffVec(std::move(f));
}

CoeffVec herglotz_coeffs(const AtomSet& atoms, std::size_t order) {
  if (atoms.empty()) throw Error(Errc::empty_input, "herglotz_coeffs: empty atom set");
  std::vector<cplx> h(order + 1);
  h[0] = atoms.total_mass();
  for (const auto& a : atoms.atoms()) {
    const cplx step = std::polar(1.0, a.phi);
    cplx w = step;
    for (std::size_t j = 1; j <= order; ++j) {
      h[j] += 2.0 * a.alpha * w;
      w *= step;
    }
  }
  return CoeffVec(std::move(h));
}

CoeffVec kernel_coeffs(double phi, std::size_t order) {
  std::vector<cplx> g(order + 1);
  g[0] = 1.0;
  for (std::size_t j = 1; j <= order; ++j) g[j] = 2.0 * std::polar(1.0, static_cast<double>(j) * phi);
  return CoeffVec(std::move(g));
}

double pairing(const CoeffVec& f, const CoeffVec& g) {
  if (f.order() != g.order()) {
    throw Error(Errc::order_mismatch, "pairing: orders " + std::to_string(f.order()) + " and " +
                                          std::to_string(g.order()));
  }
  return simd::kernels().reversed_dot(f.coeffs().data(), g.coeffs().data(), f.size()).real();
}

}  // namespace krzyz
