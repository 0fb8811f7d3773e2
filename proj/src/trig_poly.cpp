// SPDX-License-Identifier: Apache-2.0
#include "krzyz/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "krzyz/error.hpp"
#include "krzyz/polynomial.hpp"
#include "krzyz/simd.hpp"

namespace krzyz {

TrigPoly::TrigPoly(double a0, std::vector<TrigTerm> terms) : a0_(a0), terms_(std::move(terms)) {
  while (!terms_.empty() && terms_.back().a == 0.0 && terms_.back().b == 0.0) terms_.pop_back();
}

double TrigPoly::scale() const noexcept {
  double s = std::abs(a0_);
  for (const auto& t : terms_) s += std::abs(t.a) + std::abs(t.b);
  return s;
}

std::vector<cplx> TrigPoly::half_coeffs() const {
  std::vector<cplx> h(terms_.size());
  for (std::size_t k = 0; k < terms_.size(); ++k) h[k] = cplx(terms_[k].a, terms_[k].b) / 2.0;
  return h;
}

CoeffVec TrigPoly::as_h() const {
  std::vector<cplx> h{cplx(a0_, 0.0)};
  const auto half = half_coeffs();
  h.insert(h.end(), half.begin(), half.end());
  return CoeffVec(std::move(h));
}

double TrigPoly::operator()(double phi) const {
  double v = a0_;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const double x = static_cast<double>(k + 1) * phi;
    v += terms_[k].a * std::cos(x) - terms_[k].b * std::sin(x);
  }
  return v;
}

double TrigPoly::derivative(double phi) const {
  double v = 0.0;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const double kd = static_cast<double>(k + 1);
    const double x = kd * phi;
    v -= kd * (terms_[k].a * std::sin(x) + terms_[k].b * std::cos(x));
  }
  return v;
}

TrigPoly from_poly_real_part(const CoeffVec& h, double real_tol) {
  if (std::abs(h[0].imag()) > real_tol * std::max(1.0, std::abs(h[0]))) {
    throw Error(Errc::domain, "from_poly_real_part: h_0 must be real");
  }
  std::vector<TrigTerm> terms(h.order());
  for (std::size_t k = 1; k <= h.order(); ++k) {
    terms[k - 1] = {2.0 * h[k].real(), 2.0 * h[k].imag()};
  }
  return TrigPoly(h[0].real(), std::move(terms));
}

double eval(const TrigPoly& t, double phi) { return t(phi); }

std::vector<double> eval_grid(const TrigPoly& t, std::size_t count) {
  std::vector<double> phi(count);
  for (std::size_t j = 0; j < count; ++j) phi[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
  std::vector<cplx> c(t.degree());
  for (std::size_t k = 0; k < t.degree(); ++k) c[k] = cplx(t.terms()[k].a, t.terms()[k].b);
  std::vector<double> out(count);
  simd::re_poly_on_circle(t.a0(), c, phi, out);
  return out;
}

MinPoint refine_min(const TrigPoly& t, double lo, double hi) {
  MinPoint best{lo, t(lo)};
  const auto consider = [&](double phi) {
    const double v = t(phi);
    if (v < best.value) best = {phi, v};
  };
  consider(hi);
  consider(0.5 * (lo + hi));

  double dlo = t.derivative(lo);
  double dhi = t.derivative(hi);
  if (dlo < 0.0 && dhi > 0.0) {
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double dm = t.derivative(mid);
      if (dm < 0.0) {
        lo = mid;
      } else if (dm > 0.0) {
        hi = mid;
      } else {
        lo = hi = mid;
      }
    }
    consider(0.5 * (lo + hi));
  }
  best.phi = wrap_angle(best.phi);
  return best;
}

MinPoint global_min(const TrigPoly& t) {
  if (t.degree() == 0) return {0.0, t.a0()};
  const std::size_t count = std::max<std::size_t>(64, 32 * t.degree());
  const std::vector<double> vals = eval_grid(t, count);
  const double step = kTwoPi / static_cast<double>(count);

  std::size_t arg = 0;
  for (std::size_t j = 1; j < count; ++j) {
    if (vals[j] < vals[arg]) arg = j;
  }
  MinPoint best{step * static_cast<double>(arg), t(step * static_cast<double>(arg))};

  for (std::size_t j = 0; j < count; ++j) {
    const double prev = vals[(j + count - 1) % count];
    const double next = vals[(j + 1) % count];
    if (vals[j] > prev || vals[j] > next) continue;
    const double centre = step * static_cast<double>(j);
    const MinPoint cand = refine_min(t, centre - step, centre + step);
    if (cand.value < best.value) best = cand;
  }
  return best;
}

std::vector<cplx> SpectralFactor::roots() const { return poly_roots(p); }

namespace {

struct CircleSplit {
  std::vector<cplx> on_circle;  // one representative per double root
  std::vector<cplx> outside;    // near-circle roots that are not double roots
  std::size_t inside = 0;
};

// Pairs near-circle roots (sorted by angle) and decides for each pair whether
// it is a double root on the circle or a reflected pair r, 1/conj(r). Picks
// whichever of the two cyclic pairings has the smaller total angular spread.
CircleSplit split_near_circle(std::vector<cplx> near, std::span<const cplx> lifted, double circle_tol) {
  std::sort(near.begin(), near.end(),
            [](cplx x, cplx y) { return wrap_angle(std::arg(x)) < wrap_angle(std::arg(y)); });
  const std::size_t count = near.size();
  const auto spread = [&](std::size_t offset) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; i += 2) {
      s += std::abs(angle_diff(std::arg(near[(i + offset) % count]), std::arg(near[(i + offset + 1) % count])));
    }
    return s;
  };
  const std::size_t offset = (count > 2 && spread(1) < spread(0)) ? 1 : 0;

  // A double root of c is a simple root of c', where Newton converges quadratically.
  const std::vector<cplx> deriv = poly_derivative(lifted);
  CircleSplit out;
  for (std::size_t i = 0; i < count; i += 2) {
    const cplx r1 = near[(i + offset) % count];
    const cplx r2 = near[(i + offset + 1) % count];
    cplx mid = r1 + r2;
    mid = std::abs(mid) > 0.0 ? mid / std::abs(mid) : r1 / std::abs(r1);
    const cplx polished = newton_polish(deriv, mid);
    if (std::abs(std::abs(polished) - 1.0) < circle_tol && std::abs(polished - mid) < 1e-3) {
      out.on_circle.push_back(polished / std::abs(polished));
    } else {
      out.outside.push_back(std::abs(r1) > std::abs(r2) ? r1 : r2);
      ++out.inside;
    }
  }
  return out;
}

}  // namespace

SpectralFactor fejer_riesz(const TrigPoly& t, const FejerRieszOptions& opts) {
  const std::size_t n = t.degree();
  if (n == 0) {
    if (t.a0() < 0.0) throw Error(Errc::not_nonnegative, "fejer_riesz: negative constant");
    if (t.a0() == 0.0) throw Error(Errc::domain, "fejer_riesz: zero polynomial has no normalized factor");
    return SpectralFactor{{cplx(std::sqrt(t.a0()), 0.0)}};
  }

  const MinPoint lowest = global_min(t);
  if (lowest.value < -opts.nonneg_tol * t.scale()) {
    throw Error(Errc::not_nonnegative, "fejer_riesz: T(" + std::to_string(lowest.phi) +
                                           ") = " + std::to_string(lowest.value));
  }

  // z^n T(z) as an ordinary polynomial of degree 2n.
  const std::vector<cplx> half = t.half_coeffs();
  std::vector<cplx> lifted(2 * n + 1);
  lifted[n] = t.a0();
  for (std::size_t k = 1; k <= n; ++k) {
    lifted[n + k] = half[k - 1];
    lifted[n - k] = std::conj(half[k - 1]);
  }
  const std::vector<cplx> roots = poly_roots(lifted);

  std::vector<cplx> chosen;  // roots outside the disk, then circle double roots
  std::vector<cplx> near;
  std::size_t inside = 0;
  for (const cplx& r : roots) {
    const double mod = std::abs(r);
    if (std::abs(mod - 1.0) < std::max(opts.circle_band, opts.circle_tol)) {
      near.push_back(r);
    } else if (mod > 1.0) {
      chosen.push_back(r);
    } else {
      ++inside;
    }
  }
  if (near.size() % 2 != 0) {
    throw Error(Errc::not_nonnegative, "fejer_riesz: circle root of odd multiplicity");
  }
  const CircleSplit split = split_near_circle(std::move(near), lifted, opts.circle_tol);
  chosen.insert(chosen.end(), split.outside.begin(), split.outside.end());
  inside += split.inside;
  if (inside != chosen.size() || chosen.size() + split.on_circle.size() != n) {
    throw Error(Errc::numeric, "fejer_riesz: roots are not symmetric under z -> 1/conj(z)");
  }
  chosen.insert(chosen.end(), split.on_circle.begin(), split.on_circle.end());

  std::vector<cplx> p = poly_from_roots(chosen);
  double energy = 0.0;
  for (const cplx& c : p) energy += std::norm(c);
  const double s = std::sqrt(t.a0() / energy);
  const cplx unphase = std::conj(p[0]) / std::abs(p[0]);
  for (cplx& c : p) c *= s * unphase;
  p[0] = cplx(p[0].real(), 0.0);
  return SpectralFactor{std::move(p)};
}

double factor_residual(const TrigPoly& t, const SpectralFactor& f, std::size_t grid) {
  const std::vector<double> vals = eval_grid(t, grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
    const double sq = std::norm(poly_eval(f.p, std::polar(1.0, phi)));
    worst = std::max(worst, std::abs(vals[j] - sq));
  }
  return worst;
}

CoeffVec autocorrelate(std::span<const cplx> p) {
  if (p.empty() || std::all_of(p.begin(), p.end(), [](cplx c) { return c == cplx(0.0, 0.0); })) {
    throw Error(Errc::domain, "autocorrelate: all coefficients are zero");
  }
  const std::size_t n = p.size() - 1;
  std::vector<cplx> h(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j + k <= n; ++j) s += p[j + k] * std::conj(p[j]);
    h[k] = s;
  }
  h[0] = cplx(h[0].real(), 0.0);
  return CoeffVec(std::move(h));
}

CoeffVec autocorrelate(const SpectralFactor& f) { return autocorrelate(std::span<const cplx>(f.p)); }

bool is_extremal_form(const CoeffVec& h, double tol) {
  const std::size_t n = h.order();
  const double h0 = h[0].real();
  if (n == 0 || !(h0 > 0.0)) return false;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(h[k]) > tol * h0) return false;
  }
  return std::abs(h0 - 2.0 * std::abs(h[n])) <= tol * h0;
}

}  // namespace krzyz
