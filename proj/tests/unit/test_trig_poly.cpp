// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "krzyz/error.hpp"
#include "krzyz/polynomial.hpp"
#include "krzyz/trig_poly.hpp"
#include "oracles.hpp"

namespace {

using namespace krzyz;
using krzyz::testing::Rng;

std::vector<std::pair<double, double>> pairs(const TrigPoly& t) {
  std::vector<std::pair<double, double>> out;
  for (const auto& term : t.terms()) out.emplace_back(term.a, term.b);
  return out;
}

TrigPoly random_trig(Rng& rng, std::size_t deg, double a0) {
  std::vector<TrigTerm> terms(deg);
  for (auto& t : terms) t = {rng.normal(), rng.normal()};
  return TrigPoly(a0, terms);
}

// Outer polynomial with p_0 > 0: roots of modulus in [rmin, rmax].
std::vector<cplx> random_outer(Rng& rng, std::size_t deg, double rmin, double rmax) {
  std::vector<cplx> roots(deg);
  for (auto& r : roots) r = std::polar(rng.uniform(rmin, rmax), rng.uniform(0.0, kTwoPi));
  std::vector<cplx> p = poly_from_roots(roots);
  const cplx unit = std::conj(p[0]) / std::abs(p[0]);
  const double scale = rng.uniform(0.5, 2.0);
  for (auto& c : p) c *= unit * scale;
  return p;
}

TEST(TrigPoly, TrimsTrailingZeros) {
  const TrigPoly t(1.0, {{1.0, 0.0}, {0.0, 0.0}});
  EXPECT_EQ(t.degree(), 1u);
  EXPECT_DOUBLE_EQ(t.scale(), 2.0);
}

TEST(TrigPoly, EvalMatchesOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const TrigPoly t = random_trig(rng, rng.index(0, 12), rng.normal());
    for (int j = 0; j < 10; ++j) {
      const double phi = rng.uniform(-10.0, 10.0);
      EXPECT_NEAR(eval(t, phi), krzyz::testing::trig_eval(t.a0(), pairs(t), phi), 1e-12);
    }
  }
}

TEST(TrigPoly, DerivativeMatchesFiniteDifference) {
  Rng rng(32);
  const TrigPoly t = random_trig(rng, 7, 0.3);
  for (int j = 0; j < 20; ++j) {
    const double phi = rng.uniform(0.0, kTwoPi);
    const double fd = (t(phi + 1e-6) - t(phi - 1e-6)) / 2e-6;
    EXPECT_NEAR(t.derivative(phi), fd, 1e-7);
  }
}

TEST(TrigPoly, GridMatchesPointwise) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const TrigPoly t = random_trig(rng, rng.index(0, 20), rng.normal());
    const std::size_t count = rng.index(1, 300);
    const auto grid = eval_grid(t, count);
    ASSERT_EQ(grid.size(), count);
    for (std::size_t j = 0; j < count; ++j) {
      const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
      EXPECT_NEAR(grid[j], krzyz::testing::trig_eval(t.a0(), pairs(t), phi), 1e-11);
    }
  }
}

TEST(TrigPoly, RealPartConvention) {
  // H(z) = 1 + 2(0.5 + 0.25i) z: Re H(e^{i phi}) = 1 + cos phi - 0.5 sin phi.
  const CoeffVec h({1.0, cplx(0.5, 0.25)});
  const TrigPoly t = from_poly_real_part(h);
  ASSERT_EQ(t.degree(), 1u);
  EXPECT_DOUBLE_EQ(t.terms()[0].a, 1.0);
  EXPECT_DOUBLE_EQ(t.terms()[0].b, 0.5);
  for (double phi : {0.0, 0.7, 2.0, 4.5}) {
    const cplx z = std::polar(1.0, phi);
    EXPECT_NEAR(t(phi), (h[0] + 2.0 * h[1] * z).real(), 1e-15);
  }
  EXPECT_EQ(t.as_h(), h);
  try {
    from_poly_real_part(CoeffVec({cplx(1.0, 0.1), 1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
}

TEST(GlobalMin, MatchesDenseScan) {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const TrigPoly t = random_trig(rng, rng.index(1, 16), rng.normal());
    double dense = INFINITY;
    for (int j = 0; j < 200000; ++j) dense = std::min(dense, t(kTwoPi * j / 200000.0));
    const MinPoint m = global_min(t);
    EXPECT_LE(m.value, dense + 1e-12);
    EXPECT_GE(m.value, dense - 1e-6);
    EXPECT_NEAR(t(m.phi), m.value, 1e-14);
    EXPECT_GE(m.phi, 0.0);
    EXPECT_LT(m.phi, kTwoPi);
  }
}

TEST(FejerRiesz, Examples) {
  const double r = std::sqrt(0.5);
  const SpectralFactor a = fejer_riesz(TrigPoly(1.0, {{1.0, 0.0}}));
  ASSERT_EQ(a.p.size(), 2u);
  EXPECT_NEAR(std::abs(a.p[0] - r), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(a.p[1] - r), 0.0, 1e-8);

  const SpectralFactor b = fejer_riesz(TrigPoly(4.0));
  ASSERT_EQ(b.p.size(), 1u);
  EXPECT_EQ(b.p[0], cplx(2.0, 0.0));

  const SpectralFactor c = fejer_riesz(TrigPoly(1.0, {{0.0, 0.0}, {1.0, 0.0}}));
  ASSERT_EQ(c.p.size(), 3u);
  EXPECT_NEAR(std::abs(c.p[0] - r), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(c.p[1]), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(c.p[2] - r), 0.0, 1e-8);
}

TEST(FejerRiesz, Errors) {
  const auto code_of = [](const TrigPoly& t) {
    try {
      fejer_riesz(t);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::numeric;  // sentinel: did not throw
  };
  EXPECT_EQ(code_of(TrigPoly(1.0, {{2.0, 0.0}})), Errc::not_nonnegative);
  EXPECT_EQ(code_of(TrigPoly(-1.0)), Errc::not_nonnegative);
  EXPECT_EQ(code_of(TrigPoly(0.0)), Errc::domain);
}

TEST(FejerRiesz, RoundTripOuterPolynomials) {
  Rng rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t deg = rng.index(1, 12);
    const auto p = random_outer(rng, deg, 1.05, 3.0);
    const CoeffVec h = autocorrelate(p);
    const SpectralFactor f = fejer_riesz(from_poly_real_part(h));
    ASSERT_EQ(f.p.size(), p.size());
    double norm = 0.0, err = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      norm += std::norm(p[k]);
      err = std::max(err, std::abs(f.p[k] - p[k]));
    }
    EXPECT_LE(err, 1e-8 * std::sqrt(norm)) << "deg=" << deg;
    for (const cplx& z : f.roots()) EXPECT_GE(std::abs(z), 1.0 - 1e-8);
  }
}

TEST(FejerRiesz, SimpleCircleRoots) {
  Rng rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t deg = rng.index(1, 6);
    std::vector<cplx> roots;
    for (std::size_t k = 0; k < deg; ++k) roots.push_back(std::polar(rng.uniform(1.2, 2.5), rng.uniform(0.0, kTwoPi)));
    const std::size_t on_circle = rng.index(1, 2);
    for (std::size_t k = 0; k < on_circle; ++k) roots.push_back(std::polar(1.0, rng.uniform(0.0, kTwoPi)));
    std::vector<cplx> p = poly_from_roots(roots);
    const cplx unit = std::conj(p[0]) / std::abs(p[0]);
    for (auto& c : p) c *= unit;

    const TrigPoly t = from_poly_real_part(autocorrelate(p));
    const SpectralFactor f = fejer_riesz(t);
    double err = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) err = std::max(err, std::abs(f.p[k] - p[k]));
    EXPECT_LE(err, 1e-6);
    EXPECT_LE(factor_residual(t, f), 1e-9 * t.scale());
  }
}

TEST(FejerRiesz, FactorResidualOnRandomNonnegative) {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const TrigPoly raw = random_trig(rng, rng.index(1, 10), 0.0);
    const double lift = -global_min(raw).value + rng.uniform(0.01, 1.0);
    std::vector<TrigTerm> terms(raw.terms().begin(), raw.terms().end());
    const TrigPoly t(lift, terms);
    const SpectralFactor f = fejer_riesz(t);
    EXPECT_LE(factor_residual(t, f), 1e-9 * t.scale());
    EXPECT_GT(f.p[0].real(), 0.0);
    EXPECT_EQ(f.p[0].imag(), 0.0);
  }
}

TEST(Autocorrelate, SquaredModulusOnCircle) {
  Rng rng(38);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<cplx> p(rng.index(1, 10));
    for (auto& c : p) c = rng.cnormal();
    const TrigPoly t = from_poly_real_part(autocorrelate(p));
    for (int j = 0; j < 10; ++j) {
      const double phi = rng.uniform(0.0, kTwoPi);
      EXPECT_NEAR(t(phi), std::norm(krzyz::testing::poly_on_circle(p, phi)), 1e-11);
    }
  }
  EXPECT_THROW(autocorrelate(std::vector<cplx>{0.0, 0.0}), Error);
}

TEST(IsExtremalForm, Examples) {
  EXPECT_TRUE(is_extremal_form(CoeffVec({1.0, 0.0, 0.0, cplx(0.0, -0.5)}), 1e-12));
  EXPECT_TRUE(is_extremal_form(CoeffVec({2.0, std::polar(1.0, 0.3)}), 1e-12));
  EXPECT_FALSE(is_extremal_form(CoeffVec({1.0, 0.1, 0.5}), 1e-6));
  EXPECT_FALSE(is_extremal_form(CoeffVec({1.0, 0.0, 0.4}), 1e-6));
  EXPECT_FALSE(is_extremal_form(CoeffVec({1.0}), 1e-6));
}

}  // namespace
