// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "krzyz/caratheodory.hpp"
#include "krzyz/error.hpp"
#include "oracles.hpp"

namespace {

using namespace krzyz;
using krzyz::testing::Rng;

CoeffVec real_h(std::initializer_list<double> v) {
  std::vector<cplx> h;
  for (double x : v) h.emplace_back(x, 0.0);
  return CoeffVec(h);
}

AtomSet to_set(const std::vector<krzyz::testing::RawAtom>& raw) {
  std::vector<Atom> atoms;
  for (const auto& a : raw) atoms.push_back({a.alpha, a.phi});
  return AtomSet(atoms);
}

TEST(ToeplitzBlock, IsHermitianWithDoubledDiagonal) {
  const CoeffVec h({2.0, cplx(1, 1), cplx(0, -0.5)});
  const auto t = toeplitz_block(h, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(t[r * 3 + r], cplx(4.0, 0.0));
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(t[r * 3 + c], std::conj(t[c * 3 + r]));
  }
  EXPECT_EQ(t[1], cplx(1, 1));
  EXPECT_EQ(t[2], cplx(0, -0.5));
  EXPECT_THROW(toeplitz_block(h, 3), Error);
}

TEST(ToeplitzMinors, SmallExamples) {
  const MinorReport a = toeplitz_minors(real_h({1, 2}));
  ASSERT_EQ(a.minors.size(), 1u);
  EXPECT_NEAR(a.minors[0], 0.0, 1e-14);
  EXPECT_EQ(a.classification.to_string(), "Boundary(1)");

  const MinorReport b = toeplitz_minors(real_h({1, 0, -2}));
  EXPECT_NEAR(b.minors[0], 4.0, 1e-14);
  EXPECT_NEAR(b.minors[1], 0.0, 1e-13);
  EXPECT_EQ(b.classification, Classification::boundary(2));

  const MinorReport c = toeplitz_minors(real_h({1, 3}));
  EXPECT_NEAR(c.minors[0], -5.0, 1e-14);
  EXPECT_EQ(c.classification.to_string(), "Outside");

  EXPECT_EQ(toeplitz_minors(real_h({1, 1})).classification.to_string(), "Interior");
}

TEST(ToeplitzMinors, InvalidInput) {
  for (const auto& h : {real_h({0, 1}), real_h({-1, 0.5}), real_h({1})}) {
    try {
      toeplitz_minors(h);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::domain);
    }
  }
  EXPECT_THROW(toeplitz_minors(CoeffVec({cplx(1, 1), 0.5})), Error);
}

TEST(ToeplitzMinors, MatchDeterminantOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.index(1, 10);
    std::vector<cplx> h(n + 1);
    h[0] = rng.uniform(0.5, 3.0);
    for (std::size_t j = 1; j <= n; ++j) h[j] = rng.cnormal();
    const MinorReport rep = toeplitz_minors(CoeffVec(h));
    for (std::size_t k = 1; k <= n; ++k) {
      const double want = krzyz::testing::toeplitz_det(h, k);
      EXPECT_NEAR(rep.minors[k - 1], want, 1e-9 * std::max(1.0, std::pow(2.0 * h[0].real() + 2.0, k + 1)))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(Membership, MoreAtomsThanOrderIsInterior) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.index(1, 8);
    const auto raw = krzyz::testing::random_atoms(rng, n + 1 + rng.index(0, 3), 0.2, 2.0, 0.3);
    EXPECT_EQ(membership(CoeffVec(krzyz::testing::herglotz(raw, n))), Classification::interior()) << "n=" << n;
  }
}

TEST(Membership, BoundaryRankEqualsAtomCount) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.index(1, 10);
    const std::size_t m = rng.index(1, n);
    const auto raw = krzyz::testing::random_atoms(rng, m, 0.1, 2.0, 0.1);
    EXPECT_EQ(membership(CoeffVec(krzyz::testing::herglotz(raw, n))), Classification::boundary(m))
        << "n=" << n << " m=" << m;
  }
}

TEST(Membership, ShrinkingMassLeavesTheBody) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.index(1, 8);
    const auto raw = krzyz::testing::random_atoms(rng, rng.index(1, n), 0.2, 2.0, 0.2);
    auto h = krzyz::testing::herglotz(raw, n);
    h[0] *= 0.99;
    EXPECT_EQ(membership(CoeffVec(h)), Classification::outside());
  }
}

TEST(Membership, ScaleInvariant) {
  Rng rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.index(1, 8);
    const auto raw = krzyz::testing::random_atoms(rng, rng.index(1, n + 2), 0.2, 2.0, 0.2);
    const CoeffVec h(krzyz::testing::herglotz(raw, n));
    const Classification c = membership(h);
    for (double s : {1e-3, 0.1, 10.0, 1e3}) EXPECT_EQ(membership(h.scaled(s)), c);
  }
}

TEST(RecoverAtoms, RoundTrip) {
  Rng rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.index(1, 10);
    const std::size_t m = rng.index(1, n);
    const auto raw = krzyz::testing::random_atoms(rng, m, 0.1, 2.0, 0.1);
    const AtomSet got = recover_atoms(CoeffVec(krzyz::testing::herglotz(raw, n)));
    EXPECT_LE(krzyz::testing::atom_distance(raw, got.atoms()), 1e-6) << "n=" << n << " m=" << m;
  }
}

TEST(RecoverAtoms, RejectsInteriorAndOutside) {
  for (const auto& h : {real_h({1, 1}), real_h({1, 3})}) {
    try {
      recover_atoms(h);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::not_on_boundary);
    }
  }
}

TEST(RecoverAtoms, ReferencePoint) {
  // h = (t, 0, ..., 0, -2t): n atoms of weight t/n at the n-th roots of -1.
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<cplx> h(n + 1);
    h[0] = 1.0;
    h[n] = -2.0;
    const AtomSet got = recover_atoms(CoeffVec(h));
    ASSERT_EQ(got.size(), n);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(got.atoms()[k].alpha, 1.0 / n, 1e-10);
      EXPECT_NEAR(got.atoms()[k].phi, (std::numbers::pi + kTwoPi * k) / n, 1e-10);
    }
  }
}

}  // namespace
