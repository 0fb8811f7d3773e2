// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "krzyz/error.hpp"
#include "krzyz/optimizer.hpp"
#include "oracles.hpp"

namespace {

using namespace krzyz;
using krzyz::testing::Rng;

AtomSet random_set(Rng& rng, std::size_t m) {
  std::vector<Atom> atoms;
  for (const auto& a : krzyz::testing::random_atoms(rng, m, 0.1, 2.0, 0.1)) atoms.push_back({a.alpha, a.phi});
  return AtomSet(atoms);
}

// |f_n| through the independent series oracle, for finite differences.
double oracle_objective(const std::vector<double>& flat, std::size_t n) {
  std::vector<krzyz::testing::RawAtom> raw;
  for (std::size_t k = 0; k < flat.size(); k += 2) raw.push_back({flat[k], flat[k + 1]});
  return std::abs(krzyz::testing::exp_neg(krzyz::testing::herglotz(raw, n))[n]);
}

TEST(Objective, KnownValues) {
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_NEAR(objective(reference_extremal(n, 1.0).atoms, n), kTwoOverE, 1e-12);
    EXPECT_NEAR(objective(reference_extremal(n, 2.0).atoms, n), 4.0 * std::exp(-2.0), 1e-12);
  }
  EXPECT_LT(objective(AtomSet({{1e-9, 0.3}}), 3), 1e-8);
}

TEST(Gradient, MatchesCentralDifferences) {
  Rng rng(51);
  int checked = 0;
  while (checked < 60) {
    const std::size_t n = rng.index(1, 6);
    const AtomSet atoms = random_set(rng, rng.index(1, n));
    if (objective(atoms, n) < 1e-3) continue;
    ++checked;
    const auto g = gradient(atoms, n);
    const auto x = atoms.flattened();
    ASSERT_EQ(g.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto xp = x, xm = x;
      xp[i] += 1e-6;
      xm[i] -= 1e-6;
      const double fd = (oracle_objective(xp, n) - oracle_objective(xm, n)) / 2e-6;
      EXPECT_LE(std::abs(g[i] - fd), 1e-5 * std::max(std::abs(fd), 1e-3)) << "n=" << n << " i=" << i;
    }
  }
}

TEST(Gradient, StationaryAtReferencePoint) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const AtomSet atoms = reference_extremal(n, 1.0).atoms;
    const auto g = gradient(atoms, n);
    double mass = 0.0, rot = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      mass += atoms.atoms()[k].alpha * g[2 * k];
      rot += g[2 * k + 1];
    }
    EXPECT_NEAR(mass, 0.0, 1e-12);
    EXPECT_NEAR(rot, 0.0, 1e-12);
  }
}

TEST(Gradient, ZeroCoefficientIsNondifferentiable) {
  try {
    gradient(AtomSet({{1.0, 0.0}}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::nondifferentiable);
  }
}

TEST(SearchConfig, Validation) {
  const auto bad = [](auto mutate) {
    SearchConfig c;
    mutate(c);
    try {
      c.validate();
    } catch (const Error& e) {
      return e.code() == Errc::domain;
    }
    return false;
  };
  EXPECT_TRUE(bad([](SearchConfig& c) { c.n = 0; }));
  EXPECT_TRUE(bad([](SearchConfig& c) { c.restarts = 0; }));
  EXPECT_TRUE(bad([](SearchConfig& c) { c.alpha_min = 0.0; }));
  EXPECT_TRUE(bad([](SearchConfig& c) { c.alpha_max = c.alpha_min; }));
  EXPECT_NO_THROW(SearchConfig{}.validate());
}

TEST(RandomStart, DeterministicAndWithinBounds) {
  SearchConfig cfg;
  cfg.n = 5;
  for (std::size_t r = 1; r < 200; ++r) {
    const AtomSet a = random_start(cfg, r);
    EXPECT_EQ(a, random_start(cfg, r));
    ASSERT_GE(a.size(), 1u);
    ASSERT_LE(a.size(), 5u);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_GE(a.atoms()[k].alpha, cfg.alpha_min);
      EXPECT_LE(a.atoms()[k].alpha, cfg.alpha_max);
      const double next = k + 1 < a.size() ? a.atoms()[k + 1].phi : a.atoms()[0].phi + kTwoPi;
      if (a.size() > 1) EXPECT_GE(next - a.atoms()[k].phi, 0.1 - 1e-12);
    }
  }
  EXPECT_NE(random_start(cfg, 1), random_start(cfg, 2));
}

TEST(LocalOptimize, RecoversReferenceFromPerturbation) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const Candidate ref = reference_extremal(n, 1.0);
    std::vector<Atom> atoms;
    for (const auto& a : ref.atoms.atoms()) atoms.push_back({a.alpha * 1.1, a.phi + 0.02});
    SearchConfig cfg;
    cfg.n = n;
    const LocalResult r = local_optimize(AtomSet(atoms), cfg);
    EXPECT_NEAR(r.value, kTwoOverE, 1e-9) << "n=" << n;
    EXPECT_NEAR(r.atoms.total_mass(), 1.0, 1e-4);
  }
}

TEST(LocalOptimize, RotatedStartGivesRotatedResult) {
  Rng rng(52);
  SearchConfig cfg;
  cfg.n = 3;
  for (int trial = 0; trial < 10; ++trial) {
    const AtomSet start = random_set(rng, rng.index(1, 3));
    const double theta = rng.uniform(0.0, kTwoPi);
    const LocalResult a = local_optimize(start, cfg);
    const LocalResult b = local_optimize(start.rotated(theta), cfg);
    EXPECT_NEAR(a.value, b.value, 1e-8);
    if (a.atoms.size() == b.atoms.size()) {
      EXPECT_LE(krzyz::testing::atom_distance(a.atoms.rotated(theta).atoms(), b.atoms.atoms()), 1e-4);
    }
  }
}

SearchConfig small_config(std::size_t n, std::size_t restarts) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.restarts = restarts;
  cfg.seed = 7;
  return cfg;
}

TEST(Search, FindsTwoOverEForSmallN) {
  const SearchResult r = search(small_config(1, 50));
  EXPECT_NEAR(r.best_value, kTwoOverE, 1e-6);
  ASSERT_EQ(r.best_atoms.size(), 1u);
  EXPECT_NEAR(r.best_atoms.atoms()[0].alpha, 1.0, 1e-5);
  EXPECT_NEAR(r.gap_to_conjecture, r.best_value - kTwoOverE, 0.0);
}

TEST(Search, ResultInvariants) {
  for (std::size_t n = 1; n <= 4; ++n) {
    SearchConfig cfg = small_config(n, 30);
    const SearchResult r = search(cfg);
    ASSERT_EQ(r.per_restart.size(), 30u);
    double best = -1.0;
    for (const auto& rec : r.per_restart) {
      if (!rec.failed) best = std::max(best, rec.final_value);
      EXPECT_EQ(rec.seed, cfg.seed ^ rec.restart);
    }
    EXPECT_EQ(r.best_value, best);
    EXPECT_GE(r.best_value, objective(reference_extremal(n, 1.0).atoms, n) - cfg.ftol);
    EXPECT_GE(r.condition_report.h_in_C_margin, -1e-6);
    EXPECT_GE(r.condition_report.min_pairing_over_kernels, -1e-6);
  }
}

TEST(Search, OrthogonalityFollowsFromBoundaryConditions) {
  // At converged finals where Re H >= 0 on the circle and vanishes at every
  // atom, the self-pairing must vanish too. The pairing is the alpha-weighted
  // sum of Re H at the atoms, so the bound carries the total mass.
  const double tol = 1e-7;
  std::size_t hits = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const SearchResult r = search(small_config(n, 40));
    for (const auto& rec : r.per_restart) {
      if (rec.failed) continue;
      const ConditionReport c = verify_conditions(build_candidate(rec.final_atoms, n), tol);
      bool zeros = c.h_in_C;
      for (double v : c.boundary_zero_residuals) zeros = zeros && v <= tol;
      if (!zeros) continue;
      ++hits;
      EXPECT_LE(std::abs(c.pairing_value), tol * std::max(1.0, rec.final_atoms.total_mass()));
    }
  }
  EXPECT_GT(hits, 0u);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(Search, DeterministicAcrossRunsAndThreads) {
  SearchConfig serial = small_config(4, 24);
  serial.threads = 1;
  SearchConfig parallel = serial;
  parallel.threads = 4;
  const SearchResult a = search(serial);
  const SearchResult b = search(serial);
  const SearchResult c = search(parallel);
  for (const SearchResult* other : {&b, &c}) {
    EXPECT_TRUE(same_bits(a.best_value, other->best_value));
    EXPECT_EQ(a.best_atoms, other->best_atoms);
    EXPECT_EQ(a.best_restart, other->best_restart);
    ASSERT_EQ(a.per_restart.size(), other->per_restart.size());
    for (std::size_t r = 0; r < a.per_restart.size(); ++r) {
      EXPECT_TRUE(same_bits(a.per_restart[r].final_value, other->per_restart[r].final_value));
      EXPECT_EQ(a.per_restart[r].final_atoms, other->per_restart[r].final_atoms);
    }
  }
}

TEST(Search, MoreRestartsNeverLowerTheBest) {
  double prev = 0.0;
  for (std::size_t restarts : {1u, 5u, 20u, 40u}) {
    const SearchResult r = search(small_config(3, restarts));
    EXPECT_GE(r.best_value, prev);
    prev = r.best_value;
  }
}

TEST(Search, TraceIsRecordedOnRequest) {
  SearchConfig cfg = small_config(2, 3);
  EXPECT_TRUE(search(cfg).trace.empty());
  cfg.record_trace = true;
  const SearchResult r = search(cfg);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.front().iter, 1u);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i].restart, r.trace[i - 1].restart);
}

TEST(ThreadCount, EnvironmentOverride) {
  ::setenv("KRZYZ_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), 3u);
  ::setenv("KRZYZ_THREADS", "zero", 1);
  EXPECT_GE(default_thread_count(), 1u);
  ::unsetenv("KRZYZ_THREADS");
}

}  // namespace
