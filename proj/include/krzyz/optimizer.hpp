// SPDX-License-Identifier: Apache-2.0
#pragma once

// Multi-start search for max |f_n| over f = exp(-h), h a positive
// combination of Herglotz kernels. Restart 0 is always the reference
// extremal exp(-(1 - z^n)/(1 + z^n)); the others start from seeded random
// atom sets and are polished by projected BFGS ascent.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "krzyz/extremal.hpp"
#include "krzyz/power_series.hpp"

namespace krzyz {

struct SearchConfig {
  std::size_t n = 1;
  std::size_t m_max = 0;  // 0 means n
  std::size_t restarts = 50;
  std::uint64_t seed = 42;
  std::size_t max_iters = 500;
  double ftol = 1e-10;
  double alpha_min = 1e-4;
  double alpha_max = 6.0;
  double report_tol = 1e-9;   // tolerance recorded in the best point's ConditionReport
  std::size_t threads = 0;    // 0: KRZYZ_THREADS or hardware concurrency
  bool record_trace = false;

  std::size_t atoms_cap() const noexcept { return m_max == 0 ? n : m_max; }
  /// Throws Errc::domain for n < 1, restarts < 1, or inconsistent bounds.
  void validate() const;
};

struct RestartRecord {
  std::size_t restart = 0;
  std::uint64_t seed = 0;
  AtomSet start;
  AtomSet final_atoms;
  double final_value = 0.0;
  std::size_t iterations = 0;
  bool failed = false;
  std::string error;
};

struct TracePoint {
  std::size_t restart;
  std::size_t iter;
  double value;
};

struct SearchResult {
  std::size_t n = 0;
  double best_value = 0.0;
  AtomSet best_atoms;
  std::size_t best_restart = 0;
  std::vector<RestartRecord> per_restart;
  ConditionReport condition_report;
  double gap_to_conjecture = 0.0;  // best_value - 2/e
  std::vector<TracePoint> trace;   // only with record_trace
};

/// |f_n| for f = exp(-herglotz(atoms)).
double objective(const AtomSet& atoms, std::size_t n);

/// Analytic gradient of |f_n|, interleaved as (d/dalpha_1, d/dphi_1, d/dalpha_2, ...)
/// in the order of atoms.atoms(). Throws Errc::nondifferentiable when f_n = 0.
std::vector<double> gradient(const AtomSet& atoms, std::size_t n);

struct LocalResult {
  AtomSet atoms;
  double value = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trace;  // objective after each accepted step
};

/// Projected BFGS ascent from `start`, then drop atoms stuck at alpha_min,
/// merge coincident angles and re-polish. Deterministic.
LocalResult local_optimize(const AtomSet& start, const SearchConfig& cfg);

/// Seeded random start for restart r >= 1 (engine seeded with seed ^ r).
AtomSet random_start(const SearchConfig& cfg, std::size_t restart);

SearchResult search(const SearchConfig& cfg);

/// Worker count from KRZYZ_THREADS (positive integer) or hardware concurrency.
std::size_t default_thread_count();

}  // namespace krzyz
