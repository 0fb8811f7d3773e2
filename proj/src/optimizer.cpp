// SPDX-License-Identifier: Apache-2.0
#include "krzyz/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "krzyz/error.hpp"
#include "krzyz/polynomial.hpp"

namespace krzyz {

namespace {

// Parameters are interleaved (alpha_1, phi_1, alpha_2, phi_2, ...).
struct Eval {
  double value;
  Eigen::VectorXd grad;  // of |f_n|
};

CoeffVec raw_herglotz(const Eigen::VectorXd& x, std::size_t n) {
  std::vector<cplx> h(n + 1);
  const Eigen::Index m = x.size() / 2;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double alpha = x(2 * k);
    const cplx step = std::polar(1.0, x(2 * k + 1));
    h[0] += alpha;
    cplx w = step;
    for (std::size_t j = 1; j <= n; ++j) {
      h[j] += 2.0 * alpha * w;
      w *= step;
    }
  }
  return CoeffVec(std::move(h));
}

double raw_value(const Eigen::VectorXd& x, std::size_t n) {
  return std::abs(series_exp_neg(raw_herglotz(x, n))[n]);
}

Eval raw_eval(const Eigen::VectorXd& x, std::size_t n) {
  const CoeffVec f = series_exp_neg(raw_herglotz(x, n));
  const cplx fn = f[n];
  const double mod = std::abs(fn);
  if (!(mod > 0.0)) throw Error(Errc::nondifferentiable, "|f_n| is not differentiable at f_n = 0");
  const cplx unit = std::conj(fn) / mod;

  // A(w) = sum_{j=1}^{n} f_{n-j} w^j; then (f * K_phi)_n = f_n + 2 A(w) and
  // d f_n / d phi = -2 i alpha w A'(w).
  std::vector<cplx> a(n + 1);
  for (std::size_t j = 1; j <= n; ++j) a[j] = f[n - j];

  Eval out{mod, Eigen::VectorXd(x.size())};
  const Eigen::Index m = x.size() / 2;
  for (Eigen::Index k = 0; k < m; ++k) {
    const cplx w = std::polar(1.0, x(2 * k + 1));
    const auto [aw, daw] = poly_eval_deriv(a, w);
    const cplx dalpha = -(fn + 2.0 * aw);
    const cplx dphi = -2.0 * cplx(0.0, 1.0) * x(2 * k) * w * daw;
    out.grad(2 * k) = (unit * dalpha).real();
    out.grad(2 * k + 1) = (unit * dphi).real();
  }
  return out;
}

Eigen::VectorXd to_params(const AtomSet& atoms) {
  const auto flat = atoms.flattened();
  return Eigen::Map<const Eigen::VectorXd>(flat.data(), static_cast<Eigen::Index>(flat.size()));
}

std::vector<Atom> to_atoms(const Eigen::VectorXd& x) {
  std::vector<Atom> out(static_cast<std::size_t>(x.size() / 2));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = {x(static_cast<Eigen::Index>(2 * k)), x(static_cast<Eigen::Index>(2 * k + 1))};
  }
  return out;
}

struct Polished {
  Eigen::VectorXd x;
  double value;
  std::size_t iterations;
};

// Projected BFGS on -|f_n| with Armijo backtracking; alpha in [lo, hi], phi free.
Polished bfgs_ascent(Eigen::VectorXd x, const SearchConfig& cfg, std::vector<double>* trace) {
  const Eigen::Index dim = x.size();
  const double lo = cfg.alpha_min;
  const double hi = cfg.alpha_max;
  const auto project = [&](Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < dim; i += 2) v(i) = std::clamp(v(i), lo, hi);
  };
  // Zero the components that would leave the box.
  const auto mask = [&](const Eigen::VectorXd& at, Eigen::VectorXd& d) {
    for (Eigen::Index i = 0; i < dim; i += 2) {
      if ((at(i) <= lo && d(i) < 0.0) || (at(i) >= hi && d(i) > 0.0)) d(i) = 0.0;
    }
  };

  project(x);
  Eval cur = raw_eval(x, cfg.n);
  Eigen::VectorXd g = -cur.grad;  // gradient of the minimized function
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(dim, dim);
  bool fresh = true;
  std::size_t it = 0;
  int stalls = 0;
  int pinned_iters = 0;
  constexpr int kPinnedPatience = 5;

  while (it < cfg.max_iters) {
    // Bound-active weights are frozen and the step uses the free block of
    // hinv. An atom pinned at alpha_min for a few iterations ends the polish;
    // the caller drops it and polishes the rest.
    std::vector<bool> active(static_cast<std::size_t>(dim), false);
    bool pinned = false;
    for (Eigen::Index i = 0; i < dim; i += 2) {
      if (x(i) <= lo && g(i) > 0.0) {
        active[static_cast<std::size_t>(i)] = true;
        pinned = true;
      } else if (x(i) >= hi && g(i) < 0.0) {
        active[static_cast<std::size_t>(i)] = true;
      }
    }
    pinned_iters = pinned ? pinned_iters + 1 : 0;
    if (pinned_iters > kPinnedPatience) break;
    Eigen::VectorXd gf = g;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (active[static_cast<std::size_t>(i)]) gf(i) = 0.0;
    }
    Eigen::VectorXd d = -hinv * gf;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (active[static_cast<std::size_t>(i)]) d(i) = 0.0;
    }
    mask(x, d);
    if (!(g.dot(d) < 0.0)) {
      hinv.setIdentity();
      fresh = true;
      d = -gf;
      if (!(g.dot(d) < 0.0)) break;  // projected gradient vanishes
    }

    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd xn;
    double fn_val = 0.0;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * d;
      project(xn);
      fn_val = raw_value(xn, cfg.n);
      if (-fn_val <= -cur.value + 1e-4 * g.dot(xn - x)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++it;
    if (!accepted) {
      if (fresh) break;
      hinv.setIdentity();
      fresh = true;
      continue;
    }

    const Eval next = raw_eval(xn, cfg.n);
    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd y = (-next.grad) - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) +
             rho * s * s.transpose();
      fresh = false;
    }

    const double gain = next.value - cur.value;
    x = xn;
    cur = next;
    g = -cur.grad;
    if (trace) trace->push_back(cur.value);

    if (std::abs(gain) <= cfg.ftol * std::max(1.0, cur.value)) {
      if (++stalls >= 2) break;
    } else {
      stalls = 0;
    }
  }
  return {x, cur.value, it};
}

// Drops atoms pinned at alpha_min and merges angles closer than `merge`.
std::vector<Atom> prune(const Eigen::VectorXd& x, const SearchConfig& cfg, double merge) {
  std::vector<Atom> atoms = to_atoms(x);
  std::vector<Atom> kept;
  for (const auto& a : atoms) {
    if (a.alpha > cfg.alpha_min * (1.0 + 1e-6)) kept.push_back(a);
  }
  if (kept.empty()) {
    kept.push_back(*std::max_element(atoms.begin(), atoms.end(),
                                     [](const Atom& p, const Atom& q) { return p.alpha < q.alpha; }));
  }
  for (auto& a : kept) a.phi = wrap_angle(a.phi);
  std::sort(kept.begin(), kept.end(), [](const Atom& p, const Atom& q) { return p.phi < q.phi; });

  std::vector<Atom> merged;
  for (const auto& a : kept) {
    if (!merged.empty() && std::abs(angle_diff(merged.back().phi, a.phi)) < merge) {
      Atom& b = merged.back();
      const double w = b.alpha + a.alpha;
      b.phi = wrap_angle(b.phi + angle_diff(b.phi, a.phi) * a.alpha / w);
      b.alpha = w;
    } else {
      merged.push_back(a);
    }
  }
  if (merged.size() > 1 && std::abs(angle_diff(merged.back().phi, merged.front().phi)) < merge) {
    Atom& b = merged.front();
    const Atom a = merged.back();
    const double w = b.alpha + a.alpha;
    b.phi = wrap_angle(b.phi + angle_diff(b.phi, a.phi) * a.alpha / w);
    b.alpha = w;
    merged.pop_back();
  }
  return merged;
}

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

void SearchConfig::validate() const {
  if (n < 1) throw Error(Errc::domain, "search: n must be >= 1");
  if (restarts < 1) throw Error(Errc::domain, "search: restarts must be >= 1");
  if (max_iters < 1) throw Error(Errc::domain, "search: max_iters must be >= 1");
  if (!(ftol > 0.0)) throw Error(Errc::domain, "search: ftol must be positive");
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min)) {
    throw Error(Errc::domain, "search: need 0 < alpha_min < alpha_max");
  }
}

double objective(const AtomSet& atoms, std::size_t n) {
  return std::abs(series_exp_neg(herglotz_coeffs(atoms, n))[n]);
}

std::vector<double> gradient(const AtomSet& atoms, std::size_t n) {
  if (atoms.empty()) throw Error(Errc::empty_input, "gradient: empty atom set");
  const Eval e = raw_eval(to_params(atoms), n);
  return {e.grad.data(), e.grad.data() + e.grad.size()};
}

LocalResult local_optimize(const AtomSet& start, const SearchConfig& cfg) {
  if (start.empty()) throw Error(Errc::empty_input, "local_optimize: empty start");
  constexpr double kMergeAngle = 1e-6;
  LocalResult out;
  Eigen::VectorXd x = to_params(start);
  for (std::size_t round = 0; round <= start.size(); ++round) {
    const Polished p = bfgs_ascent(x, cfg, &out.trace);
    out.iterations += p.iterations;
    const std::vector<Atom> pruned = prune(p.x, cfg, kMergeAngle);
    if (2 * pruned.size() == static_cast<std::size_t>(p.x.size())) {
      x = p.x;
      break;
    }
    x = to_params(AtomSet(pruned));
  }
  out.atoms = AtomSet(to_atoms(x));
  out.value = objective(out.atoms, cfg.n);
  return out;
}

AtomSet random_start(const SearchConfig& cfg, std::size_t restart) {
  std::mt19937_64 eng(cfg.seed ^ static_cast<std::uint64_t>(restart));
  const std::size_t m = 1 + static_cast<std::size_t>(eng() % cfg.atoms_cap());
  const double log_lo = std::log(cfg.alpha_min);
  const double log_hi = std::log(cfg.alpha_max);

  std::vector<Atom> atoms(m);
  for (auto& a : atoms) a.alpha = std::exp(log_lo + uniform01(eng) * (log_hi - log_lo));

  // Uniform angles conditioned on a minimum circular gap: draw in the
  // shortened circle, sort, then re-insert the gaps.
  const double gap = std::min(0.1, kTwoPi / (2.0 * static_cast<double>(m)));
  const double span = kTwoPi - static_cast<double>(m) * gap;
  std::vector<double> u(m);
  for (auto& v : u) v = uniform01(eng) * span;
  std::sort(u.begin(), u.end());
  const double offset = uniform01(eng) * kTwoPi;
  for (std::size_t k = 0; k < m; ++k) atoms[k].phi = u[k] + static_cast<double>(k) * gap + offset;
  return AtomSet(std::move(atoms));
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("KRZYZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

SearchResult search(const SearchConfig& cfg) {
  cfg.validate();
  const std::size_t restarts = cfg.restarts;
  std::vector<RestartRecord> records(restarts);
  std::vector<std::vector<double>> traces(restarts);

  const auto run_one = [&](std::size_t r) {
    RestartRecord& rec = records[r];
    rec.restart = r;
    rec.seed = cfg.seed ^ static_cast<std::uint64_t>(r);
    try {
      rec.start = r == 0 ? reference_extremal(cfg.n, 1.0).atoms : random_start(cfg, r);
      LocalResult res = local_optimize(rec.start, cfg);
      rec.final_atoms = std::move(res.atoms);
      rec.final_value = res.value;
      rec.iterations = res.iterations;
      if (cfg.record_trace) traces[r] = std::move(res.trace);
    } catch (const Error& e) {
      rec.failed = true;
      rec.error = e.what();
    }
  };

  const std::size_t workers = std::min(restarts, cfg.threads == 0 ? default_thread_count() : cfg.threads);
  if (workers <= 1) {
    for (std::size_t r = 0; r < restarts; ++r) run_one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) run_one(r);
      });
    }
  }

  SearchResult out;
  out.n = cfg.n;
  bool any = false;
  for (const auto& rec : records) {
    if (!rec.failed && (!any || rec.final_value > out.best_value)) {
      out.best_value = rec.final_value;
      any = true;
    }
  }
  if (!any) throw Error(Errc::numeric, "search: every restart failed");

  // Among finals within ftol of the maximum, the lexicographically smallest
  // canonical atom vector wins.
  bool chosen = false;
  std::vector<double> best_flat;
  for (const auto& rec : records) {
    if (rec.failed || rec.final_value < out.best_value - cfg.ftol) continue;
    auto flat = rec.final_atoms.flattened();
    if (!chosen || std::lexicographical_compare(flat.begin(), flat.end(), best_flat.begin(), best_flat.end())) {
      best_flat = std::move(flat);
      out.best_atoms = rec.final_atoms;
      out.best_restart = rec.restart;
      chosen = true;
    }
  }

  out.per_restart = std::move(records);
  out.gap_to_conjecture = out.best_value - kTwoOverE;
  out.condition_report = verify_conditions(build_candidate(out.best_atoms, cfg.n), cfg.report_tol);
  if (cfg.record_trace) {
    for (std::size_t r = 0; r < restarts; ++r) {
      for (std::size_t i = 0; i < traces[r].size(); ++i) out.trace.push_back({r, i + 1, traces[r][i]});
    }
  }
  return out;
}

}  // namespace krzyz
