// SPDX-License-Identifier: Apache-2.0
#include "krzyz/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>

#include "json_io.hpp"
#include "krzyz/caratheodory.hpp"
#include "krzyz/error.hpp"
#include "krzyz/extremal.hpp"
#include "krzyz/optimizer.hpp"
#include "krzyz/trig_poly.hpp"

namespace krzyz::cli {

namespace {

// A job-file key and how to apply it when the matching flag was not given.
struct JobField {
  const char* key;
  CLI::Option* option;
  std::function<void(const Json&)> apply;
};

template <class T>
JobField number_field(const char* key, CLI::Option* opt, T& target) {
  return {key, opt, [key, &target](const Json& j) {
            const std::string what = std::string("job '") + key + "'";
            if constexpr (std::is_floating_point_v<T>) {
              target = get_number(j, what);
            } else {
              if (!j.is_number_unsigned()) {
                throw InputError(what + ": expected a non-negative integer");
              }
              target = j.get<T>();
            }
          }};
}

// Data inputs accept an inline object or a path string.
JobField data_field(const char* key, CLI::Option* opt, std::string& target) {
  return {key, opt, [key, &target](const Json& j) {
            if (j.is_object()) {
              target = j.dump();
            } else if (j.is_string()) {
              target = j.get<std::string>();
            } else {
              throw InputError(std::string("job '") + key + "': expected an object or a path");
            }
          }};
}

JobField path_field(const char* key, CLI::Option* opt, std::string& target) {
  return {key, opt, [key, &target](const Json& j) {
            if (!j.is_string()) throw InputError(std::string("job '") + key + "': expected a path");
            target = j.get<std::string>();
          }};
}

void apply_job(const std::string& path, const std::vector<JobField>& fields) {
  const Json job = load_json_arg(path, "job");
  for (const auto& item : job.items()) {
    const JobField* field = nullptr;
    for (const auto& f : fields) {
      if (item.key() == f.key) field = &f;
    }
    if (!field) throw InputError("job: unknown field '" + item.key() + "'");
    if (field->option->count() == 0) field->apply(item.value());
  }
}

void check_tol(double tol, const char* name) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError(std::string(name) + " must be positive");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write '" + path + "'");
  return os;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::not_nonnegative:
      return kExitRejected;
    case Errc::domain:
    case Errc::empty_input:
    case Errc::order_mismatch:
      return kExitInput;
    default:
      return kExitNumeric;
  }
}

double max_violation(const ConditionReport& r) {
  double v = std::max(0.0, -r.h_in_C_margin);
  for (double res : r.boundary_zero_residuals) v = std::max(v, res);
  v = std::max(v, std::abs(r.pairing_value));
  return std::max(v, -r.min_pairing_over_kernels);
}

Json report_json(const ConditionReport& r) {
  Json j;
  j["h_in_C"] = r.h_in_C;
  j["h_in_C_margin"] = r.h_in_C_margin;
  j["margin_phi"] = r.margin_phi;
  j["boundary_zero_residuals"] = r.boundary_zero_residuals;
  j["pairing_value"] = r.pairing_value;
  j["min_pairing_over_kernels"] = r.min_pairing_over_kernels;
  j["min_pairing_phi"] = r.min_pairing_phi;
  j["max_violation"] = max_violation(r);
  j["tol"] = r.tol;
  return j;
}

struct CtArgs {
  std::string coeffs;
  double tol = kDefaultMinorTol;
};

int run_ct(const CtArgs& a, std::ostream& out) {
  if (a.coeffs.empty()) throw InputError("ct: --coeffs is required");
  check_tol(a.tol, "--tol");
  const CoeffVec h = parse_coeffs(load_json_arg(a.coeffs, "coeffs"));
  const MinorReport rep = toeplitz_minors(h, a.tol);
  Json j;
  j["minors"] = rep.minors;
  j["classification"] = rep.classification.to_string();
  j["tol"] = rep.tol;
  write_json(out, j);
  return rep.classification.kind == Classification::Kind::outside ? kExitRejected : kExitOk;
}

struct FejerArgs {
  std::string trig;
  double nonneg_tol = FejerRieszOptions{}.nonneg_tol;
};

int run_fejer(const FejerArgs& a, std::ostream& out) {
  if (a.trig.empty()) throw InputError("fejer: --trig is required");
  check_tol(a.nonneg_tol, "--nonneg-tol");
  const TrigPoly t = parse_trig(load_json_arg(a.trig, "trig"));
  FejerRieszOptions opts;
  opts.nonneg_tol = a.nonneg_tol;
  const SpectralFactor f = fejer_riesz(t, opts);
  Json j;
  j["p"] = complex_array(f.p);
  j["max_residual"] = factor_residual(t, f);
  write_json(out, j);
  return kExitOk;
}

struct ExtremalArgs {
  std::string atoms;
  std::size_t n = 0;
  double tol = 1e-10;
  std::string profile;
};

constexpr std::size_t kProfileRows = 4096;

int run_extremal(const ExtremalArgs& a, std::ostream& out) {
  if (a.atoms.empty()) throw InputError("extremal: --atoms is required");
  if (a.n < 1) throw InputError("extremal: --n must be >= 1");
  check_tol(a.tol, "--tol");
  const AtomSet atoms = parse_atoms(load_json_arg(a.atoms, "atoms"));
  const Candidate c = build_candidate(atoms, a.n);
  const ConditionReport rep = verify_conditions(c, a.tol);

  std::ofstream csv;
  if (!a.profile.empty()) csv = open_output(a.profile);

  Json j;
  j["n"] = a.n;
  j["atoms"] = atoms_json(atoms);
  j["abs_f_n"] = std::abs(c.f[a.n]);
  j["over_parameterized"] = c.over_parameterized;
  j["condition_report"] = report_json(rep);
  write_json(out, j);

  if (csv.is_open()) {
    const std::vector<double> prof = re_h_profile(c, kProfileRows);
    csv << "phi,reH\n";
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const double phi = kTwoPi * static_cast<double>(i) / static_cast<double>(prof.size());
      csv << format_double(phi) << ',' << format_double(prof[i]) << '\n';
    }
  }
  return kExitOk;
}

struct BoundArgs {
  SearchConfig cfg;
  std::string out_path;
  std::string trace_path;
};

Json search_json(const SearchResult& r, const SearchConfig& cfg) {
  Json config;
  config["n"] = cfg.n;
  config["m_max"] = cfg.atoms_cap();
  config["restarts"] = cfg.restarts;
  config["seed"] = cfg.seed;
  config["max_iters"] = cfg.max_iters;
  config["ftol"] = cfg.ftol;
  config["alpha_min"] = cfg.alpha_min;
  config["alpha_max"] = cfg.alpha_max;

  Json restarts = Json::array();
  for (const auto& rec : r.per_restart) {
    Json e;
    e["restart"] = rec.restart;
    e["seed"] = rec.seed;
    e["start"] = atoms_json(rec.start);
    e["final_atoms"] = atoms_json(rec.final_atoms);
    e["final_value"] = rec.final_value;
    e["iterations"] = rec.iterations;
    e["failed"] = rec.failed;
    if (rec.failed) e["error"] = rec.error;
    restarts.push_back(std::move(e));
  }

  Json j;
  j["n"] = r.n;
  j["best_value"] = r.best_value;
  j["best_atoms"] = atoms_json(r.best_atoms);
  j["best_restart"] = r.best_restart;
  j["gap_to_conjecture"] = r.gap_to_conjecture;
  j["condition_report"] = report_json(r.condition_report);
  j["config"] = std::move(config);
  j["per_restart"] = std::move(restarts);
  return j;
}

int run_bound(BoundArgs a, std::ostream& out) {
  if (a.cfg.n < 1) throw InputError("bound: --n must be >= 1");
  a.cfg.record_trace = !a.trace_path.empty();
  try {
    a.cfg.validate();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  std::ofstream json_out;
  std::ofstream trace_out;
  if (!a.out_path.empty()) json_out = open_output(a.out_path);
  if (!a.trace_path.empty()) trace_out = open_output(a.trace_path);

  const SearchResult r = search(a.cfg);
  if (json_out.is_open()) write_json(json_out, search_json(r, a.cfg));
  if (trace_out.is_open()) {
    trace_out << "restart,iter,value\n";
    for (const auto& p : r.trace) trace_out << p.restart << ',' << p.iter << ',' << format_double(p.value) << '\n';
  }
  char line[128];
  std::snprintf(line, sizeof line, "n=%zu best=%.17g gap=%.17g", r.n, r.best_value, r.gap_to_conjecture);
  out << line << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical tools for the Krzyz coefficient problem", "krzyz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "krzyz 0.1.0");

  std::string job;
  const auto add_job = [&job](CLI::App* sub) {
    return sub->add_option("--job", job, "JSON job file; flags given explicitly take precedence");
  };

  CtArgs ct_args;
  auto* ct = app.add_subcommand("ct", "Caratheodory-Toeplitz minors and classification");
  auto* ct_coeffs = ct->add_option("--coeffs", ct_args.coeffs, R"(JSON {"h": [[re,im],...]} inline or as a path)");
  auto* ct_tol = ct->add_option("--tol", ct_args.tol, "Classification tolerance")->capture_default_str();
  auto* ct_job = add_job(ct);

  FejerArgs fejer_args;
  auto* fejer = app.add_subcommand("fejer", "Outer spectral factor of a nonnegative trigonometric polynomial");
  auto* fejer_trig = fejer->add_option("--trig", fejer_args.trig, R"(JSON {"a0": r, "terms": [[a,b],...]} inline or as a path)");
  auto* fejer_tol = fejer->add_option("--nonneg-tol", fejer_args.nonneg_tol, "Relative nonnegativity tolerance")->capture_default_str();
  auto* fejer_job = add_job(fejer);

  ExtremalArgs ex_args;
  auto* ex = app.add_subcommand("extremal", "Optimality conditions for an atom set");
  auto* ex_atoms = ex->add_option("--atoms", ex_args.atoms, R"(JSON {"atoms": [[alpha,phi],...]} inline or as a path)");
  auto* ex_n = ex->add_option("--n", ex_args.n, "Coefficient index");
  auto* ex_tol = ex->add_option("--tol", ex_args.tol, "Tolerance recorded in the report")->capture_default_str();
  auto* ex_profile = ex->add_option("--emit-profile", ex_args.profile, "CSV of phi, Re H(e^{i phi}) on 4096 points");
  auto* ex_job = add_job(ex);

  BoundArgs b_args;
  SearchConfig& cfg = b_args.cfg;
  auto* bound = app.add_subcommand("bound", "Multi-start search for max |f_n|");
  auto* b_n = bound->add_option("--n", cfg.n, "Coefficient index")->capture_default_str();
  auto* b_restarts = bound->add_option("--restarts", cfg.restarts, "Number of restarts")->capture_default_str();
  auto* b_seed = bound->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  auto* b_mmax = bound->add_option("--m-max", cfg.m_max, "Maximum atom count (0: n)")->capture_default_str();
  auto* b_iters = bound->add_option("--max-iters", cfg.max_iters, "Iteration cap per local polish")->capture_default_str();
  auto* b_ftol = bound->add_option("--ftol", cfg.ftol, "Objective stall tolerance")->capture_default_str();
  auto* b_amin = bound->add_option("--alpha-min", cfg.alpha_min, "Lower weight bound")->capture_default_str();
  auto* b_amax = bound->add_option("--alpha-max", cfg.alpha_max, "Upper weight bound")->capture_default_str();
  auto* b_threads = bound->add_option("--threads", cfg.threads, "Worker threads (0: KRZYZ_THREADS or all cores)");
  auto* b_out = bound->add_option("--out", b_args.out_path, "SearchResult JSON output path");
  auto* b_trace = bound->add_option("--trace", b_args.trace_path, "Trace CSV output path");
  auto* b_job = add_job(bound);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (ct->parsed()) {
      if (ct_job->count()) {
        apply_job(job, {data_field("coeffs", ct_coeffs, ct_args.coeffs), number_field("tol", ct_tol, ct_args.tol)});
      }
      return run_ct(ct_args, out);
    }
    if (fejer->parsed()) {
      if (fejer_job->count()) {
        apply_job(job, {data_field("trig", fejer_trig, fejer_args.trig),
                        number_field("nonneg-tol", fejer_tol, fejer_args.nonneg_tol)});
      }
      return run_fejer(fejer_args, out);
    }
    if (ex->parsed()) {
      if (ex_job->count()) {
        apply_job(job, {data_field("atoms", ex_atoms, ex_args.atoms), number_field("n", ex_n, ex_args.n),
                        number_field("tol", ex_tol, ex_args.tol), path_field("emit-profile", ex_profile, ex_args.profile)});
      }
      return run_extremal(ex_args, out);
    }
    if (b_job->count()) {
      apply_job(job, {number_field("n", b_n, cfg.n), number_field("restarts", b_restarts, cfg.restarts),
                      number_field("seed", b_seed, cfg.seed), number_field("m-max", b_mmax, cfg.m_max),
                      number_field("max-iters", b_iters, cfg.max_iters), number_field("ftol", b_ftol, cfg.ftol),
                      number_field("alpha-min", b_amin, cfg.alpha_min), number_field("alpha-max", b_amax, cfg.alpha_max),
                      number_field("threads", b_threads, cfg.threads), path_field("out", b_out, b_args.out_path),
                      path_field("trace", b_trace, b_args.trace_path)});
    }
    return run_bound(b_args, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace krzyz::cli
