// Copyright 2026 The qmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qmetro: correlation measures, sweeps and simulations on state files.
//
// Exit status: 0 success, 2 bad input or configuration, 3 optimizer did not
// converge (the value is still printed), 4 the generator carries no
// information.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmetro/qmetro.hpp"

namespace {

using namespace qmetro;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitZeroInformation = 4;

struct OptimizerFlags {
  int restarts = 16;
  double tol = 1e-9;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    app->add_option("--tol", tol, "Optimizer value tolerance")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Random seed");
  }

  OptimizerConfig config() const {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.tol = tol;
    cfg.seed = seed;
    return cfg;
  }
};

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

RealVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// A local observable acts on subsystem A; anything else must span the
/// whole space.
Matrix lift(const Observable& o, const DensityMatrix& rho) {
  if (o.dim() == rho.dim()) return o.matrix();
  return embed(o.matrix(), rho.dims(), 0);
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

nlohmann::json certificate_json(const MeasureResult& r) {
  nlohmann::json j;
  if (r.certificate) j["certificate"] = observable_to_json(*r.certificate);
  if (r.direction) j["direction"] = {(*r.direction)(0), (*r.direction)(1), (*r.direction)(2)};
  return j;
}

/*******************************************************************************
 * measure
 ******************************************************************************/

struct MeasureArgs {
  std::string state;
  bool lqu = false, ip = false, ds = false, skew = false, qfi = false, chernoff = false;
  std::vector<double> spectrum;
  std::string side = "A";
  double lambda = std::numbers::pi / 4;
  std::string observable;
  std::string other;
  std::string json;
  bool general = false;
  OptimizerFlags opt;
};

int cmd_measure(const MeasureArgs& a) {
  const int selected = a.lqu + a.ip + a.ds + a.skew + a.qfi + a.chernoff;
  if (selected != 1) {
    fail(ErrorCode::ValidationError,
         "choose exactly one of --lqu --ip --ds --skew --qfi --chernoff");
  }
  const DensityMatrix rho = load_state(a.state);
  const OptimizerConfig cfg = a.opt.config();
  const Side side = a.side == "B" ? Side::B : Side::A;
  std::optional<RealVector> spectrum;
  if (!a.spectrum.empty()) spectrum = to_vector(a.spectrum);

  nlohmann::json out{{"state", a.state}};
  MeasureResult result;
  std::string name;

  if (a.lqu || a.ip || a.ds) {
    if (rho.subsystems() != 2) fail(ErrorCode::DimMismatch, "measure needs a bipartite state");
    const int site = site_index(side);
    const int d = rho.subsystem_dim(site);
    const bool closed = side == Side::A && d == 2 && !a.general;
    if (a.lqu) {
      name = "lqu";
      result = closed && !spectrum ? lqu_qubit_qudit(rho)
                                   : lqu_general(rho, spectrum.value_or(default_spectrum(d)), side, cfg);
    } else if (a.ip) {
      name = "ip";
      if (side != Side::A) fail(ErrorCode::ValidationError, "--ip measures subsystem A");
      result = closed && !spectrum ? ip_qubit_qudit(rho)
                                   : ip_general(rho, spectrum.value_or(default_spectrum(d)), cfg);
    } else {
      name = "ds";
      if (side != Side::A) fail(ErrorCode::ValidationError, "--ds measures subsystem A");
      result = closed && !spectrum
                   ? ds_qubit_qudit(rho, a.lambda)
                   : ds_general(rho, spectrum.value_or(a.lambda * default_spectrum(d)), cfg);
      out["lambda"] = a.lambda;
    }
    out.update(certificate_json(result));
  } else if (a.skew || a.qfi) {
    name = a.skew ? "skew" : "qfi";
    const Observable o = a.observable.empty()
                             ? Observable::diagonal(default_spectrum(rho.dims().front()))
                             : load_observable(a.observable);
    const HermitianOperator op(lift(o, rho), 1e-9);
    result.value = a.skew ? skew_information(rho, op) : qmetro::qfi(rho, op);
    out["observable"] = observable_to_json(o);
  } else {
    name = "chernoff";
    if (a.other.empty()) fail(ErrorCode::ValidationError, "--chernoff needs --other STATE");
    const DensityMatrix sigma = load_state(a.other);
    const ChernoffResult c = qmetro::chernoff(rho, sigma);
    result.value = c.q_value;
    out["other"] = a.other;
    out["s_star"] = c.s_star;
    out["exponent"] = c.exponent;
  }

  out["measure"] = name;
  out["value"] = result.value;
  out["restarts"] = result.restarts_used;
  out["converged"] = result.converged;
  out["evaluations"] = result.evaluations;

  std::cout << "measure " << name << '\n' << "value " << fixed6(result.value) << '\n';
  if (result.direction) {
    const auto& n = *result.direction;
    std::cout << "direction " << fixed6(n(0)) << ' ' << fixed6(n(1)) << ' ' << fixed6(n(2)) << '\n';
  } else if (result.certificate) {
    std::cout << "certificate spectrum";
    for (Eigen::Index k = 0; k < result.certificate->spectrum().size(); ++k) {
      std::cout << ' ' << fixed6(result.certificate->spectrum()(k));
    }
    std::cout << '\n';
  }
  if (out.contains("exponent")) {
    std::cout << "s_star " << fixed6(out["s_star"].get<double>()) << '\n'
              << "exponent " << fixed6(out["exponent"].get<double>()) << '\n';
  }
  std::cout << "restarts " << result.restarts_used << '\n'
            << "converged " << (result.converged ? "yes" : "no") << '\n';
  if (!a.json.empty()) write_json_file(out, a.json);
  return result.converged ? kExitOk : kExitNoConvergence;
}

/*******************************************************************************
 * sweep
 ******************************************************************************/

struct SweepArgs {
  std::string family;
  double from = 0.0, to = 1.0;
  int steps = 100;
  std::vector<double> grid;
  std::vector<std::string> measures;
  double lambda = std::numbers::pi / 4;
  std::string observable;
  std::string out;
  OptimizerFlags opt;
};

int cmd_sweep(const SweepArgs& a, bool explicit_grid) {
  const Family family = parse_family(a.family);
  std::vector<std::string> measures = a.measures;
  if (measures.empty()) {
    measures = family == Family::Fig1 ? std::vector<std::string>{"variance", "skew", "difference"}
                                      : std::vector<std::string>{"lqu", "ip", "ds"};
  }
  SweepOptions opt;
  opt.lambda = a.lambda;
  opt.optimizer = a.opt.config();
  if (!a.observable.empty()) opt.observable = load_observable(a.observable).op();
  const std::vector<double> grid = explicit_grid ? a.grid : linear_grid(a.from, a.to, a.steps);
  const Table t = sweep_states(family, grid, measures, opt);
  if (a.out.empty()) {
    t.write_tsv(std::cout);
  } else {
    t.save_tsv(a.out);
    std::cout << "rows " << t.rows.size() << '\n';
  }
  return kExitOk;
}

/*******************************************************************************
 * simulate
 ******************************************************************************/

struct SimulateArgs {
  std::string kind;
  std::string state;
  std::string observable;
  std::string other;
  bool worst_case = false;
  std::vector<double> spectrum;
  double lambda = std::numbers::pi / 4;
  double theta0 = 0.0;
  long n = 10000;
  int trials = 200;
  int points = 2001;
  int n_max = 5;
  std::string out;
  std::string tsv;
  OptimizerFlags opt;
};

int cmd_simulate(const SimulateArgs& a) {
  const DensityMatrix rho = load_state(a.state);
  std::optional<Observable> generator;
  if (!a.observable.empty()) generator = load_observable(a.observable);
  std::optional<RealVector> spectrum;
  if (!a.spectrum.empty()) spectrum = to_vector(a.spectrum);
  const int da = rho.dims().front();

  if (a.kind == "estimation") {
    if (!generator && !a.worst_case) generator = Observable::diagonal(default_spectrum(da));
    EstimationConfig cfg{rho};
    cfg.generator = generator;
    cfg.worst_case = a.worst_case;
    cfg.spectrum = spectrum;
    cfg.theta0 = a.theta0;
    cfg.n = a.n;
    cfg.trials = a.trials;
    cfg.grid_points = a.points;
    cfg.seed = a.opt.seed;
    cfg.optimizer = a.opt.config();
    const ExperimentRecord rec = run_phase_estimation(cfg);
    std::cout << "variance " << format_number(rec.variance) << '\n'
              << "bound " << format_number(rec.bound) << '\n'
              << "ratio " << format_number(rec.ratio) << '\n'
              << "bias " << format_number(rec.bias) << '\n';
    if (!a.out.empty()) write_json_file(rec.to_json(), a.out);
    if (!a.tsv.empty()) rec.table().save_tsv(a.tsv);
    return kExitOk;
  }

  DiscriminationRecord rec = [&] {
    if (!a.other.empty()) {
      DiscriminationRecord r = discriminate_pair(rho, load_state(a.other), a.n_max);
      r.config["other"] = a.other;
      return r;
    }
    DiscriminationConfig cfg{rho};
    cfg.generator = generator;
    if (!generator && !a.worst_case) {
      cfg.generator = Observable::diagonal(a.lambda * default_spectrum(da));
    }
    cfg.worst_case = a.worst_case;
    cfg.spectrum = spectrum;
    if (a.worst_case && !spectrum) cfg.spectrum = a.lambda * default_spectrum(da);
    cfg.n_max = a.n_max;
    cfg.optimizer = a.opt.config();
    return run_discrimination(cfg);
  }();
  std::cout << "exponent " << format_number(rec.chernoff.exponent) << '\n'
            << "rate " << format_number(rec.rates.back()) << '\n'
            << "gap " << format_number(rec.gap) << '\n';
  if (!a.out.empty()) write_json_file(rec.to_json(), a.out);
  if (!a.tsv.empty()) rec.table().save_tsv(a.tsv);
  return kExitOk;
}

/*******************************************************************************
 * validate
 ******************************************************************************/

int cmd_validate(const std::string& state, const std::string& observable) {
  const DensityMatrix rho = load_state(state);
  std::cout << "valid state dims";
  for (int d : rho.dims()) std::cout << ' ' << d;
  std::cout << '\n' << "purity " << format_number(rho.purity()) << '\n';
  if (!observable.empty()) {
    const Observable o = load_observable(observable);
    if (o.dim() != rho.dim() && o.dim() != rho.dims().front()) {
      fail(ErrorCode::ValidationError, "observable fits neither subsystem A nor the whole space");
    }
    std::cout << "valid observable dim " << o.dim() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum correlation measures for metrology and discrimination"};
  app.require_subcommand(1);
  app.set_config("--config");

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "Evaluate a measure on a state file");
  m->add_option("state", measure.state, "State JSON file")->required();
  m->add_flag("--lqu", measure.lqu, "Local quantum uncertainty");
  m->add_flag("--ip", measure.ip, "Interferometric power");
  m->add_flag("--ds", measure.ds, "Discriminating strength");
  m->add_flag("--skew", measure.skew, "Skew information of --observable");
  m->add_flag("--qfi", measure.qfi, "Quantum Fisher information of --observable");
  m->add_flag("--chernoff", measure.chernoff, "Chernoff quantity against --other");
  m->add_option("--spectrum", measure.spectrum, "Observable spectrum")->delimiter(',');
  m->add_option("--side", measure.side, "Measured subsystem")->check(CLI::IsMember({"A", "B"}));
  m->add_option("--lambda", measure.lambda, "Half-gap of the qubit DS spectrum");
  m->add_option("--observable", measure.observable, "Observable JSON file");
  m->add_option("--other", measure.other, "Second state JSON file");
  m->add_option("--json", measure.json, "Write the result as JSON");
  m->add_flag("--general", measure.general, "Force the optimizer even for a qubit");
  measure.opt.attach(m);

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Tabulate measures along a state family");
  s->add_option("--family", sweep.family, "fig1 or werner")->required();
  s->add_option("--from", sweep.from, "First parameter value");
  s->add_option("--to", sweep.to, "Last parameter value");
  s->add_option("--steps", sweep.steps, "Number of intervals");
  auto* grid_opt = s->add_option("--grid", sweep.grid, "Explicit parameter values")->delimiter(',');
  s->add_option("--measures", sweep.measures, "Columns to compute")->delimiter(',');
  s->add_option("--lambda", sweep.lambda, "Half-gap of the DS spectrum");
  s->add_option("--observable", sweep.observable, "Observable for variance/skew");
  s->add_option("--out", sweep.out, "TSV output file");
  sweep.opt.attach(s);

  SimulateArgs sim;
  auto* r = app.add_subcommand("simulate", "Run an estimation or discrimination experiment");
  r->add_option("kind", sim.kind, "estimation or discrimination")
      ->required()
      ->check(CLI::IsMember({"estimation", "discrimination"}));
  r->add_option("state", sim.state, "State JSON file")->required();
  r->add_option("--observable", sim.observable, "Generator JSON file");
  r->add_option("--other", sim.other, "Second state (discrimination)");
  r->add_flag("--worst-case", sim.worst_case, "Use the worst-case generator");
  r->add_option("--spectrum", sim.spectrum, "Worst-case spectrum")->delimiter(',');
  r->add_option("--lambda", sim.lambda, "Default generator half-gap (discrimination)");
  r->add_option("--theta0", sim.theta0, "True phase");
  r->add_option("--n", sim.n, "Measurements per trial")->check(CLI::PositiveNumber);
  r->add_option("--trials", sim.trials, "Trials")->check(CLI::PositiveNumber);
  r->add_option("--points", sim.points, "Likelihood grid points");
  r->add_option("--n-max", sim.n_max, "Largest copy number")->check(CLI::PositiveNumber);
  r->add_option("--out", sim.out, "JSON record file");
  r->add_option("--tsv", sim.tsv, "TSV table file");
  sim.opt.attach(r);

  std::string validate_state, validate_observable;
  auto* v = app.add_subcommand("validate", "Check a state (and observable) file");
  v->add_option("state", validate_state, "State JSON file")->required();
  v->add_option("--observable", validate_observable, "Observable JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*m) return cmd_measure(measure);
    if (*s) return cmd_sweep(sweep, grid_opt->count() > 0);
    if (*r) return cmd_simulate(sim);
    if (*v) return cmd_validate(validate_state, validate_observable);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ZeroInformation ? kExitZeroInformation : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
