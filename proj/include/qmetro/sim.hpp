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

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmetro/discrimination.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/linalg.hpp"
#include "qmetro/random.hpp"
#include "qmetro/state_io.hpp"
#include "qmetro/table.hpp"

namespace qmetro {

inline constexpr double kMinFisher = 1e-9;

/*******************************************************************************
 * SAMPLING
 ******************************************************************************/

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Binomial(n, p) quantile at u. Only the window mean +- (10 sd + 10) is
/// tabulated; the mass outside it is below double precision.
inline long binomial_quantile(long n, double p, double u) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const double mean = static_cast<double>(n) * p;
  const double sd = std::sqrt(mean * (1.0 - p));
  const long lo = std::max(0L, static_cast<long>(std::floor(mean - 10.0 * sd - 10.0)));
  const long hi = std::min(n, static_cast<long>(std::ceil(mean + 10.0 * sd + 10.0)));
  const long mode = std::clamp(static_cast<long>(std::floor((n + 1) * p)), lo, hi);

  std::vector<double> pmf(static_cast<std::size_t>(hi - lo + 1));
  const double odds = p / (1.0 - p);
  const double log_mode = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
                          std::lgamma(n - mode + 1.0) + mode * std::log(p) +
                          (n - mode) * std::log1p(-p);
  pmf[mode - lo] = std::exp(log_mode);
  for (long k = mode; k < hi; ++k) {
    pmf[k + 1 - lo] = pmf[k - lo] * odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  for (long k = mode; k > lo; --k) {
    pmf[k - 1 - lo] = pmf[k - lo] / odds * static_cast<double>(k) / static_cast<double>(n - k + 1);
  }
  double total = 0.0;
  for (double v : pmf) total += v;
  double cdf = 0.0;
  for (long k = lo; k <= hi; ++k) {
    cdf += pmf[k - lo] / total;
    if (u < cdf) return k;
  }
  return hi;
}

/// Multinomial counts drawn as a chain of conditional binomials, one uniform
/// per outcome.
inline std::vector<long> multinomial_counts(long n, const std::vector<double>& probs, Rng& rng) {
  std::vector<long> counts(probs.size(), 0);
  long remaining = n;
  double mass = 1.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double u = uniform01(rng);
    if (k + 1 == probs.size()) {
      counts[k] = remaining;
      break;
    }
    const double p = mass > 0.0 ? std::clamp(probs[k] / mass, 0.0, 1.0) : 0.0;
    counts[k] = binomial_quantile(remaining, p, u);
    remaining -= counts[k];
    mass -= probs[k];
  }
  return counts;
}

/*******************************************************************************
 * PHASE ESTIMATION
 ******************************************************************************/

struct ThetaGrid {
  double lo = 0.0;
  double hi = 0.0;
  int points = 2001;
};

struct EstimationConfig {
  explicit EstimationConfig(DensityMatrix input) : state(std::move(input)) {}

  DensityMatrix state;
  std::optional<Observable> generator;  // on subsystem A (or the whole space)
  bool worst_case = false;              // use the interferometric-power certificate
  std::optional<RealVector> spectrum;   // worst-case spectrum; default -1..1
  double theta0 = 0.0;
  long n = 10000;
  int trials = 200;
  int grid_points = 2001;
  std::optional<ThetaGrid> grid;  // default theta0 +- 5 / sqrt(n F)
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
};

struct ExperimentRecord {
  nlohmann::json config;
  std::vector<double> estimates;
  double fisher = 0.0;
  double bound = 0.0;     // 1 / (n F)
  double mean = 0.0;
  double bias = 0.0;      // mean - theta0
  double variance = 0.0;  // mean squared error about theta0
  double ratio = 0.0;     // variance / bound

  nlohmann::json to_json() const {
    return {{"kind", "estimation"}, {"config", config}, {"fisher", fisher},
            {"bound", bound},       {"mean", mean},     {"bias", bias},
            {"variance", variance}, {"ratio", ratio},   {"estimates", estimates}};
  }

  Table table() const {
    Table t{{"trial", "estimate"}, {}};
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      t.rows.push_back({static_cast<double>(i), estimates[i]});
    }
    return t;
  }
};

namespace detail {

inline Observable resolve_generator(const DensityMatrix& rho,
                                    const std::optional<Observable>& generator, bool worst_case,
                                    const std::optional<RealVector>& spectrum,
                                    const OptimizerConfig& cfg, bool for_discrimination) {
  if (!worst_case) {
    if (!generator) fail(ErrorCode::ValidationError, "no generator given and worst-case not set");
    return *generator;
  }
  const int d = rho.subsystem_dim(0);
  const RealVector lambda = spectrum ? *spectrum : default_spectrum(d);
  if (for_discrimination) return *ds_general(rho, lambda, cfg).certificate;
  if (d == 2 && rho.subsystems() == 2 && !spectrum) return *ip_qubit_qudit(rho).certificate;
  return *ip_general(rho, lambda, cfg).certificate;
}

/// Sum of a sequence in index order with Neumaier compensation.
inline double stable_sum(const std::vector<double>& xs) {
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

}  // namespace detail

/// Repeated local phase estimation: n projective measurements in the SLD
/// eigenbasis at theta0 per trial, estimate by grid maximum likelihood.
inline ExperimentRecord run_phase_estimation(const EstimationConfig& cfg) {
  if (cfg.n < 1 || cfg.trials < 1) fail(ErrorCode::OutOfRange, "n and trials must be >= 1");
  const DensityMatrix& rho = cfg.state;
  const Observable gen = detail::resolve_generator(rho, cfg.generator, cfg.worst_case,
                                                   cfg.spectrum, cfg.optimizer, false);
  const PhaseChannel channel{gen, cfg.theta0};
  const Matrix h = channel.full_generator(rho.dims());
  const double fisher = qfi(rho, HermitianOperator(h, 1e-9));
  if (!(fisher > kMinFisher)) {
    fail(ErrorCode::ZeroInformation, "quantum Fisher information " + std::to_string(fisher));
  }
  const double sigma = 1.0 / std::sqrt(static_cast<double>(cfg.n) * fisher);
  ThetaGrid grid = cfg.grid ? *cfg.grid
                            : ThetaGrid{cfg.theta0 - 5.0 * sigma, cfg.theta0 + 5.0 * sigma,
                                        cfg.grid_points};
  if (grid.points < 3 || !(grid.lo < cfg.theta0 && cfg.theta0 < grid.hi)) {
    fail(ErrorCode::DegenerateGrid, "theta0 must lie inside a grid of at least 3 points");
  }

  // Measurement basis: eigenvectors of the SLD of the imprinted state.
  const DensityMatrix at_truth = conjugate(rho, channel.unitary(rho.dims()));
  const Matrix basis = eig_hermitian(sld(at_truth, HermitianOperator(h, 1e-9))).vectors;

  // Outcome probabilities on the grid and at theta0.
  const auto outcomes = static_cast<std::size_t>(basis.cols());
  const double step = (grid.hi - grid.lo) / (grid.points - 1);
  std::vector<std::vector<double>> log_p(grid.points, std::vector<double>(outcomes));
  auto probabilities = [&](double theta) {
    const Matrix u = expi_hermitian(-theta * h);
    const Matrix rt = basis.adjoint() * u * rho.matrix() * u.adjoint() * basis;
    std::vector<double> p(outcomes);
    for (std::size_t k = 0; k < outcomes; ++k) p[k] = std::max(0.0, rt(k, k).real());
    return p;
  };
  for (int g = 0; g < grid.points; ++g) {
    const auto p = probabilities(grid.lo + g * step);
    for (std::size_t k = 0; k < outcomes; ++k) {
      log_p[g][k] = p[k] > 0.0 ? std::log(p[k]) : -std::numeric_limits<double>::infinity();
    }
  }
  const std::vector<double> p_truth = probabilities(cfg.theta0);
  const double mid = 0.5 * (grid.points - 1);

  ExperimentRecord rec;
  rec.estimates.resize(cfg.trials);
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const std::vector<long> counts = multinomial_counts(cfg.n, p_truth, rng);
    int best = -1;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int g = 0; g < grid.points; ++g) {
      double ll = 0.0;
      for (std::size_t k = 0; k < outcomes; ++k) {
        if (counts[k] > 0) ll += static_cast<double>(counts[k]) * log_p[g][k];
      }
      if (best < 0 || ll > best_ll ||
          (ll == best_ll && std::abs(g - mid) < std::abs(best - mid))) {
        best = g;
        best_ll = ll;
      }
    }
    rec.estimates[t] = grid.lo + best * step;
  }

  std::vector<double> sq(cfg.trials);
  for (int t = 0; t < cfg.trials; ++t) {
    const double e = rec.estimates[t] - cfg.theta0;
    sq[t] = e * e;
  }
  rec.fisher = fisher;
  rec.bound = cramer_rao(fisher, cfg.n);
  rec.mean = detail::stable_sum(rec.estimates) / cfg.trials;
  rec.bias = rec.mean - cfg.theta0;
  rec.variance = detail::stable_sum(sq) / cfg.trials;
  rec.ratio = rec.variance / rec.bound;
  rec.config = {{"theta0", cfg.theta0},
                {"n", cfg.n},
                {"trials", cfg.trials},
                {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"points", grid.points}}},
                {"seed", cfg.seed},
                {"worst_case", cfg.worst_case},
                {"generator", observable_to_json(gen)}};
  return rec;
}

/*******************************************************************************
 * DISCRIMINATION
 ******************************************************************************/

struct DiscriminationRecord {
  nlohmann::json config;
  ChernoffResult chernoff;
  std::vector<double> errors;  // Helstrom error for n = 1..n_max
  std::vector<double> rates;   // -ln P(n) / n
  std::vector<double> bounds;  // Q^n / 2
  double gap = 0.0;            // rate(n_max) - exponent

  nlohmann::json to_json() const {
    auto finite = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
    nlohmann::json rate_list = nlohmann::json::array();
    for (double r : rates) rate_list.push_back(finite(r));
    return {{"kind", "discrimination"}, {"config", config},
            {"q_value", chernoff.q_value},  {"s_star", chernoff.s_star},
            {"exponent", finite(chernoff.exponent)},
            {"errors", errors},             {"rates", rate_list},
            {"bounds", bounds},             {"gap", finite(gap)}};
  }

  Table table() const {
    Table t{{"n", "error", "rate", "bound"}, {}};
    for (std::size_t i = 0; i < errors.size(); ++i) {
      t.rows.push_back({static_cast<double>(i + 1), errors[i], rates[i], bounds[i]});
    }
    return t;
  }
};

/// Exact multi-copy Helstrom errors for a pair of states, next to the
/// Chernoff exponent they approach.
inline DiscriminationRecord discriminate_pair(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                              int n_max) {
  if (n_max < 1) fail(ErrorCode::OutOfRange, "n_max must be >= 1");
  DiscriminationRecord rec;
  rec.chernoff = chernoff(rho1, rho2);
  for (int n = 1; n <= n_max; ++n) {
    const double p = helstrom_error(rho1, rho2, n);
    rec.errors.push_back(p);
    rec.rates.push_back(p > 0.0 ? -std::log(p) / n : std::numeric_limits<double>::infinity());
    rec.bounds.push_back(0.5 * std::pow(rec.chernoff.q_value, n));
  }
  rec.gap = rec.rates.back() - rec.chernoff.exponent;
  rec.config = {{"n_max", n_max}};
  return rec;
}

struct DiscriminationConfig {
  explicit DiscriminationConfig(DensityMatrix input) : state(std::move(input)) {}

  DensityMatrix state;
  std::optional<Observable> generator;
  bool worst_case = false;  // use the discriminating-strength certificate
  std::optional<RealVector> spectrum;
  int n_max = 5;
  OptimizerConfig optimizer;
};

/// Discriminating rho from e^{iH} rho e^{-iH} with H on subsystem A.
inline DiscriminationRecord run_discrimination(const DiscriminationConfig& cfg) {
  const DensityMatrix& rho = cfg.state;
  const Observable gen = detail::resolve_generator(rho, cfg.generator, cfg.worst_case,
                                                   cfg.spectrum, cfg.optimizer, true);
  const Matrix h = PhaseChannel{gen, 0.0}.full_generator(rho.dims());
  const DensityMatrix rotated = conjugate(rho, expi_hermitian(h));
  DiscriminationRecord rec = discriminate_pair(rho, rotated, cfg.n_max);
  rec.config = {{"n_max", cfg.n_max},
                {"worst_case", cfg.worst_case},
                {"generator", observable_to_json(gen)}};
  return rec;
}

}  // namespace qmetro
