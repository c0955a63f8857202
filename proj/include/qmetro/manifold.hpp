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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "qmetro/linalg.hpp"
#include "qmetro/random.hpp"

namespace qmetro {

/// Settings for the multi-start search over the unitary group.
struct OptimizerConfig {
  int restarts = 16;
  double tol = 1e-9;           // Nelder-Mead value tolerance
  std::uint64_t seed = 0;
  long max_evaluations = 20000;  // per restart
  double initial_step = 0.5;   // radians in the Lie-algebra chart
  double agreement = 1e-7;     // restarts within this of the best count as agreeing
  int min_agreeing = 3;
};

/// Generalized Gell-Mann matrices: an orthogonal basis of the d^2 - 1
/// dimensional space of traceless Hermitian d x d matrices.
inline std::vector<Matrix> gell_mann_basis(int d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d - 1));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.push_back(sym);
      Matrix anti = Matrix::Zero(d, d);
      anti(j, k) = Complex(0, -1);
      anti(k, j) = Complex(0, 1);
      basis.push_back(anti);
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -l * norm;
    basis.push_back(diag);
  }
  return basis;
}

/// exp(i H) for Hermitian H.
inline Matrix expi_hermitian(const Matrix& h) {
  const EigDecomposition e = eig_hermitian(h);
  Vector phases(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    phases(i) = std::polar(1.0, e.values(i));
  }
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

/// base * exp(i sum_k x_k G_k): a chart of SU(d) centred on `base`.
inline Matrix unitary_chart(const Matrix& base, const std::vector<double>& x,
                            const std::vector<Matrix>& generators) {
  Matrix h = Matrix::Zero(base.rows(), base.cols());
  for (std::size_t k = 0; k < x.size(); ++k) h += x[k] * generators[k];
  return base * expi_hermitian(h);
}

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
};

/// Derivative-free Nelder-Mead minimization. Stops once the spread of values
/// over the simplex is at most `tol` or the evaluation budget is spent.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x0, double step, double tol,
                                 long max_evaluations) {
  const std::size_t n = x0.size();
  SimplexResult out;
  if (n == 0) {
    out.x = x0;
    out.value = f(x0);
    out.evaluations = 1;
    return out;
  }
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  long evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    vals[i] = f(pts[i]);
    ++evals;
  }
  std::vector<std::size_t> order(n + 1);
  auto centroid_except_worst = [&](std::size_t worst) {
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) c[k] += pts[i][k];
    }
    for (double& v : c) v /= static_cast<double>(n);
    return c;
  };
  auto along = [&](const std::vector<double>& c, const std::vector<double>& p, double t) {
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = c[k] + t * (p[k] - c[k]);
    return r;
  };

  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (vals[worst] - vals[best] <= tol) break;

    const std::vector<double> c = centroid_except_worst(worst);
    std::vector<double> xr = along(c, pts[worst], -1.0);
    const double fr = f(xr);
    ++evals;
    if (fr < vals[best]) {
      std::vector<double> xe = along(c, pts[worst], -2.0);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[worst] = std::move(xe);
        vals[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = std::move(xr);
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    std::vector<double> xc = along(c, outside ? xr : pts[worst], 0.5);
    const double fc = f(xc);
    ++evals;
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = std::move(xc);
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = along(pts[best], pts[i], 0.5);
      vals[i] = f(pts[i]);
      ++evals;
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = pts[best];
  out.value = vals[best];
  out.evaluations = evals;
  return out;
}

struct ManifoldMinimum {
  Matrix unitary;
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> restart_values;
  int restarts_used = 0;
  bool converged = false;
  long evaluations = 0;
};

/// Multi-start minimization of objective(U) over U in SU(d). Each restart
/// starts from an independent Haar-random chart centre and polishes by
/// re-seeding the simplex at its best point until a fresh simplex stops
/// improving. The run counts as converged when at least `min_agreeing`
/// restarts land within `agreement` of the overall best.
inline ManifoldMinimum minimize_over_unitaries(
    int d, const std::function<double(const Matrix&)>& objective,
    const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) fail(ErrorCode::OutOfRange, "restarts must be >= 1");
  const std::vector<Matrix> generators = gell_mann_basis(d);
  ManifoldMinimum out;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    Matrix centre = haar_unitary(d, rng);
    auto in_chart = [&](const std::vector<double>& x) {
      return objective(unitary_chart(centre, x, generators));
    };
    std::vector<double> x(generators.size(), 0.0);
    double step = cfg.initial_step;
    long evals = 0;
    double current = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 8 && evals < cfg.max_evaluations; ++round) {
      SimplexResult res = nelder_mead(in_chart, x, step, cfg.tol, cfg.max_evaluations - evals);
      evals += res.evaluations;
      const double improvement = current - res.value;
      if (res.value < current) {
        current = res.value;
        // Re-centre the chart so the polish step stays well conditioned.
        centre = unitary_chart(centre, res.x, generators);
        std::fill(x.begin(), x.end(), 0.0);
      }
      if (round > 0 && improvement <= cfg.tol) break;
      step = std::max(0.05, step * 0.3);
    }
    out.evaluations += evals;
    out.restart_values.push_back(current);
    if (current < out.value) {
      out.value = current;
      out.unitary = centre;
    }
  }
  out.restarts_used = cfg.restarts;
  const auto agreeing = std::count_if(
      out.restart_values.begin(), out.restart_values.end(),
      [&](double v) { return v - out.value <= cfg.agreement; });
  out.converged = agreeing >= cfg.min_agreeing;
  return out;
}

}  // namespace qmetro
