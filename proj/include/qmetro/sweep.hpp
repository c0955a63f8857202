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

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qmetro/discrimination.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/states.hpp"
#include "qmetro/table.hpp"
#include "qmetro/uncertainty.hpp"

namespace qmetro {

struct SweepOptions {
  std::optional<HermitianOperator> observable;  // default sigma_z on A
  double lambda = std::numbers::pi / 4;         // ds spectrum {-lambda, lambda}
  OptimizerConfig optimizer;
};

namespace detail {

inline const char* scalar_key(Family f) {
  switch (f) {
    case Family::Fig1: return "p";
    case Family::Werner: return "q";
    default: break;
  }
  fail(ErrorCode::ValidationError,
       std::string("family '") + to_string(f) + "' has no scalar parameter to sweep");
}

inline double sweep_value(const std::string& measure, const DensityMatrix& rho,
                          const SweepOptions& opt) {
  if (measure == "variance" || measure == "skew" || measure == "difference") {
    const HermitianOperator o =
        opt.observable ? *opt.observable : HermitianOperator(embed(pauli(2), rho.dims(), 0));
    if (measure == "variance") return variance(rho, o);
    if (measure == "skew") return skew_information(rho, o);
    return classical_uncertainty(rho, o);
  }
  const bool qubit = rho.subsystems() == 2 && rho.subsystem_dim(0) == 2;
  const RealVector unit = rho.subsystems() == 2 ? default_spectrum(rho.subsystem_dim(0))
                                                : RealVector();
  if (measure == "lqu") {
    return qubit ? lqu_qubit_qudit(rho).value : lqu_general(rho, unit, Side::A, opt.optimizer).value;
  }
  if (measure == "ip") {
    return qubit ? ip_qubit_qudit(rho).value : ip_general(rho, unit, opt.optimizer).value;
  }
  if (measure == "ds") {
    if (qubit) return ds_qubit_qudit(rho, opt.lambda).value;
    return ds_general(rho, opt.lambda * unit, opt.optimizer).value;
  }
  fail(ErrorCode::ParseError, "unknown sweep measure '" + measure + "'");
}

}  // namespace detail

/// One row per grid value: the parameter followed by each requested measure.
inline Table sweep_states(Family family, const std::vector<double>& grid,
                          const std::vector<std::string>& measures,
                          const SweepOptions& opt = {}) {
  const std::string key = detail::scalar_key(family);
  Table t;
  t.columns.push_back(key);
  t.columns.insert(t.columns.end(), measures.begin(), measures.end());
  for (double x : grid) {
    StateSpec spec{family, {{key, {x}}}, {}};
    const DensityMatrix rho = make_state(spec);
    std::vector<double> row{x};
    for (const auto& m : measures) row.push_back(detail::sweep_value(m, rho, opt));
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// n + 1 evenly spaced points from lo to hi.
inline std::vector<double> linear_grid(double lo, double hi, int intervals) {
  if (intervals < 0) fail(ErrorCode::OutOfRange, "grid needs a non-negative interval count");
  std::vector<double> g;
  if (intervals == 0) return {lo};
  for (int i = 0; i <= intervals; ++i) g.push_back(lo + (hi - lo) * i / intervals);
  return g;
}

}  // namespace qmetro
