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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

/// (|00> + |11>) / sqrt(2).
inline DensityMatrix make_bell() {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return validate_density(Matrix(psi * psi.adjoint()), {2, 2});
}

/// sum_i p_i |i><i|_A ⊗ sigma_i.
inline DensityMatrix make_cq(const std::vector<double>& probabilities, const Matrix& basis,
                             const std::vector<DensityMatrix>& sigmas) {
  const auto d = static_cast<Eigen::Index>(probabilities.size());
  if (d == 0 || sigmas.size() != probabilities.size()) {
    fail(ErrorCode::BadProbabilities, "need one probability per conditional state");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) fail(ErrorCode::BadProbabilities, "probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kTraceTol) {
    fail(ErrorCode::BadProbabilities, "probabilities sum to " + std::to_string(total));
  }
  if (basis.rows() != d || basis.cols() != d || unitarity_defect(basis) > kUnitaryTol) {
    fail(ErrorCode::NonOrthonormalBasis, "basis columns are not orthonormal");
  }
  const Dims& b = sigmas.front().dims();
  for (const auto& s : sigmas) {
    if (s.dims() != b) fail(ErrorCode::DimMismatch, "conditional states differ in shape");
  }
  const int db = sigmas.front().dim();
  Matrix out = Matrix::Zero(d * db, d * db);
  for (Eigen::Index i = 0; i < d; ++i) {
    out += probabilities[i] * kron(basis.col(i) * basis.col(i).adjoint(), sigmas[i].matrix());
  }
  Dims dims{static_cast<int>(d)};
  dims.insert(dims.end(), b.begin(), b.end());
  return validate_density(HermitianOperator(out, 1e-9), dims);
}

/// q |bell><bell| + (1 - q) I/4.
inline DensityMatrix make_werner(double q) {
  if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::OutOfRange, "Werner mixing must lie in [0, 1]");
  const Matrix m = q * make_bell().matrix() + (1.0 - q) * Matrix::Identity(4, 4) / 4.0;
  return validate_density(m, {2, 2});
}

/// (1 - p) I/2 + p |+><+|, the single-qubit family of the skew/variance plot.
inline DensityMatrix make_fig1_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::OutOfRange, "purity parameter must lie in [0, 1]");
  Matrix m(2, 2);
  m << 0.5, 0.5 * p, 0.5 * p, 0.5;
  return validate_density(m, {2});
}

inline DensityMatrix make_product(const DensityMatrix& a, const DensityMatrix& b) {
  return tensor(a, b);
}

/// sum_i sqrt(c_i) |i>|i> with c_i the Schmidt weights (normalized here).
inline DensityMatrix pure_schmidt(const std::vector<double>& weights, int da, int db) {
  const int r = static_cast<int>(weights.size());
  if (r < 1 || r > std::min(da, db)) {
    fail(ErrorCode::DimMismatch, "Schmidt rank exceeds the smaller subsystem");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) fail(ErrorCode::BadProbabilities, "Schmidt weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) fail(ErrorCode::BadProbabilities, "Schmidt weights are all zero");
  Vector psi = Vector::Zero(da * db);
  for (int i = 0; i < r; ++i) psi(i * db + i) = std::sqrt(weights[i] / total);
  return validate_density(Matrix(psi * psi.adjoint()), {da, db});
}

enum class Family { Bell, Werner, Cq, Product, Fig1, PureSchmidt, CustomFile };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Bell: return "bell";
    case Family::Werner: return "werner";
    case Family::Cq: return "cq";
    case Family::Product: return "product";
    case Family::Fig1: return "fig1";
    case Family::PureSchmidt: return "pure-schmidt";
    case Family::CustomFile: return "custom-file";
  }
  return "?";
}

inline Family parse_family(const std::string& name) {
  for (Family f : {Family::Bell, Family::Werner, Family::Cq, Family::Product, Family::Fig1,
                   Family::PureSchmidt, Family::CustomFile}) {
    if (name == to_string(f)) return f;
  }
  fail(ErrorCode::ParseError, "unknown state family '" + name + "'");
}

/// A named family plus its parameters. Families with a single scalar knob
/// (werner, fig1) read it from "q" / "p"; the others from their own keys.
struct StateSpec {
  Family family = Family::Bell;
  std::map<std::string, std::vector<double>> parameters;
  Dims dims;

  double scalar(const std::string& key) const {
    auto it = parameters.find(key);
    if (it == parameters.end() || it->second.size() != 1) {
      fail(ErrorCode::ValidationError, "missing scalar parameter '" + key + "'");
    }
    return it->second.front();
  }
};

/// Builds the state described by a spec. Only the families that are fully
/// determined by real parameters are constructible here; cq with the
/// computational basis, product of maximally mixed and custom files are
/// handled by their dedicated entry points.
inline DensityMatrix make_state(const StateSpec& spec) {
  switch (spec.family) {
    case Family::Bell: return make_bell();
    case Family::Werner: return make_werner(spec.scalar("q"));
    case Family::Fig1: return make_fig1_state(spec.scalar("p"));
    case Family::PureSchmidt: {
      if (spec.dims.size() != 2) fail(ErrorCode::DimMismatch, "pure-schmidt needs two dims");
      auto it = spec.parameters.find("weights");
      if (it == spec.parameters.end()) {
        fail(ErrorCode::ValidationError, "missing parameter 'weights'");
      }
      return pure_schmidt(it->second, spec.dims[0], spec.dims[1]);
    }
    case Family::Cq: {
      auto it = spec.parameters.find("p");
      if (it == spec.parameters.end()) fail(ErrorCode::ValidationError, "missing parameter 'p'");
      const int d = static_cast<int>(it->second.size());
      std::vector<DensityMatrix> sigmas;
      for (int i = 0; i < d; ++i) {
        Matrix s = Matrix::Zero(d, d);
        s(i, i) = 1.0;
        sigmas.push_back(validate_density(s, {d}));
      }
      return make_cq(it->second, Matrix::Identity(d, d), sigmas);
    }
    case Family::Product: {
      if (spec.dims.size() != 2) fail(ErrorCode::DimMismatch, "product needs two dims");
      const int da = spec.dims[0], db = spec.dims[1];
      return make_product(validate_density(Matrix(Matrix::Identity(da, da) / da), {da}),
                          validate_density(Matrix(Matrix::Identity(db, db) / db), {db}));
    }
    case Family::CustomFile: break;
  }
  fail(ErrorCode::ValidationError, "custom-file states are loaded with load_state");
}

}  // namespace qmetro
