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
#include <array>

#include "qmetro/linalg.hpp"
#include "qmetro/manifold.hpp"
#include "qmetro/observable.hpp"

namespace qmetro {

namespace detail {

inline void require_same_dim(const DensityMatrix& rho, const Matrix& o) {
  if (o.rows() != rho.dim() || o.cols() != rho.dim()) {
    fail(ErrorCode::DimMismatch, "operator side " + std::to_string(o.rows()) +
                                     " vs state side " + std::to_string(rho.dim()));
  }
}

inline void require_qubit_qudit(const DensityMatrix& rho) {
  if (rho.subsystems() != 2 || rho.subsystem_dim(0) != 2) {
    fail(ErrorCode::DimMismatch, "closed form needs a state on C^2 ⊗ C^d");
  }
}

inline void require_bipartite(const DensityMatrix& rho) {
  if (rho.subsystems() != 2) {
    fail(ErrorCode::DimMismatch, "measure needs a bipartite state");
  }
}

/// Spectrum of rho and its square root, reused across every observable tried
/// during one measure call.
struct SqrtContext {
  RealVector lambda;
  RealVector root;
  Matrix vectors;

  explicit SqrtContext(const DensityMatrix& rho)
      : lambda(rho.eig().values.cwiseMax(0.0)),
        root(lambda.unaryExpr([](double x) { return support_pow(x, 0.5); })),
        vectors(rho.eig().vectors) {}

  /// -1/2 tr[[rho^{1/2}, O]^2] = 1/2 sum_ij (sqrt(l_i) - sqrt(l_j))^2 |O_ij|^2
  /// in the eigenbasis of rho.
  double skew(const Matrix& o) const {
    const Matrix t = vectors.adjoint() * o * vectors;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < t.cols(); ++j) {
        const double gap = root(i) - root(j);
        acc += gap * gap * std::norm(t(i, j));
      }
    }
    return acc;
  }
};

/// Validates a user spectrum against the measured subsystem and returns it
/// sorted ascending.
inline RealVector checked_spectrum(const RealVector& spectrum, int d) {
  if (spectrum.size() != d) {
    fail(ErrorCode::DimMismatch, "spectrum length " + std::to_string(spectrum.size()) +
                                     " vs subsystem dimension " + std::to_string(d));
  }
  RealVector sorted = spectrum;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  check_nondegenerate(sorted);
  return sorted;
}

}  // namespace detail

inline double variance(const DensityMatrix& rho, const HermitianOperator& o) {
  detail::require_same_dim(rho, o.matrix());
  const Matrix ro = rho.matrix() * o.matrix();
  const double mean = ro.trace().real();
  const double second = (ro * o.matrix()).trace().real();
  return std::max(0.0, second - mean * mean);
}

/// Wigner-Yanase skew information -1/2 tr[[rho^{1/2}, O]^2], evaluated as
/// tr[rho O^2] - tr[rho^{1/2} O rho^{1/2} O]. Lies in [0, variance].
inline double skew_information(const DensityMatrix& rho, const HermitianOperator& o) {
  detail::require_same_dim(rho, o.matrix());
  return detail::SqrtContext(rho).skew(o.matrix());
}

/// The classical share of the variance: V - I, clamped at zero.
inline double classical_uncertainty(const DensityMatrix& rho, const HermitianOperator& o) {
  return std::max(0.0, variance(rho, o) - skew_information(rho, o));
}

/// Squared Hellinger distance 1 - tr[rho^{1/2} sigma^{1/2}].
inline double hellinger_sq(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) fail(ErrorCode::DimMismatch, "states differ in dimension");
  const Matrix a = support_power(rho.eig(), 0.5);
  const Matrix b = support_power(sigma.eig(), 0.5);
  const double overlap = (a * b).trace().real();
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

/// W_ij = tr[rho^{1/2} (sigma_i ⊗ I) rho^{1/2} (sigma_j ⊗ I)] for a qubit-qudit state.
inline Eigen::Matrix3d lqu_w_matrix(const DensityMatrix& rho) {
  detail::require_qubit_qudit(rho);
  const Matrix root = support_power(rho.eig(), 0.5);
  std::array<Matrix, 3> sandwiched;
  std::array<Matrix, 3> local;
  for (int i = 0; i < 3; ++i) {
    local[i] = embed(pauli(i), rho.dims(), 0);
    sandwiched[i] = root * local[i] * root;
  }
  Eigen::Matrix3d w;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      w(i, j) = (sandwiched[i] * local[j]).trace().real();
      w(j, i) = w(i, j);
    }
  }
  return w;
}

/// Local quantum uncertainty of a qubit-qudit state for K_A = n·sigma:
/// 1 - lambda_max(W), certified by the top eigenvector of W.
inline MeasureResult lqu_qubit_qudit(const DensityMatrix& rho) {
  const Eigen::Matrix3d w = lqu_w_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(w);
  const Eigen::Vector3d n = solver.eigenvectors().col(2);
  MeasureResult out;
  out.value = clamp_reported(1.0 - solver.eigenvalues()(2));
  out.direction = n;
  out.certificate = Observable::pauli_direction(n);
  out.evaluations = 1;
  return out;
}

/// Minimum skew information over local observables U diag(spectrum) U^dagger
/// on `side`, searched by multi-start descent over the unitary group.
inline MeasureResult lqu_general(const DensityMatrix& rho, const RealVector& spectrum,
                                 Side side = Side::A, const OptimizerConfig& cfg = {}) {
  detail::require_bipartite(rho);
  const int site = site_index(side);
  const int d = rho.subsystem_dim(site);
  const RealVector lambda = detail::checked_spectrum(spectrum, d);
  const detail::SqrtContext ctx(rho);
  const Matrix diag = lambda.cast<Complex>().asDiagonal();
  auto objective = [&](const Matrix& u) {
    return ctx.skew(embed(u * diag * u.adjoint(), rho.dims(), site));
  };
  const ManifoldMinimum best = minimize_over_unitaries(d, objective, cfg);
  MeasureResult out;
  out.value = clamp_reported(best.value);
  out.certificate = Observable(lambda, best.unitary);
  out.restarts_used = best.restarts_used;
  out.converged = best.converged;
  out.evaluations = best.evaluations;
  return out;
}

}  // namespace qmetro
