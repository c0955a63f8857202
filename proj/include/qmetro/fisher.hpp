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

#include <array>
#include <vector>

#include "qmetro/linalg.hpp"
#include "qmetro/manifold.hpp"
#include "qmetro/observable.hpp"
#include "qmetro/uncertainty.hpp"

namespace qmetro {

inline constexpr double kEigenpairCutoff = 1e-12;
inline constexpr double kOutcomeCutoff = 1e-12;

/// Positive operators summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) fail(ErrorCode::BadPovm, "POVM has no elements");
    const int d = elements_.front().dim();
    Matrix total = Matrix::Zero(d, d);
    for (const auto& e : elements_) {
      if (e.dim() != d) fail(ErrorCode::DimMismatch, "POVM elements differ in dimension");
      if (eig_hermitian(e).values(0) < -1e-10) {
        fail(ErrorCode::BadPovm, "POVM element is not positive");
      }
      total += e.matrix();
    }
    if (max_abs(total - Matrix::Identity(d, d)) > 1e-9) {
      fail(ErrorCode::BadPovm, "POVM elements do not sum to the identity");
    }
  }

  /// Rank-one projectors onto the columns of a unitary.
  static Povm projective(const Matrix& basis) {
    std::vector<HermitianOperator> elements;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
      elements.emplace_back(basis.col(k) * basis.col(k).adjoint(), 1e-9);
    }
    return Povm(std::move(elements));
  }

  static Povm trivial(int d) { return Povm({HermitianOperator::identity(d)}); }

  int dim() const { return elements_.front().dim(); }
  const std::vector<HermitianOperator>& elements() const { return elements_; }

 private:
  std::vector<HermitianOperator> elements_;
};

/// Phase imprinting U_theta = exp(-i H theta) with H acting on subsystem A.
struct PhaseChannel {
  Observable generator;
  double theta = 0.0;

  /// The generator on the full space (H ⊗ I for multipartite states).
  Matrix full_generator(const Dims& dims) const {
    if (generator.dim() == product(dims)) return generator.matrix();
    return embed(generator.matrix(), dims, 0);
  }

  Matrix unitary(const Dims& dims) const {
    return expi_hermitian(-theta * full_generator(dims));
  }
};

namespace detail {

/// Weights (l_i - l_j)^2 / (l_i + l_j) of the eigenpair expansion, zero where
/// l_i + l_j is below the cutoff.
struct FisherContext {
  Matrix vectors;
  Eigen::MatrixXd weight;

  explicit FisherContext(const DensityMatrix& rho) : vectors(rho.eig().vectors) {
    const RealVector l = rho.eig().values.cwiseMax(0.0);
    const auto d = l.size();
    weight = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const double sum = l(i) + l(j);
        if (sum > kEigenpairCutoff) weight(i, j) = (l(i) - l(j)) * (l(i) - l(j)) / sum;
      }
    }
  }

  /// 4 sum_{k<l} w_kl |<k|H|l>|^2
  double qfi(const Matrix& h) const {
    const Matrix t = vectors.adjoint() * h * vectors;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < t.cols(); ++j) acc += weight(i, j) * std::norm(t(i, j));
    }
    return 4.0 * acc;
  }
};

}  // namespace detail

/// Symmetric logarithmic derivative of rho_theta = U rho U^dagger at the
/// given state, for d rho / d theta = -i[H, rho].
inline HermitianOperator sld(const DensityMatrix& rho, const HermitianOperator& h) {
  detail::require_same_dim(rho, h.matrix());
  const RealVector l = rho.eig().values.cwiseMax(0.0);
  const Matrix& v = rho.eig().vectors;
  const Matrix t = v.adjoint() * h.matrix() * v;
  Matrix out = Matrix::Zero(t.rows(), t.cols());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    for (Eigen::Index m = 0; m < t.cols(); ++m) {
      const double sum = l(k) + l(m);
      if (sum <= kEigenpairCutoff) continue;
      const Complex drho = Complex(0, -1) * t(k, m) * (l(m) - l(k));
      out(k, m) = 2.0 * drho / sum;
    }
  }
  return HermitianOperator(v * out * v.adjoint(), 1e-9);
}

inline double qfi(const DensityMatrix& rho, const HermitianOperator& h) {
  detail::require_same_dim(rho, h.matrix());
  return detail::FisherContext(rho).qfi(h.matrix());
}

/// Fisher information of the outcome distribution tr[rho_theta Pi_x].
inline double classical_fisher(const DensityMatrix& rho0, const PhaseChannel& channel,
                               const Povm& povm) {
  if (povm.dim() != rho0.dim()) fail(ErrorCode::DimMismatch, "POVM does not match the state");
  const Matrix h = channel.full_generator(rho0.dims());
  const Matrix u = expi_hermitian(-channel.theta * h);
  const Matrix rho = u * rho0.matrix() * u.adjoint();
  const Matrix drho = Complex(0, -1) * (h * rho - rho * h);
  double fisher = 0.0;
  for (const auto& element : povm.elements()) {
    const double p = (rho * element.matrix()).trace().real();
    const double dp = (drho * element.matrix()).trace().real();
    if (p <= kOutcomeCutoff) {
      if (dp * dp <= kOutcomeCutoff) continue;
      fail(ErrorCode::SingularOutcome, "outcome with vanishing probability has nonzero slope");
    }
    fisher += dp * dp / p;
  }
  return fisher;
}

/// Smallest variance reachable with n repetitions: 1 / (n F).
inline double cramer_rao(double fisher_value, long n) {
  if (n < 1) fail(ErrorCode::OutOfRange, "repetitions must be >= 1");
  if (!(fisher_value > 0.0)) fail(ErrorCode::ZeroInformation, "Fisher information is zero");
  return 1.0 / (static_cast<double>(n) * fisher_value);
}

/// M_mn = 1/2 sum_{ij} (p_i - p_j)^2/(p_i + p_j) <i|sigma_m|j><j|sigma_n|i>.
inline Eigen::Matrix3d ip_m_matrix(const DensityMatrix& rho) {
  detail::require_qubit_qudit(rho);
  const detail::FisherContext ctx(rho);
  std::array<Matrix, 3> s;
  for (int m = 0; m < 3; ++m) {
    s[m] = ctx.vectors.adjoint() * embed(pauli(m), rho.dims(), 0) * ctx.vectors;
  }
  Eigen::Matrix3d out = Eigen::Matrix3d::Zero();
  for (int m = 0; m < 3; ++m) {
    for (int n = m; n < 3; ++n) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < s[m].rows(); ++i) {
        for (Eigen::Index j = 0; j < s[m].cols(); ++j) {
          if (ctx.weight(i, j) == 0.0) continue;
          acc += ctx.weight(i, j) * (s[m](i, j) * s[n](j, i)).real();
        }
      }
      out(m, n) = 0.5 * acc;
      out(n, m) = out(m, n);
    }
  }
  return out;
}

/// Interferometric power of a qubit-qudit state for H_A = n·sigma:
/// lambda_min(M), certified by the bottom eigenvector of M.
inline MeasureResult ip_qubit_qudit(const DensityMatrix& rho) {
  const Eigen::Matrix3d m = ip_m_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(m);
  const Eigen::Vector3d n = solver.eigenvectors().col(0);
  MeasureResult out;
  out.value = clamp_reported(solver.eigenvalues()(0));
  out.direction = n;
  out.certificate = Observable::pauli_direction(n);
  out.evaluations = 1;
  return out;
}

/// One quarter of the worst-case quantum Fisher information over local
/// Hamiltonians U diag(spectrum) U^dagger on subsystem A.
inline MeasureResult ip_general(const DensityMatrix& rho, const RealVector& spectrum,
                                const OptimizerConfig& cfg = {}) {
  detail::require_bipartite(rho);
  const int d = rho.subsystem_dim(0);
  const RealVector lambda = detail::checked_spectrum(spectrum, d);
  const detail::FisherContext ctx(rho);
  const Matrix diag = lambda.cast<Complex>().asDiagonal();
  auto objective = [&](const Matrix& u) {
    return 0.25 * ctx.qfi(embed(u * diag * u.adjoint(), rho.dims(), 0));
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
