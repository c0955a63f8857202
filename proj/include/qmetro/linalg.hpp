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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qmetro/error.hpp"

namespace qmetro {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

/*******************************************************************************
 * TOLERANCES
 ******************************************************************************/

// All tolerances are absolute: every operator handled here has O(1) entries.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kClampTol = 1e-10;
inline constexpr double kTraceTol = 1e-8;
inline constexpr double kPositivityTol = 1e-8;
inline constexpr double kUnitaryTol = 1e-10;

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

inline double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

inline int product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

/*******************************************************************************
 * HERMITIAN OPERATORS AND SPECTRAL DECOMPOSITION
 ******************************************************************************/

/// A square complex matrix that passed the Hermiticity check. The stored
/// matrix is the exact Hermitian part of the input.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m, double tol = kHermitianTol) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
      fail(ErrorCode::DimMismatch, "Hermitian operator must be square and non-empty");
    }
    const double defect = hermiticity_defect(m);
    if (!(defect <= tol)) {
      fail(ErrorCode::NotHermitian,
           "max |M - M^dagger| = " + std::to_string(defect));
    }
    matrix_ = 0.5 * (m + m.adjoint());
  }

  static HermitianOperator identity(int d) {
    return HermitianOperator(Matrix::Identity(d, d));
  }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

struct EigDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // columns are orthonormal eigenvectors

  Matrix reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
  }
};

inline EigDecomposition eig_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline EigDecomposition eig_hermitian(const HermitianOperator& m) {
  return eig_hermitian(m.matrix());
}

/// V f(diag) V^dagger for a real function of the eigenvalues.
template <typename F>
Matrix spectral_apply(const EigDecomposition& e, F&& f) {
  RealVector mapped(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) mapped(i) = f(e.values(i));
  return e.vectors * mapped.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

// Eigenvalues at or below this are numerically zero (outside the support).
inline constexpr double kZeroEigenvalue = 1e-14;

/// x^s with the support convention: 0^s = 0 for every s in [0, 1] and
/// x^0 = 1 for x > 0.
inline double support_pow(double x, double s) {
  if (x <= kZeroEigenvalue) return 0.0;
  return s == 0.0 ? 1.0 : std::pow(x, s);
}

/// rho^s on the support of rho; s = 0 yields the support projector.
inline Matrix support_power(const EigDecomposition& e, double s) {
  return spectral_apply(e, [s](double x) { return support_pow(x, s); });
}

/*******************************************************************************
 * DENSITY MATRICES
 ******************************************************************************/

class DensityMatrix;
DensityMatrix validate_density(const HermitianOperator& m, const Dims& dims);

/// Trace-one positive operator together with its subsystem split and cached
/// spectral decomposition. Only validate_density constructs one.
class DensityMatrix {
 public:
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int subsystem_dim(int site) const { return dims_.at(site); }
  int subsystems() const { return static_cast<int>(dims_.size()); }
  const Matrix& matrix() const { return matrix_; }
  const EigDecomposition& eig() const { return eig_; }

  double purity() const { return eig_.values.squaredNorm(); }

 private:
  friend DensityMatrix validate_density(const HermitianOperator& m, const Dims& dims);
  DensityMatrix(Dims dims, Matrix m, EigDecomposition e)
      : dims_(std::move(dims)), matrix_(std::move(m)), eig_(std::move(e)) {}

  Dims dims_;
  Matrix matrix_;
  EigDecomposition eig_;
};

inline DensityMatrix validate_density(const HermitianOperator& m, const Dims& dims) {
  if (dims.empty() || product(dims) != m.dim()) {
    fail(ErrorCode::DimMismatch, "dims product does not match matrix side " +
                                     std::to_string(m.dim()));
  }
  for (int d : dims) {
    if (d < 1) fail(ErrorCode::DimMismatch, "subsystem dimensions must be positive");
  }
  const double tr = m.matrix().trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    fail(ErrorCode::NotUnitTrace, "trace = " + std::to_string(tr));
  }
  EigDecomposition e = eig_hermitian(m);
  if (e.values(0) < -kPositivityTol) {
    fail(ErrorCode::NotPositive,
         "minimum eigenvalue " + std::to_string(e.values(0)));
  }
  Matrix out = m.matrix();
  if (e.values(0) < 0.0) {
    e.values = e.values.cwiseMax(0.0);
    out = e.reconstruct();
  }
  const double total = e.values.sum();
  e.values /= total;
  out /= total;
  return DensityMatrix(dims, std::move(out), std::move(e));
}

inline DensityMatrix validate_density(const Matrix& m, const Dims& dims) {
  return validate_density(HermitianOperator(m), dims);
}

inline HermitianOperator mat_sqrt(const DensityMatrix& rho) {
  return HermitianOperator(support_power(rho.eig(), 0.5));
}

/*******************************************************************************
 * TENSOR STRUCTURE
 ******************************************************************************/

// Index convention: the first subsystem is the most significant digit,
// index = i_A * d_B + i_B.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return validate_density(kron(a.matrix(), b.matrix()), dims);
}

/// I ⊗ ... ⊗ local ⊗ ... ⊗ I with `local` acting on subsystem `site`.
inline Matrix embed(const Matrix& local, const Dims& dims, int site) {
  if (site < 0 || site >= static_cast<int>(dims.size())) {
    fail(ErrorCode::BadSubsystemIndex, "site " + std::to_string(site));
  }
  if (local.rows() != dims[site] || local.cols() != dims[site]) {
    fail(ErrorCode::DimMismatch, "local operator does not match subsystem " +
                                     std::to_string(site));
  }
  int left = 1, right = 1;
  for (int i = 0; i < site; ++i) left *= dims[i];
  for (int i = site + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];
  return kron(kron(Matrix::Identity(left, left), local), Matrix::Identity(right, right));
}

inline Matrix partial_trace_matrix(const Matrix& m, const Dims& dims, int keep) {
  if (keep < 0 || keep >= static_cast<int>(dims.size())) {
    fail(ErrorCode::BadSubsystemIndex, "keep = " + std::to_string(keep));
  }
  int left = 1, right = 1;
  for (int i = 0; i < keep; ++i) left *= dims[i];
  for (int i = keep + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];
  const int d = dims[keep];
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (int l = 0; l < left; ++l) {
        for (int r = 0; r < right; ++r) {
          acc += m((l * d + i) * right + r, (l * d + j) * right + r);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  if (rho.subsystems() < 2) {
    fail(ErrorCode::BadSubsystemIndex, "partial trace needs at least two subsystems");
  }
  Matrix reduced = partial_trace_matrix(rho.matrix(), rho.dims(), keep);
  return validate_density(reduced, {rho.subsystem_dim(keep)});
}

inline double trace_norm(const Matrix& hermitian) {
  return eig_hermitian(hermitian).values.cwiseAbs().sum();
}

inline double trace_norm(const HermitianOperator& m) { return trace_norm(m.matrix()); }

/// U rho U^dagger, revalidated.
inline DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& unitary) {
  return validate_density(HermitianOperator(unitary * rho.matrix() * unitary.adjoint(), 1e-9),
                          rho.dims());
}

/// Sum_i K_i rho K_i^dagger with every Kraus operator acting on `site`.
inline DensityMatrix apply_local_channel(const DensityMatrix& rho,
                                         const std::vector<Matrix>& kraus, int site) {
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& k : kraus) {
    const Matrix full = embed(k, rho.dims(), site);
    out += full * rho.matrix() * full.adjoint();
  }
  return validate_density(HermitianOperator(out, 1e-9), rho.dims());
}

/*******************************************************************************
 * PAULI MATRICES
 ******************************************************************************/

inline Matrix pauli(int axis) {
  Matrix p(2, 2);
  switch (axis) {
    case 0: p << 0, 1, 1, 0; break;
    case 1: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 2: p << 1, 0, 0, -1; break;
    default: fail(ErrorCode::OutOfRange, "Pauli axis must be 0, 1 or 2");
  }
  return p;
}

inline Matrix pauli_direction(const Eigen::Vector3d& n) {
  return n(0) * pauli(0) + n(1) * pauli(1) + n(2) * pauli(2);
}

}  // namespace qmetro
