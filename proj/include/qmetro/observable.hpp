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
#include <numeric>
#include <optional>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

inline constexpr double kSpectralGapTol = 1e-9;

enum class Side { A, B };

inline int site_index(Side side) { return side == Side::A ? 0 : 1; }

/// Evenly spaced spectrum from -1 to +1. For d = 2 this is {-1, 1}, so the
/// observable is a Pauli direction.
inline RealVector default_spectrum(int d) {
  if (d < 2) fail(ErrorCode::DegenerateSpectrum, "spectrum needs at least two levels");
  return RealVector::LinSpaced(d, -1.0, 1.0);
}

inline void check_nondegenerate(const RealVector& sorted) {
  for (Eigen::Index i = 1; i < sorted.size(); ++i) {
    if (sorted(i) - sorted(i - 1) < kSpectralGapTol) {
      fail(ErrorCode::DegenerateSpectrum,
           "spectral gap below 1e-9 at level " + std::to_string(i));
    }
  }
}

/// Hermitian operator K = U diag(spectrum) U^dagger with a non-degenerate
/// spectrum stored explicitly (ascending) next to its eigenbasis.
class Observable {
 public:
  Observable(const RealVector& spectrum, const Matrix& basis) {
    if (spectrum.size() == 0 || basis.rows() != spectrum.size() ||
        basis.cols() != spectrum.size()) {
      fail(ErrorCode::DimMismatch, "spectrum length must match the basis side");
    }
    const double defect = unitarity_defect(basis);
    if (!(defect <= kUnitaryTol)) {
      fail(ErrorCode::NotUnitary, "basis unitarity defect " + std::to_string(defect));
    }
    std::vector<int> order(spectrum.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return spectrum(a) < spectrum(b); });
    spectrum_.resize(spectrum.size());
    basis_.resize(basis.rows(), basis.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
      spectrum_(k) = spectrum(order[k]);
      basis_.col(k) = basis.col(order[k]);
    }
    check_nondegenerate(spectrum_);
  }

  static Observable diagonal(const RealVector& spectrum) {
    return Observable(spectrum, Matrix::Identity(spectrum.size(), spectrum.size()));
  }

  /// Spectrum and basis recovered from a Hermitian matrix.
  static Observable from_matrix(const HermitianOperator& m) {
    const EigDecomposition e = eig_hermitian(m);
    return Observable(e.values, e.vectors);
  }

  /// scale * n·sigma, spectrum {-scale, +scale}.
  static Observable pauli_direction(const Eigen::Vector3d& n, double scale = 1.0) {
    const Eigen::Vector3d unit = n.normalized();
    return from_matrix(HermitianOperator(scale * qmetro::pauli_direction(unit)));
  }

  int dim() const { return static_cast<int>(spectrum_.size()); }
  const RealVector& spectrum() const { return spectrum_; }
  const Matrix& basis() const { return basis_; }

  Matrix matrix() const {
    return basis_ * spectrum_.cast<Complex>().asDiagonal() * basis_.adjoint();
  }
  HermitianOperator op() const { return HermitianOperator(matrix(), 1e-9); }

 private:
  RealVector spectrum_;
  Matrix basis_;
};

/// Value of a correlation measure with the observable (or Hamiltonian) that
/// attains it.
struct MeasureResult {
  double value = 0.0;
  std::optional<Observable> certificate;
  std::optional<Eigen::Vector3d> direction;  // qubit closed forms only
  int restarts_used = 0;
  bool converged = true;
  long evaluations = 0;
};

inline double clamp_reported(double v) {
  return (v < 0.0 && v >= -1e-12) ? 0.0 : v;
}

}  // namespace qmetro
