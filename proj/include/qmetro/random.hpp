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

#include <cstdint>
#include <random>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; maps (base seed, stream index) to an independent
/// seed so parallel or per-trial streams never share state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Complex Ginibre matrix, entries with E|z|^2 = 1.
inline Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// diag(R) moved into Q.
inline Matrix haar_unitary(int d, Rng& rng) {
  if (d < 1) fail(ErrorCode::OutOfRange, "unitary dimension must be >= 1");
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0);
    q.col(j) *= phase;
  }
  return q;
}

/// Ginibre-induced random state: G G^dagger / tr with G of shape d x rank.
inline DensityMatrix random_density(const Dims& dims, int rank, Rng& rng) {
  const int d = product(dims);
  if (rank < 1 || rank > d) {
    fail(ErrorCode::BadRank, "rank " + std::to_string(rank) + " not in [1, " +
                                 std::to_string(d) + "]");
  }
  const Matrix g = ginibre(d, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return validate_density(m, dims);
}

inline DensityMatrix random_pure(const Dims& dims, Rng& rng) {
  return random_density(dims, 1, rng);
}

/// Isometry C^in -> C^out drawn from the Haar measure (out >= in).
inline Matrix random_isometry(int in, int out, Rng& rng) {
  return haar_unitary(out, rng).leftCols(in);
}

/// Kraus operators of a random channel on C^d obtained from a Stinespring
/// isometry into C^d ⊗ C^count followed by the trace over the environment.
inline std::vector<Matrix> random_kraus(int d, int count, Rng& rng) {
  const Matrix v = random_isometry(d, d * count, rng);
  std::vector<Matrix> kraus;
  kraus.reserve(count);
  for (int i = 0; i < count; ++i) kraus.push_back(v.block(i * d, 0, d, d));
  return kraus;
}

}  // namespace qmetro
