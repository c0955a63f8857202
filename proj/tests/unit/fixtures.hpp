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
#include <gtest/gtest.h>

#include "qmetro/qmetro.hpp"

namespace qmetro::testing {

/// Deterministic state G G^dagger / tr with
/// G_jk = cos(1.3j + 2.1k + 0.7jk) + i sin(0.9j - 1.7k + 0.5 + 0.3jk).
/// Reference values for these states were computed independently.
inline DensityMatrix fixed_state(int da, int db, int rank) {
  const int d = da * db;
  Matrix g(d, rank);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < rank; ++k) {
      g(j, k) = Complex(std::cos(1.3 * j + 2.1 * k + 0.7 * j * k),
                        std::sin(0.9 * j - 1.7 * k + 0.5 + 0.3 * j * k));
    }
  }
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return validate_density(m, {da, db});
}

inline DensityMatrix diag_state(const std::vector<double>& p, const Dims& dims) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
  return validate_density(m, dims);
}

/// Random classical-quantum state on C^da ⊗ C^db with a Haar basis on A.
inline DensityMatrix random_cq(int da, int db, Rng& rng) {
  std::vector<double> p(da);
  double total = 0.0;
  for (double& x : p) {
    x = std::abs(std::cos(static_cast<double>(rng() % 1000))) + 0.05;
    total += x;
  }
  for (double& x : p) x /= total;
  std::vector<DensityMatrix> sigmas;
  for (int i = 0; i < da; ++i) sigmas.push_back(random_density({db}, db, rng));
  return make_cq(p, haar_unitary(da, rng), sigmas);
}

inline OptimizerConfig quick_optimizer(std::uint64_t seed = 7) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace qmetro::testing
