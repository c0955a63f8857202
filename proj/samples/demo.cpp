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

// Walks the Werner family from product to Bell and prints the three
// correlation measures next to the phase-estimation bound they guarantee.

#include <cstdio>
#include <limits>
#include <numbers>

#include "qmetro/qmetro.hpp"

int main() {
  using namespace qmetro;
  const long repetitions = 1000;
  std::printf("%-6s %-10s %-10s %-10s %-12s\n", "q", "lqu", "ip", "ds", "worst_var");
  for (double q : linear_grid(0.0, 1.0, 10)) {
    const DensityMatrix rho = make_werner(q);
    const double lqu = lqu_qubit_qudit(rho).value;
    const double ip = ip_qubit_qudit(rho).value;
    const double ds = ds_qubit_qudit(rho, std::numbers::pi / 4).value;
    // Worst-case variance 1 / (4 n IP); infinite when the state is classical.
    const double worst = ip > 0.0 ? cramer_rao(4.0 * ip, repetitions) : std::numeric_limits<double>::infinity();
    std::printf("%-6.2f %-10.6f %-10.6f %-10.6f %-12.6g\n", q, lqu, ip, ds, worst);
  }

  const DensityMatrix bell = make_bell();
  const Matrix rotation = embed(expi_hermitian((std::numbers::pi / 4) * pauli(2)), {2, 2}, 0);
  const DiscriminationRecord rec = discriminate_pair(bell, conjugate(bell, rotation), 5);
  std::printf("\nBell vs rotated Bell: exponent %.6f\n", rec.chernoff.exponent);
  for (std::size_t n = 0; n < rec.errors.size(); ++n) {
    std::printf("  n=%zu  error %.6e  rate %.6f\n", n + 1, rec.errors[n], rec.rates[n]);
  }
  return 0;
}
