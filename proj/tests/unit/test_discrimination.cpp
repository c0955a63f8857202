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

#include <numbers>

#include "fixtures.hpp"

namespace qmetro {
namespace {

using std::numbers::pi;
using testing::fixed_state;

// Bell pair against its copy rotated by exp(i pi/4 sigma_z) on A, exact
// multi-copy errors from dense trace norms.
constexpr double kBellRotatedErrors[] = {0.14644660940672627, 0.0669872981077807,
                                         0.03229282665325617, 0.01587708172407165,
                                         0.007874507874260028};
constexpr double kFixedPairQ = 0.38901796178972664;
constexpr double kFixedPairOverlap = 0.55165359320377323;
constexpr double kFixed22DsQuarterPi = 0.017958574874394895;
constexpr double kFixed23DsQuarterPi = 0.07897510988743195;

DensityMatrix reversed_fixed_state() {
  const Matrix m = fixed_state(2, 2, 4).matrix();
  Matrix r(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r(i, j) = m(3 - i, 3 - j);
  }
  return validate_density(r, {2, 2});
}

DensityMatrix rotated_bell(double lambda) {
  const Matrix c = embed(expi_hermitian(lambda * pauli(2)), {2, 2}, 0);
  return conjugate(make_bell(), c);
}

TEST(Helstrom, ZeroVersusPlus) {
  const DensityMatrix zero = testing::diag_state({1, 0}, {2});
  const DensityMatrix plus = make_fig1_state(1.0);
  EXPECT_NEAR(helstrom_error(zero, plus, 1), 0.5 * (1.0 - 1.0 / std::sqrt(2.0)), 1e-14);
  EXPECT_NEAR(helstrom_error(zero, plus, 1), 0.1464466094067262, 1e-14);
}

TEST(Helstrom, IdenticalAndOrthogonal) {
  const DensityMatrix rho = fixed_state(2, 2, 4);
  for (int n = 1; n <= 3; ++n) EXPECT_NEAR(helstrom_error(rho, rho, n), 0.5, 1e-12);
  const DensityMatrix zero = testing::diag_state({1, 0}, {2});
  const DensityMatrix one = testing::diag_state({0, 1}, {2});
  EXPECT_NEAR(helstrom_error(zero, one, 1), 0.0, 1e-15);
}

TEST(Helstrom, BellRotatedSequence) {
  const DensityMatrix bell = make_bell();
  const DensityMatrix other = rotated_bell(pi / 4);
  for (int n = 1; n <= 5; ++n) {
    EXPECT_NEAR(helstrom_error(bell, other, n), kBellRotatedErrors[n - 1], 1e-12) << "n = " << n;
  }
}

TEST(Helstrom, DimensionGuard) {
  const DensityMatrix bell = make_bell();
  try {
    helstrom_error(bell, bell, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyCopies);
  }
  try {
    helstrom_error(bell, make_fig1_state(0.5), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Chernoff, SelfIsOne) {
  const ChernoffResult c = chernoff(fixed_state(2, 3, 6), fixed_state(2, 3, 6));
  EXPECT_NEAR(c.q_value, 1.0, 1e-12);
  EXPECT_NEAR(c.exponent, 0.0, 1e-12);
}

TEST(Chernoff, FixedPairMatchesReference) {
  const DensityMatrix a = fixed_state(2, 2, 2), b = reversed_fixed_state();
  const ChernoffResult c = chernoff(a, b);
  EXPECT_NEAR(c.q_value, kFixedPairQ, 1e-9);
  EXPECT_NEAR(std::exp(-c.exponent), c.q_value, 1e-12);
  EXPECT_NEAR(sqrt_overlap(a, b), kFixedPairOverlap, 1e-10);
  EXPECT_LE(c.q_value, sqrt_overlap(a, b) + 1e-9);
}

TEST(Chernoff, PureStateGivesFidelity) {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix psi = random_pure({2, 2}, rng);
    const DensityMatrix rho = random_density({2, 2}, 1 + i % 4, rng);
    EXPECT_NEAR(chernoff(psi, rho).q_value, uhlmann_fidelity(psi, rho), 1e-9);
    EXPECT_NEAR(chernoff(rho, psi).q_value, uhlmann_fidelity(rho, psi), 1e-9);
  }
}

TEST(Chernoff, BellRotatedExponentIsLogTwo) {
  const ChernoffResult c = chernoff(make_bell(), rotated_bell(pi / 4));
  EXPECT_NEAR(c.q_value, 0.5, 1e-12);
  EXPECT_NEAR(c.exponent, std::log(2.0), 1e-12);
}

TEST(Chernoff, BoundsEveryFiniteCopyError) {
  Rng rng(32);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix a = random_density({2}, 2, rng), b = random_density({2}, 1 + i % 2, rng);
    const double q = chernoff(a, b).q_value;
    for (int n = 1; n <= 3; ++n) EXPECT_LE(helstrom_error(a, b, n), 0.5 * std::pow(q, n) + 1e-9);
  }
}

TEST(Chernoff, FunctionIsConvexInS) {
  Rng rng(33);
  const DensityMatrix a = random_density({3}, 3, rng), b = random_density({3}, 2, rng);
  const Matrix overlap = a.eig().vectors.adjoint() * b.eig().vectors;
  const detail::SpectralPair g{a.eig().values, b.eig().values, overlap.cwiseAbs2()};
  std::vector<double> v;
  for (int k = 0; k <= 100; ++k) v.push_back(g(k / 100.0));
  for (int k = 1; k < 100; ++k) EXPECT_GE(v[k - 1] - 2 * v[k] + v[k + 1], -1e-9);
}

TEST(SHalfLemma, RandomPairsAndPureState) {
  Rng rng(34);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density({2, 2}, 1 + i % 4, rng);
    const Matrix g = ginibre(4, 4, rng);
    const SHalfCheck c = s_half_lemma_check(rho, HermitianOperator(g + g.adjoint()));
    EXPECT_NEAR(c.minimum, c.at_half, 1e-9);
  }
  const DensityMatrix psi = random_pure({2}, rng);
  const HermitianOperator x(pauli(0));
  const double mean = (psi.matrix() * x.matrix()).trace().real();
  const SHalfCheck c = s_half_lemma_check(psi, x);
  EXPECT_NEAR(c.at_half, mean * mean, 1e-12);
  EXPECT_NEAR(c.minimum, mean * mean, 1e-12);
}

TEST(SHalfLemma, CommutingOperatorIsConstant) {
  const DensityMatrix rho = testing::diag_state({0.2, 0.8}, {2});
  const SHalfCheck c = s_half_lemma_check(rho, HermitianOperator(pauli(2)));
  EXPECT_NEAR(c.minimum, 1.0, 1e-12);
  EXPECT_NEAR(c.at_half, 1.0, 1e-12);
}

TEST(DsQubit, BellAndClosedFormRelation) {
  EXPECT_NEAR(ds_qubit_qudit(make_bell(), pi / 2).value, 1.0, 1e-12);
  const DensityMatrix rho = fixed_state(2, 2, 4);
  EXPECT_NEAR(ds_qubit_qudit(rho, pi / 4).value, kFixed22DsQuarterPi, 1e-9);
  EXPECT_NEAR(ds_qubit_qudit(fixed_state(2, 3, 6), pi / 4).value, kFixed23DsQuarterPi, 1e-9);
  try {
    ds_qubit_qudit(rho, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(DsQubit, SmallLambdaApproachesScaledLqu) {
  const DensityMatrix rho = fixed_state(2, 3, 6);
  const double lambda = 1e-3;
  const double lqu_scaled = lambda * lambda * lqu_qubit_qudit(rho).value;
  EXPECT_NEAR(ds_qubit_qudit(rho, lambda).value / lqu_scaled, 1.0, 1e-6);
}

TEST(DsGeneral, MatchesQubitClosedForm) {
  const DensityMatrix rho = fixed_state(2, 3, 6);
  const MeasureResult r = ds_general(rho, (pi / 4) * default_spectrum(2), testing::quick_optimizer());
  EXPECT_NEAR(r.value, kFixed23DsQuarterPi, 1e-7);
  EXPECT_TRUE(r.converged);
}

TEST(DsGeneral, ShiftInvariant) {
  const DensityMatrix rho = fixed_state(2, 2, 4);
  RealVector base = (pi / 4) * default_spectrum(2);
  const double v0 = ds_general(rho, base, testing::quick_optimizer()).value;
  const double v1 = ds_general(rho, base.array() + 0.7, testing::quick_optimizer()).value;
  EXPECT_NEAR(v0, v1, 1e-8);
}

TEST(DsGeneral, ZeroForClassicalQuantum) {
  Rng rng(35);
  const DensityMatrix cq = testing::random_cq(3, 2, rng);
  EXPECT_LT(ds_general(cq, default_spectrum(3), testing::quick_optimizer()).value, 1e-7);
}

TEST(DsPure, MatchesReference) {
  const DensityMatrix psi = pure_schmidt({0.5, 0.3, 0.2}, 3, 3);
  RealVector third(3), unit(3);
  third << 0.0, 2 * pi / 3, 4 * pi / 3;
  unit << 0.0, 1.0, 2.0;
  EXPECT_NEAR(ds_pure(psi, third).value, 0.93, 1e-12);
  EXPECT_NEAR(ds_pure(psi, unit).value, 0.3997864674515871, 1e-12);
}

TEST(DsPure, BellMatchesGeneral) {
  RealVector s(2);
  s << -pi / 2, pi / 2;
  EXPECT_NEAR(ds_pure(make_bell(), s).value, 1.0, 1e-12);
  EXPECT_NEAR(ds_general(make_bell(), s, testing::quick_optimizer()).value, 1.0, 1e-6);
}

TEST(DsPure, ProductStateIsZeroAndMixedRejected) {
  const DensityMatrix product = pure_schmidt({1.0}, 3, 2);
  EXPECT_NEAR(ds_pure(product, RealVector::LinSpaced(3, 0.0, 2.0)).value, 0.0, 1e-14);
  try {
    ds_pure(make_werner(0.5), default_spectrum(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPure);
  }
}

TEST(DsPure, AgreesWithGeneralOnRandomPureState) {
  Rng rng(36);
  const DensityMatrix psi = random_pure({3, 3}, rng);
  const RealVector s = RealVector::LinSpaced(3, 0.0, 1.6);
  EXPECT_NEAR(ds_pure(psi, s).value, ds_general(psi, s, testing::quick_optimizer()).value, 1e-6);
}

TEST(DsPureHarmonic, BellAndSingleCoefficient) {
  const HarmonicDsResult bell = ds_pure_harmonic(make_bell(), pi);
  EXPECT_TRUE(bell.consistent);
  EXPECT_NEAR(bell.formula_value, 1.0, 1e-12);
  const HarmonicDsResult product = ds_pure_harmonic(pure_schmidt({1.0}, 4, 4), pi / 2);
  EXPECT_NEAR(product.formula_value, 0.0, 1e-14);
  EXPECT_TRUE(product.consistent);
}

TEST(DsPureHarmonic, AgreesWithExhaustiveSearch) {
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix psi = random_pure({4, 4}, rng);
    for (double omega : {0.3, 1.0, pi / 2}) {
      const HarmonicDsResult r = ds_pure_harmonic(psi, omega);
      EXPECT_GE(r.formula_value, r.exhaustive.value - 1e-12);
      EXPECT_TRUE(r.consistent) << "omega " << omega << " gap " << r.discrepancy;
    }
  }
}

TEST(DsPureHarmonic, RejectsLargeFrequency) {
  try {
    ds_pure_harmonic(make_bell(), 4.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

}  // namespace
}  // namespace qmetro
