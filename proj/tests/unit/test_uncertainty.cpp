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

#include "fixtures.hpp"

namespace qmetro {
namespace {

using testing::fixed_state;

// Independent reference values (multi-start minimization of the skew
// information over Bloch directions, general unitaries for the qutrit case).
constexpr double kFixed22Lqu = 0.03591714974879334;
constexpr double kFixed23Lqu = 0.157950219774866;
constexpr double kFixed32LquUnitSpacing = 0.038821425337034365;
constexpr double kWernerHalfLqu = 0.19098300562505233;  // Bloch grid search

HermitianOperator sigma_z_on_a(const Dims& dims) {
  return HermitianOperator(embed(pauli(2), dims, 0));
}

TEST(Variance, SigmaZOnFig1IsOne) {
  for (double p : {0.0, 0.25, 0.5, 0.99, 1.0}) {
    EXPECT_NEAR(variance(make_fig1_state(p), HermitianOperator(pauli(2))), 1.0, 1e-14);
  }
}

TEST(SkewInformation, Fig1ClosedForm) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double skew = skew_information(make_fig1_state(p), HermitianOperator(pauli(2)));
    EXPECT_NEAR(skew, 1.0 - std::sqrt(1.0 - p * p), 1e-12) << "p = " << p;
  }
}

TEST(SkewInformation, MatchesTraceIdentity) {
  const DensityMatrix rho = fixed_state(2, 3, 6);
  Rng rng(8);
  const Matrix g = ginibre(6, 6, rng);
  const HermitianOperator o(g + g.adjoint());
  const Matrix root = mat_sqrt(rho).matrix();
  const double direct = (rho.matrix() * o.matrix() * o.matrix()).trace().real() -
                        (root * o.matrix() * root * o.matrix()).trace().real();
  EXPECT_NEAR(skew_information(rho, o), direct, 1e-12);
}

TEST(SkewInformation, BoundedByVariance) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_density({2, 3}, 1 + i % 6, rng);
    const Matrix g = ginibre(6, 6, rng);
    const HermitianOperator o(g + g.adjoint());
    const double skew = skew_information(rho, o);
    EXPECT_GE(skew, 0.0);
    EXPECT_LE(skew, variance(rho, o) + 1e-12);
    EXPECT_GE(classical_uncertainty(rho, o), 0.0);
  }
}

TEST(SkewInformation, PureStateEqualsVariance) {
  Rng rng(13);
  const DensityMatrix psi = random_pure({2, 2}, rng);
  const HermitianOperator o(embed(pauli(0), {2, 2}, 1));
  EXPECT_NEAR(skew_information(psi, o), variance(psi, o), 1e-12);
}

TEST(SkewInformation, VanishesForCommutingObservable) {
  const DensityMatrix rho = testing::diag_state({0.1, 0.2, 0.3, 0.4}, {2, 2});
  EXPECT_NEAR(skew_information(rho, sigma_z_on_a(rho.dims())), 0.0, 1e-15);
}

TEST(SkewInformation, DimensionMismatch) {
  try {
    skew_information(make_bell(), HermitianOperator(pauli(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Hellinger, SkewOfUnitaryObservableIsHellingerDistance) {
  const DensityMatrix rho = fixed_state(2, 2, 4);
  const Matrix k = embed(pauli_direction(Eigen::Vector3d(0.6, 0.0, 0.8)), rho.dims(), 0);
  const DensityMatrix flipped = conjugate(rho, k);
  EXPECT_NEAR(skew_information(rho, HermitianOperator(k)), hellinger_sq(rho, flipped), 1e-12);
  EXPECT_NEAR(hellinger_sq(rho, rho), 0.0, 1e-12);
}

TEST(Lqu, BellIsOne) {
  EXPECT_NEAR(lqu_qubit_qudit(make_bell()).value, 1.0, 1e-12);
}

TEST(Lqu, WernerHalfMatchesGridOracle) {
  const MeasureResult r = lqu_qubit_qudit(make_werner(0.5));
  EXPECT_NEAR(r.value, kWernerHalfLqu, 1e-12);
  EXPECT_NEAR(r.value, (3.0 - std::sqrt(5.0)) / 4.0, 1e-12);
}

TEST(Lqu, WernerZeroIsZero) {
  EXPECT_NEAR(lqu_qubit_qudit(make_werner(0.0)).value, 0.0, 1e-14);
}

TEST(Lqu, FixedStatesMatchReference) {
  EXPECT_NEAR(lqu_qubit_qudit(fixed_state(2, 2, 4)).value, kFixed22Lqu, 1e-9);
  EXPECT_NEAR(lqu_qubit_qudit(fixed_state(2, 3, 6)).value, kFixed23Lqu, 1e-9);
}

TEST(Lqu, CertificateAttainsValue) {
  const DensityMatrix rho = fixed_state(2, 3, 6);
  const MeasureResult r = lqu_qubit_qudit(rho);
  ASSERT_TRUE(r.certificate.has_value());
  const HermitianOperator k(embed(r.certificate->matrix(), rho.dims(), 0));
  EXPECT_NEAR(skew_information(rho, k), r.value, 1e-12);
}

TEST(LquGeneral, AgreesWithClosedForm) {
  const DensityMatrix rho = fixed_state(2, 3, 6);
  const MeasureResult r = lqu_general(rho, default_spectrum(2), Side::A, testing::quick_optimizer());
  EXPECT_NEAR(r.value, kFixed23Lqu, 1e-7);
  EXPECT_TRUE(r.converged);
}

TEST(LquGeneral, QutritMatchesReference) {
  const DensityMatrix rho = fixed_state(3, 2, 6);
  const MeasureResult r = lqu_general(rho, default_spectrum(3), Side::A, testing::quick_optimizer());
  EXPECT_NEAR(r.value, kFixed32LquUnitSpacing, 1e-7);
}

TEST(LquGeneral, SideBEqualsSwappedSideA) {
  const DensityMatrix rho = fixed_state(3, 2, 6);
  // Swap the factors: |a b> -> |b a>.
  Matrix swap = Matrix::Zero(6, 6);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 2; ++b) swap(b * 3 + a, a * 2 + b) = 1.0;
  }
  const DensityMatrix swapped =
      validate_density(Matrix(swap * rho.matrix() * swap.adjoint()), {2, 3});
  const double on_b = lqu_general(rho, default_spectrum(2), Side::B, testing::quick_optimizer()).value;
  EXPECT_NEAR(on_b, lqu_qubit_qudit(swapped).value, 1e-7);
}

TEST(LquGeneral, ShiftAndScale) {
  const DensityMatrix rho = fixed_state(2, 2, 4);
  RealVector shifted(2);
  shifted << 2.0, 4.0;
  const double v = lqu_general(rho, shifted, Side::A, testing::quick_optimizer()).value;
  EXPECT_NEAR(v, kFixed22Lqu, 1e-7);
}

TEST(LquGeneral, RejectsBadSpectrum) {
  RealVector s(3);
  s << 0, 1, 2;
  try {
    lqu_general(make_bell(), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
  RealVector flat(2);
  flat << 1, 1;
  try {
    lqu_general(make_bell(), flat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateSpectrum);
  }
}

}  // namespace
}  // namespace qmetro
