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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"

namespace qmetro {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qmetro_states_" + name)).string();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::OutOfRange;
}

TEST(Bell, IsPureWithMixedMarginal) {
  const DensityMatrix bell = make_bell();
  EXPECT_EQ(bell.dims(), (Dims{2, 2}));
  EXPECT_NEAR(bell.purity(), 1.0, 1e-14);
  EXPECT_LT(max_abs(partial_trace(bell, 0).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(Bell, IsZZEigenstate) {
  const DensityMatrix bell = make_bell();
  const Matrix zz = kron(pauli(2), pauli(2));
  EXPECT_LT(max_abs(zz * bell.matrix() - bell.matrix()), 1e-15);
}

TEST(Cq, ClassicallyCorrelatedDiagonal) {
  const DensityMatrix s0 = testing::diag_state({1, 0}, {2});
  const DensityMatrix s1 = testing::diag_state({0, 1}, {2});
  const DensityMatrix rho = make_cq({0.5, 0.5}, Matrix::Identity(2, 2), {s0, s1});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LT(max_abs(rho.matrix() - expected), 1e-15);
}

TEST(Cq, DegenerateWeightsGiveProduct) {
  Rng rng(2);
  const DensityMatrix s0 = random_density({3}, 3, rng);
  const DensityMatrix s1 = random_density({3}, 3, rng);
  const DensityMatrix rho = make_cq({1.0, 0.0}, Matrix::Identity(2, 2), {s0, s1});
  const DensityMatrix product = tensor(testing::diag_state({1, 0}, {2}), s0);
  EXPECT_LT(max_abs(rho.matrix() - product.matrix()), 1e-14);
}

TEST(Cq, Errors) {
  const DensityMatrix s = testing::diag_state({1, 0}, {2});
  EXPECT_EQ(code_of([&] { make_cq({0.5, 0.6}, Matrix::Identity(2, 2), {s, s}); }),
            ErrorCode::BadProbabilities);
  Matrix skew = Matrix::Identity(2, 2);
  skew(0, 1) = 0.3;
  EXPECT_EQ(code_of([&] { make_cq({0.5, 0.5}, skew, {s, s}); }), ErrorCode::NonOrthonormalBasis);
}

TEST(Cq, InvariantUnderBasisMeasurement) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = haar_unitary(3, rng);
    std::vector<DensityMatrix> sigmas;
    for (int i = 0; i < 3; ++i) sigmas.push_back(random_density({2}, 2, rng));
    const DensityMatrix cq = make_cq({0.2, 0.3, 0.5}, u, sigmas);
    Matrix dephased = Matrix::Zero(6, 6);
    for (int i = 0; i < 3; ++i) {
      const Matrix p = embed(u.col(i) * u.col(i).adjoint(), {3, 2}, 0);
      dephased += p * cq.matrix() * p;
    }
    EXPECT_LT(max_abs(dephased - cq.matrix()), 1e-10);
  }
}

TEST(Werner, Endpoints) {
  EXPECT_LT(max_abs(make_werner(0.0).matrix() - Matrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_LT(max_abs(make_werner(1.0).matrix() - make_bell().matrix()), 1e-15);
  EXPECT_EQ(code_of([] { make_werner(1.5); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { make_werner(-0.1); }), ErrorCode::OutOfRange);
}

TEST(Fig1, EndpointsAndSpectrum) {
  EXPECT_LT(max_abs(make_fig1_state(0.0).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  EXPECT_LT(max_abs(make_fig1_state(1.0).matrix() - plus), 1e-15);
  for (double p : {0.0, 0.3, 0.77, 1.0}) {
    const RealVector ev = make_fig1_state(p).eig().values;
    EXPECT_NEAR(ev(0), (1 - p) / 2, 1e-15);
    EXPECT_NEAR(ev(1), (1 + p) / 2, 1e-15);
  }
  EXPECT_EQ(code_of([] { make_fig1_state(1.01); }), ErrorCode::OutOfRange);
}

TEST(PureSchmidt, WeightsAppearOnMarginal) {
  const DensityMatrix psi = pure_schmidt({0.5, 0.3, 0.2}, 3, 4);
  EXPECT_NEAR(psi.purity(), 1.0, 1e-14);
  const RealVector ev = partial_trace(psi, 0).eig().values;
  EXPECT_NEAR(ev(2), 0.5, 1e-14);
  EXPECT_NEAR(ev(1), 0.3, 1e-14);
  EXPECT_NEAR(ev(0), 0.2, 1e-14);
}

TEST(StateSpec, Dispatch) {
  EXPECT_LT(max_abs(make_state({Family::Werner, {{"q", {0.4}}}, {}}).matrix() -
                    make_werner(0.4).matrix()),
            1e-15);
  EXPECT_EQ(make_state({Family::Product, {}, {2, 3}}).dims(), (Dims{2, 3}));
  EXPECT_EQ(make_state({Family::Cq, {{"p", {0.5, 0.5}}}, {}}).dims(), (Dims{2, 2}));
  EXPECT_EQ(code_of([] { make_state({Family::Fig1, {}, {}}); }), ErrorCode::ValidationError);
  EXPECT_EQ(parse_family("pure-schmidt"), Family::PureSchmidt);
  EXPECT_EQ(code_of([] { parse_family("ghz"); }), ErrorCode::ParseError);
}

TEST(StateIo, RoundTrip) {
  const DensityMatrix rho = testing::fixed_state(2, 3, 4);
  const std::string path = temp_path("roundtrip.json");
  save_state(rho, path);
  const DensityMatrix back = load_state(path);
  EXPECT_EQ(back.dims(), rho.dims());
  EXPECT_LT(max_abs(back.matrix() - rho.matrix()), 1e-12);
  std::remove(path.c_str());
}

TEST(StateIo, MalformedDimsIsParseError) {
  const std::string path = temp_path("bad_dims.json");
  std::ofstream(path) << R"({"dims": "two", "re": [[1]]})";
  EXPECT_EQ(code_of([&] { load_state(path); }), ErrorCode::ParseError);
  std::ofstream(path) << R"({"dims": [2], "re": [[1, 0]]})";
  EXPECT_EQ(code_of([&] { load_state(path); }), ErrorCode::ParseError);
  std::ofstream(path) << "{not json";
  EXPECT_EQ(code_of([&] { load_state(path); }), ErrorCode::ParseError);
  std::remove(path.c_str());
  EXPECT_EQ(code_of([&] { load_state(path); }), ErrorCode::ParseError);
}

TEST(StateIo, NonPositiveIsValidationError) {
  const std::string path = temp_path("non_psd.json");
  std::ofstream(path) << R"({"dims": [2], "re": [[1.5, 0], [0, -0.5]], "im": [[0, 0], [0, 0]]})";
  EXPECT_EQ(code_of([&] { load_state(path); }), ErrorCode::ValidationError);
  std::remove(path.c_str());
}

TEST(StateIo, ObservableRoundTripAndSpectrumCheck) {
  const Observable o = Observable::pauli_direction(Eigen::Vector3d(1, 2, 3), 0.7);
  const std::string path = temp_path("observable.json");
  save_observable(o, path);
  const Observable back = load_observable(path);
  EXPECT_LT(max_abs(back.matrix() - o.matrix()), 1e-12);
  std::ofstream(path) << R"({"dims": [2], "re": [[1, 0], [0, -1]], "spectrum": [-2, 2]})";
  EXPECT_EQ(code_of([&] { load_observable(path); }), ErrorCode::ValidationError);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace qmetro
