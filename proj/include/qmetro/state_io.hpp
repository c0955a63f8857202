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
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qmetro/linalg.hpp"
#include "qmetro/observable.hpp"

namespace qmetro {

// File layout: {"dims": [..], "re": [[..]], "im": [[..]]}, rows first.
// Observables add "spectrum": [..]; their matrix must be Hermitian with
// exactly that spectrum.

namespace detail {

inline nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
}

inline void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline nlohmann::json matrix_part(const Matrix& m, bool imag) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Parses dims and the complex matrix; shape problems are ParseErrors.
inline std::pair<Dims, Matrix> parse_matrix(const nlohmann::json& j, const std::string& where) {
  try {
    if (!j.is_object()) fail(ErrorCode::ParseError, where + ": top level must be an object");
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty()) {
      fail(ErrorCode::ParseError, where + ": 'dims' must be a non-empty integer list");
    }
    Dims dims;
    for (const auto& d : j["dims"]) {
      if (!d.is_number_integer() || d.get<int>() < 1) {
        fail(ErrorCode::ParseError, where + ": 'dims' entries must be positive integers");
      }
      dims.push_back(d.get<int>());
    }
    const int n = product(dims);
    if (!j.contains("re")) fail(ErrorCode::ParseError, where + ": missing 're'");
    Matrix m = Matrix::Zero(n, n);
    auto fill = [&](const nlohmann::json& part, bool imag) {
      if (!part.is_array() || static_cast<int>(part.size()) != n) {
        fail(ErrorCode::ParseError, where + ": matrix must have " + std::to_string(n) + " rows");
      }
      for (int r = 0; r < n; ++r) {
        const auto& row = part[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
          fail(ErrorCode::ParseError, where + ": row " + std::to_string(r) + " has wrong length");
        }
        for (int c = 0; c < n; ++c) {
          if (!row[c].is_number()) fail(ErrorCode::ParseError, where + ": non-numeric entry");
          const double v = row[c].get<double>();
          if (imag) {
            m(r, c) += Complex(0.0, v);
          } else {
            m(r, c) += v;
          }
        }
      }
    };
    fill(j["re"], false);
    if (j.contains("im")) fill(j["im"], true);
    return {dims, m};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, where + ": " + e.what());
  }
}

template <typename F>
auto as_validation(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(ErrorCode::ValidationError, std::string(to_string(e.code())) + ": " + e.what());
  }
}

}  // namespace detail

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
  return {{"dims", rho.dims()},
          {"re", detail::matrix_part(rho.matrix(), false)},
          {"im", detail::matrix_part(rho.matrix(), true)}};
}

inline DensityMatrix state_from_json(const nlohmann::json& j, const std::string& where = "state") {
  auto [dims, m] = detail::parse_matrix(j, where);
  return detail::as_validation([&] { return validate_density(m, dims); });
}

inline DensityMatrix load_state(const std::string& path) {
  return state_from_json(detail::read_json(path), path);
}

inline void save_state(const DensityMatrix& rho, const std::string& path) {
  detail::write_json(state_to_json(rho), path);
}

inline nlohmann::json observable_to_json(const Observable& o) {
  const Matrix m = o.matrix();
  return {{"dims", Dims{o.dim()}},
          {"re", detail::matrix_part(m, false)},
          {"im", detail::matrix_part(m, true)},
          {"spectrum", std::vector<double>(o.spectrum().data(),
                                           o.spectrum().data() + o.spectrum().size())}};
}

/// The spectrum field must match the eigenvalues of the matrix within 1e-8.
inline Observable observable_from_json(const nlohmann::json& j,
                                       const std::string& where = "observable") {
  auto [dims, m] = detail::parse_matrix(j, where);
  if (!j.contains("spectrum") || !j["spectrum"].is_array()) {
    fail(ErrorCode::ParseError, where + ": missing 'spectrum'");
  }
  RealVector spectrum(static_cast<Eigen::Index>(j["spectrum"].size()));
  for (std::size_t k = 0; k < j["spectrum"].size(); ++k) {
    if (!j["spectrum"][k].is_number()) fail(ErrorCode::ParseError, where + ": bad spectrum entry");
    spectrum(static_cast<Eigen::Index>(k)) = j["spectrum"][k].get<double>();
  }
  return detail::as_validation([&] {
    Observable o = Observable::from_matrix(HermitianOperator(m));
    RealVector sorted = spectrum;
    std::sort(sorted.data(), sorted.data() + sorted.size());
    if (sorted.size() != o.spectrum().size() ||
        (sorted - o.spectrum()).cwiseAbs().maxCoeff() > 1e-8) {
      fail(ErrorCode::DimMismatch, "'spectrum' disagrees with the matrix eigenvalues");
    }
    return o;
  });
}

inline Observable load_observable(const std::string& path) {
  return observable_from_json(detail::read_json(path), path);
}

inline void save_observable(const Observable& o, const std::string& path) {
  detail::write_json(observable_to_json(o), path);
}

}  // namespace qmetro
