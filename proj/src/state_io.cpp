// Copyright 2026 The gausscx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gausscx/state_io.hpp"

#include <fstream>
#include <sstream>

#include "gausscx/errors.hpp"
#include "json.hpp"

namespace gausscx {
namespace {

using nlohmann::json;

Matrix read_matrix(const json& doc, const char* key, int dim) {
  const json& rows = doc.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string("\"") + key + "\" must have " + std::to_string(dim) + " rows");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::string("\"") + key + "\" must be " + std::to_string(dim) + "x" +
                      std::to_string(dim));
    }
    for (int j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        throw Error(ErrorCode::kParseError, std::string("\"") + key + "\" has a non-numeric entry");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string("\"") + key + "\" has non-finite entries");
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

GaussianState parse_state(std::string_view json_text, double tol) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  try {
    if (!doc.is_object()) {
      throw Error(ErrorCode::kParseError, "state document must be a JSON object");
    }
    const auto kind_text = doc.at("kind").get<std::string>();
    StateKind kind;
    if (kind_text == "boson") {
      kind = StateKind::kBoson;
    } else if (kind_text == "fermion") {
      kind = StateKind::kFermion;
    } else {
      throw Error(ErrorCode::kParseError, "\"kind\" must be \"boson\" or \"fermion\"");
    }
    const int n = doc.at("n_modes").get<int>();
    if (n < 1) {
      throw Error(ErrorCode::kInvalidArgument, "\"n_modes\" must be positive");
    }
    const int dim = 2 * n;
    Vector z;
    if (doc.contains("z")) {
      if (kind == StateKind::kFermion) {
        throw Error(ErrorCode::kDisplacementPresent, "fermionic states cannot have \"z\"");
      }
      const auto values = doc.at("z").get<std::vector<double>>();
      if (static_cast<int>(values.size()) != dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "\"z\" must have " + std::to_string(dim) + " entries");
      }
      z = Eigen::Map<const Vector>(values.data(), dim);
      if (!z.allFinite()) {
        throw Error(ErrorCode::kNonFinite, "\"z\" has non-finite entries");
      }
    }
    if (kind == StateKind::kBoson) {
      if (doc.contains("omega")) {
        throw Error(ErrorCode::kInvalidArgument,
                    "bosonic states use the standard symplectic form; drop \"omega\"");
      }
      const CovarianceMatrix sigma(read_matrix(doc, "sigma", dim), tol);
      auto j = complex_structure_from_covariance(sigma, SymplecticForm::standard(n), kind, tol);
      return GaussianState(std::move(j), std::move(z), tol);
    }
    if (doc.contains("sigma")) {
      const Matrix sigma = read_matrix(doc, "sigma", dim);
      if (relative_residual(sigma - Matrix::Identity(dim, dim), 1.0) > tol) {
        throw Error(ErrorCode::kInvalidArgument,
                    "fermionic \"sigma\" must be the identity; put the state in \"omega\"");
      }
    }
    const SymplecticForm omega = doc.contains("omega")
                                     ? SymplecticForm(read_matrix(doc, "omega", dim), tol)
                                     : SymplecticForm::standard(n);
    auto j = complex_structure_from_covariance(CovarianceMatrix::identity(n), omega, kind, tol);
    return GaussianState(std::move(j), Vector(), tol);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

GaussianState load_state(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_state(buffer.str(), tol);
}

std::string state_to_json(const GaussianState& state) {
  json doc;
  doc["kind"] = std::string(kind_name(state.kind()));
  doc["n_modes"] = state.n_modes();
  if (state.kind() == StateKind::kBoson) {
    doc["sigma"] = matrix_json(state.covariance().matrix());
    if (state.has_displacement()) {
      doc["z"] = std::vector<double>(state.z().data(), state.z().data() + state.z().size());
    }
  } else {
    doc["omega"] = matrix_json(state.j());
  }
  return doc.dump(2);
}

void save_state(const GaussianState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kParseError, "cannot write " + path.string());
  }
  out << state_to_json(state) << '\n';
}

}  // namespace gausscx
