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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gausscx/phase_space.hpp"

namespace gausscx {

/// Reads a state document
///
///   {"kind": "boson", "n_modes": N, "sigma": [[...]], "z": [...]}
///   {"kind": "fermion", "n_modes": N, "omega": [[...]]}
///
/// Bosons need "sigma" (the symmetric covariance, standard symplectic form).
/// Fermions take their antisymmetric covariance from "omega" (default: the
/// standard form); a fermionic "sigma", if present, must be the identity and
/// "z" is rejected.
GaussianState parse_state(std::string_view json_text, double tol = kDefaultTolerance);
GaussianState load_state(const std::filesystem::path& path, double tol = kDefaultTolerance);

std::string state_to_json(const GaussianState& state);
void save_state(const GaussianState& state, const std::filesystem::path& path);

}  // namespace gausscx
