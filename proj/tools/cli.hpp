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

#include <ostream>

namespace gausscx::cli {

/// Runs the gausscx command line. Results go to `out`; usage text and
/// diagnostics from argument parsing go to `err`. Returns the process exit
/// code: 0 on success, 2 for numeric-domain errors, 3 for validation errors
/// and 4 when the variational oracle does not converge.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gausscx::cli
