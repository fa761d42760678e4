// Copyright 2026 The qforest Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace qforest {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitInvariant = 2,
  kExitCapExceeded = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Exactly one
/// JSON document goes to `out` (unless --text or --help); diagnostics go to
/// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qforest
