// Copyright 2026 The entdepth Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace entdepth::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    /// A check failed or a run was aborted.
    kFailure = 1,
    /// Bad arguments or configuration.
    kUsage = 2,
};

/// Parses `args` (without the program name) and runs the selected command.
/// Data goes to `out`, progress and diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Directory used when --out is not given: $ENTDEPTH_OUT, else ".".
std::string default_output_dir();

}  // namespace entdepth::cli
