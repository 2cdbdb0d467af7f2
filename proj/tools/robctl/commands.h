// Copyright 2026 The robctl Authors
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

#ifndef ROBCTL_TOOLS_COMMANDS_H_
#define ROBCTL_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace robctl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitCapability = 4;

// Runs one subcommand. args excludes the program name. The report goes to
// out (and to --report FILE when given), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace robctl::cli

#endif  // ROBCTL_TOOLS_COMMANDS_H_
