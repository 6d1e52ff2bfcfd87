// Copyright 2026 The eosssd Authors.
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

#ifndef EOSSSD_TOOLS_CLI_H_
#define EOSSSD_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace eosssd::cli {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIterationLimit = 2;

// Entry point of the `eosssd` tool. Subcommands: generate, solve, oracle,
// compare, linearize-dump. Returns the process exit code.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace eosssd::cli

#endif  // EOSSSD_TOOLS_CLI_H_
