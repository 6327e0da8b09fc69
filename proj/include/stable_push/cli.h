// Copyright 2026 The stable_push Authors
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

#ifndef STABLE_PUSH_CLI_H_
#define STABLE_PUSH_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace stable_push {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitEpisodeFailed = 2;

// Output directory: --out, else $STABLE_PUSH_OUT, else the working directory.
inline constexpr char kOutputDirEnv[] = "STABLE_PUSH_OUT";

// Entry point of the stable_push tool. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace stable_push

#endif  // STABLE_PUSH_CLI_H_
