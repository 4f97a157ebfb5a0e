// Copyright 2026 The blockade-lab Authors
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

#ifndef BLOCKADE_CLI_COMMANDS_HPP
#define BLOCKADE_CLI_COMMANDS_HPP

#include <iosfwd>

namespace blockade::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitCapacity = 4,
  kExitIo = 5,
};

/// Entry point of the blockade-lab tool.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace blockade::cli

#endif  // BLOCKADE_CLI_COMMANDS_HPP
