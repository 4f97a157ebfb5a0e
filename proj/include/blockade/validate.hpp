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

#ifndef BLOCKADE_VALIDATE_HPP
#define BLOCKADE_VALIDATE_HPP

#include <string>
#include <vector>

namespace blockade {

struct ValidationCheck {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const;
  std::size_t failures() const;
};

/// Built-in invariant suite over every library module. Runs in seconds.
ValidationReport run_validation_suite(unsigned workers = 1);

}  // namespace blockade

#endif  // BLOCKADE_VALIDATE_HPP
