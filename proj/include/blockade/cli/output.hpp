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

#ifndef BLOCKADE_CLI_OUTPUT_HPP
#define BLOCKADE_CLI_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace blockade::cli {

/// Scientific notation with 12 significant digits; empty for NaN or Inf.
std::string format_value(double v);

/// `# units: kappa2`, the column line, then one line per row.
std::string csv_text(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);

std::string sha256_hex(const std::string& bytes);

struct EmittedFile {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Stages files as hidden temporaries and renames them into place on
/// commit(). Uncommitted temporaries are removed on destruction.
class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path dir);
  ~OutputWriter();
  OutputWriter(const OutputWriter&) = delete;
  OutputWriter& operator=(const OutputWriter&) = delete;

  void add(const std::string& name, const std::string& content);
  void commit();
  const std::vector<EmittedFile>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path temp_path(const std::string& name) const;

  std::filesystem::path dir_;
  std::vector<EmittedFile> files_;
  bool committed_ = false;
};

}  // namespace blockade::cli

#endif  // BLOCKADE_CLI_OUTPUT_HPP
