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

#include "blockade/cli/output.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "blockade/errors.hpp"

namespace blockade::cli {

namespace fs = std::filesystem;

std::string format_value(double v) {
  if (!std::isfinite(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string csv_text(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
  std::string out = "# units: kappa2\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw Error("sha256: digest computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

OutputWriter::OutputWriter(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_))
    throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

OutputWriter::~OutputWriter() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& f : files_) fs::remove(temp_path(f.name), ec);
}

fs::path OutputWriter::temp_path(const std::string& name) const { return dir_ / ("." + name + ".partial"); }

void OutputWriter::add(const std::string& name, const std::string& content) {
  if (committed_) throw IoError("output already committed");
  const fs::path tmp = temp_path(name);
  files_.push_back({name, sha256_hex(content), content.size()});
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + tmp.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("write failed for '" + tmp.string() + "'");
}

void OutputWriter::commit() {
  for (std::size_t i = 0; i < files_.size(); ++i) {
    std::error_code ec;
    fs::rename(temp_path(files_[i].name), dir_ / files_[i].name, ec);
    if (ec) {
      std::error_code ignored;
      for (std::size_t k = 0; k < i; ++k) fs::remove(dir_ / files_[k].name, ignored);
      throw IoError("cannot move '" + files_[i].name + "' into place: " + ec.message());
    }
  }
  committed_ = true;
}

}  // namespace blockade::cli
