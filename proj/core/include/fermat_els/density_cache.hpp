// Copyright 2026 The fermat-els Authors
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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "fermat_els/densities.hpp"

namespace fermat_els {

/// JSON-lines store of exact local densities. Each line is
///   {"n":3,"p":3,"method":"direct","exact_num":"...","exact_den":"..."}
/// New records are appended; rewrite() compacts through a temporary file
/// and a rename. Not thread-safe.
class DensityCache {
 public:
  static constexpr const char* kEnvVar = "FERMAT_ELS_CACHE_DIR";
  static constexpr const char* kFileName = "densities.jsonl";

  /// Loads the file if present. Throws std::runtime_error on a malformed line.
  explicit DensityCache(std::filesystem::path file);

  /// Directory from the environment variable, if set and non-empty.
  static std::optional<std::filesystem::path> env_dir();

  const std::filesystem::path& path() const { return path_; }
  std::size_t size() const { return records_.size(); }

  std::optional<LocalDensity> lookup(int n, std::int64_t p) const;

  /// Records the density and appends it to the file. Later records for the
  /// same (n, p) replace earlier ones on load.
  void store(const LocalDensity& density);

  /// Rewrites the file with one record per (n, p), atomically.
  void rewrite() const;

  static std::string encode(const LocalDensity& density);
  static LocalDensity decode(const std::string& line);

 private:
  std::filesystem::path path_;
  std::map<std::pair<int, std::int64_t>, LocalDensity> records_;
};

/// Writes text to path via a sibling temporary file and rename.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace fermat_els
