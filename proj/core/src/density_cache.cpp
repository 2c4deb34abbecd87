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

#include "fermat_els/density_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fermat_els {

using nlohmann::json;

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

DensityCache::DensityCache(std::filesystem::path file) : path_(std::move(file)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      LocalDensity d = decode(line);
      records_[{d.n, d.p}] = std::move(d);
    } catch (const std::exception& e) {
      throw std::runtime_error(path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<std::filesystem::path> DensityCache::env_dir() {
  const char* value = std::getenv(kEnvVar);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::filesystem::path(value);
}

std::optional<LocalDensity> DensityCache::lookup(int n, std::int64_t p) const {
  auto it = records_.find({n, p});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void DensityCache::store(const LocalDensity& density) {
  records_[{density.n, density.p}] = density;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + path_.string());
  out << encode(density) << '\n';
}

void DensityCache::rewrite() const {
  std::ostringstream buf;
  for (const auto& [key, density] : records_) buf << encode(density) << '\n';
  write_file_atomically(path_, buf.str());
}

std::string DensityCache::encode(const LocalDensity& density) {
  json j;
  j["n"] = density.n;
  j["p"] = density.p;
  j["method"] = to_string(density.method);
  j["exact_num"] = density.exact.numerator().get_str();
  j["exact_den"] = density.exact.denominator().get_str();
  return j.dump();
}

LocalDensity DensityCache::decode(const std::string& line) {
  const json j = json::parse(line);
  LocalDensity d;
  d.n = j.at("n").get<int>();
  d.p = j.at("p").get<std::int64_t>();
  d.method = parse_density_method(j.at("method").get<std::string>());
  d.exact = BigRational(BigInt(j.at("exact_num").get<std::string>()),
                        BigInt(j.at("exact_den").get<std::string>()));
  const BigRational one(1);
  d.normalized = d.exact / (one - BigRational(1, d.p)).pow(3);
  return d;
}

}  // namespace fermat_els
