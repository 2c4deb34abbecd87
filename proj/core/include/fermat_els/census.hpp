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

// Exhaustive count of everywhere locally soluble primitive triples in the
// cube [-B, B]^3, compared against C_n B^3 (log B)^(3 alpha_n - 3).

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fermat_els/arith.hpp"
#include "fermat_els/constants.hpp"
#include "fermat_els/local.hpp"

namespace fermat_els {

struct CensusCount {
  std::uint64_t els = 0;      // N(B)
  std::uint64_t coprime = 0;  // primitive triples in the cube

  CensusCount& operator+=(const CensusCount& o) {
    els += o.els;
    coprime += o.coprime;
    return *this;
  }
  friend bool operator==(const CensusCount&, const CensusCount&) = default;
};

/// Every triple of the cube, decided with els(). Reference strategy.
CensusCount count_els_direct(const ExponentContext& ctx, std::int64_t bound, const FactorTable& table);

struct CensusOptions {
  int threads = 1;
  /// Number of consecutive a1 values per shard.
  std::int64_t shard_size = 8;
};

/// Orbit representatives under coordinate permutations and global sign,
/// weighted by orbit size, with per-prime solubility caches.
CensusCount count_els_symmetric(const ExponentContext& ctx, std::int64_t bound,
                                const FactorTable& table, const CensusOptions& options = {});

/// Shards of the symmetric census: shard k covers the smallest coordinate
/// a1 in [-B + k s, -B + (k+1) s - 1] clipped to a1 <= 0.
std::int64_t census_shard_count(std::int64_t bound, std::int64_t shard_size);
CensusCount count_els_symmetric_shard(const ExponentContext& ctx, std::int64_t bound,
                                      const FactorTable& table, std::int64_t shard_size,
                                      std::int64_t shard);

/// Sum of orbit weights over the representatives; equals (2B+1)^3.
std::uint64_t symmetric_weight_total(std::int64_t bound);

struct CensusRow {
  std::int64_t bound = 0;
  std::uint64_t observed = 0;
  double predicted = 0.0;
  double ratio = 0.0;
  double elapsed_s = 0.0;
  std::uint64_t coprime = 0;
};

/// C_n B^3 (log B)^(3 alpha_n - 3).
double predicted_count(const ConstantReport& constant, std::int64_t bound);

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CensusInterrupted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepOptions {
  int threads = 1;
  std::int64_t shard_size = 8;
  std::optional<std::filesystem::path> checkpoint;
  /// Stop (throwing CensusInterrupted) once this many shards have been
  /// completed by this call. The checkpoint reflects every completed shard.
  std::optional<std::size_t> stop_after_shards;
};

inline constexpr int kCheckpointVersion = 1;

/// One row per bound (ascending). Completed shards are recorded in the
/// checkpoint, when given, via write-temp-then-rename after each shard; a
/// later call with the same checkpoint resumes where the last one stopped.
std::vector<CensusRow> census_sweep(const ExponentContext& ctx, const std::vector<std::int64_t>& bounds,
                                    const ConstantReport& constant, const SweepOptions& options = {});

/// As above, computing the constant with leading_constant(ctx, p_max).
std::vector<CensusRow> census_sweep(const ExponentContext& ctx, const std::vector<std::int64_t>& bounds,
                                    std::int64_t p_max, const SweepOptions& options = {});

/// Header `B,observed,predicted,ratio,elapsed_s`.
void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows);

}  // namespace fermat_els
