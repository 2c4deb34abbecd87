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

#include "fermat_els/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "fermat_els/density_cache.hpp"

namespace fermat_els {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

// Read-only data shared by all workers for one bound.
class CensusTables {
 public:
  CensusTables(const ExponentContext& ctx, std::int64_t bound, const FactorTable& table)
      : ctx_(ctx), bound_(bound) {
    if (bound < 1) throw std::invalid_argument("census: B must be >= 1");
    if (table.limit() < bound) throw std::out_of_range("census: factor table smaller than B");

    factor_offset_.assign(static_cast<std::size_t>(bound) + 2, 0);
    for (std::int64_t v = 1; v <= bound; ++v) {
      factor_offset_[v] = static_cast<std::uint32_t>(factor_primes_.size());
      for (const auto& f : table.factorize(v)) factor_primes_.push_back(static_cast<std::int32_t>(f.prime));
    }
    factor_offset_[bound + 1] = static_cast<std::uint32_t>(factor_primes_.size());

    // n-th power coset index of each residue, for primes outside S(n).
    const int n = ctx.n();
    coset_.resize(static_cast<std::size_t>(bound) + 1);
    for (std::int64_t p : primes_up_to(bound)) {
      if (ctx.is_small_prime(p)) continue;
      const std::int64_t d = std::gcd<std::int64_t>(n, p - 1);
      auto& tab = coset_[p];
      tab.assign(static_cast<std::size_t>(p), 0);
      const std::int64_t g = primitive_root(p);
      std::int64_t x = 1;
      for (std::int64_t k = 0; k < p - 1; ++k) {
        tab[x] = static_cast<std::uint16_t>(k % d);
        x = x * g % p;
      }
    }
    for (std::int64_t p : ctx.small_primes()) small_moduli_.push_back(ctx.witness_modulus(p));
  }

  const ExponentContext& ctx() const { return ctx_; }
  std::int64_t bound() const { return bound_; }
  std::span<const std::int32_t> primes_of(std::int64_t v) const {
    return {factor_primes_.data() + factor_offset_[v], factor_primes_.data() + factor_offset_[v + 1]};
  }
  const std::vector<std::uint16_t>& coset(std::int64_t p) const { return coset_[p]; }
  std::int64_t small_modulus(std::size_t i) const { return small_moduli_[i]; }

 private:
  const ExponentContext& ctx_;
  std::int64_t bound_;
  std::vector<std::uint32_t> factor_offset_;
  std::vector<std::int32_t> factor_primes_;
  std::vector<std::vector<std::uint16_t>> coset_;
  std::vector<std::int64_t> small_moduli_;
};

// Per-worker decider with memo tables for the primes of S(n), keyed on the
// minimised triple modulo the witness modulus.
class TripleDecider {
 public:
  explicit TripleDecider(const CensusTables& tables) : t_(tables) {
    const auto& small = t_.ctx().small_primes();
    dense_.resize(small.size());
    sparse_.resize(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      const std::int64_t m = t_.small_modulus(i);
      if (m * m * m <= kDenseLimit) dense_[i].assign(static_cast<std::size_t>(m * m * m), 0);
    }
  }

  // a1 a2 a3 nonzero and coprime.
  bool decide(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
    const int n = t_.ctx().n();
    if (n % 2 == 0 && ((a1 > 0 && a2 > 0 && a3 > 0) || (a1 < 0 && a2 < 0 && a3 < 0))) return false;

    const auto& small = t_.ctx().small_primes();
    for (std::size_t i = 0; i < small.size(); ++i) {
      if (!small_prime_ok(i, small[i], a1, a2, a3)) return false;
    }
    const std::int64_t abs1 = iabs(a1), abs2 = iabs(a2), abs3 = iabs(a3);
    for (std::int32_t p : t_.primes_of(abs1)) {
      if (!large_prime_ok(p, a1, a2, a3)) return false;
    }
    for (std::int32_t p : t_.primes_of(abs2)) {
      if (abs1 % p == 0) continue;
      if (!large_prime_ok(p, a1, a2, a3)) return false;
    }
    for (std::int32_t p : t_.primes_of(abs3)) {
      if (abs1 % p == 0 || abs2 % p == 0) continue;
      if (!large_prime_ok(p, a1, a2, a3)) return false;
    }
    return true;
  }

 private:
  static constexpr std::int64_t kDenseLimit = std::int64_t{1} << 22;

  static int strip(std::int64_t& x, std::int64_t p) {
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }

  bool large_prime_ok(std::int64_t p, std::int64_t a1, std::int64_t a2, std::int64_t a3) const {
    if (t_.ctx().is_small_prime(p)) return true;  // already decided
    const int n = t_.ctx().n();
    std::array<std::int64_t, 3> u{a1, a2, a3};
    std::array<int, 3> c{};
    for (std::size_t i = 0; i < 3; ++i) c[i] = strip(u[i], p) % n;
    if (c[0] == c[1] && c[1] == c[2]) return true;
    std::size_t i, j;
    if (c[0] == c[1]) {
      i = 0, j = 1;
    } else if (c[0] == c[2]) {
      i = 0, j = 2;
    } else if (c[1] == c[2]) {
      i = 1, j = 2;
    } else {
      return false;
    }
    // -u_i / u_j is an n-th power iff -u_i and u_j share a coset.
    const auto& coset = t_.coset(p);
    return coset[rep_mod(-u[i], p)] == coset[rep_mod(u[j], p)];
  }

  bool small_prime_ok(std::size_t idx, std::int64_t p, std::int64_t a1, std::int64_t a2, std::int64_t a3) {
    const int n = t_.ctx().n();
    std::array<std::int64_t, 3> u{a1, a2, a3};
    std::array<int, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) v[i] = strip(u[i], p);
    std::size_t i, j;
    if (v[0] % n == v[1] % n) {
      i = 0, j = 1;
    } else if (v[0] % n == v[2] % n) {
      i = 0, j = 2;
    } else if (v[1] % n == v[2] % n) {
      i = 1, j = 2;
    } else {
      return false;
    }
    const std::size_t k = 3 - i - j;
    const std::int64_t m = t_.small_modulus(idx);
    const int vb3 = static_cast<int>(rep_mod(v[k] - v[i], n));
    std::int64_t b3 = rep_mod(u[k], m);
    for (int e = 0; e < vb3 && b3 != 0; ++e) b3 = b3 * p % m;
    const std::array<std::int64_t, 3> b{rep_mod(u[i], m), rep_mod(u[j], m), b3};
    const std::uint64_t key =
        (static_cast<std::uint64_t>(b[0]) * m + static_cast<std::uint64_t>(b[1])) * m + static_cast<std::uint64_t>(b[2]);

    if (!dense_[idx].empty()) {
      std::uint8_t& slot = dense_[idx][key];
      if (slot == 0) slot = minimised_has_witness(b, n, p, m) ? 2 : 1;
      return slot == 2;
    }
    auto [it, inserted] = sparse_[idx].try_emplace(key, false);
    if (inserted) it->second = minimised_has_witness(b, n, p, m);
    return it->second;
  }

  const CensusTables& t_;
  std::vector<std::vector<std::uint8_t>> dense_;
  std::vector<std::unordered_map<std::uint64_t, bool>> sparse_;
};

template <typename Visit>
void for_each_representative(std::int64_t bound, std::int64_t a1_lo, std::int64_t a1_hi, Visit&& visit) {
  // Representatives a1 <= a2 <= a3 with (a1, a2, a3) <=lex (-a3, -a2, -a1),
  // which forces a1 + a3 <= 0 and hence a1 <= 0.
  for (std::int64_t a1 = a1_lo; a1 <= a1_hi; ++a1) {
    for (std::int64_t a2 = a1; a2 <= -a1; ++a2) {
      const std::int64_t a3_max = std::min(bound, -a1);
      for (std::int64_t a3 = a2; a3 <= a3_max; ++a3) {
        std::uint64_t neg_weight = 2;
        if (a1 + a3 == 0) {
          if (a2 > 0) continue;
          if (a2 == 0) neg_weight = 1;
        }
        std::uint64_t perm_weight = 6;
        if (a1 == a3) {
          perm_weight = 1;
        } else if (a1 == a2 || a2 == a3) {
          perm_weight = 3;
        }
        visit(a1, a2, a3, perm_weight * neg_weight);
      }
    }
  }
}

std::pair<std::int64_t, std::int64_t> shard_range(std::int64_t bound, std::int64_t shard_size, std::int64_t shard) {
  const std::int64_t lo = -bound + shard * shard_size;
  const std::int64_t hi = std::min<std::int64_t>(0, lo + shard_size - 1);
  return {lo, hi};
}

CensusCount count_range(const CensusTables& tables, std::int64_t a1_lo, std::int64_t a1_hi) {
  TripleDecider decider(tables);
  CensusCount out;
  for_each_representative(tables.bound(), a1_lo, a1_hi,
                          [&](std::int64_t a1, std::int64_t a2, std::int64_t a3, std::uint64_t w) {
                            const std::int64_t g = std::gcd(std::gcd(iabs(a1), iabs(a2)), iabs(a3));
                            if (g != 1) return;
                            out.coprime += w;
                            if (a1 == 0 || a2 == 0 || a3 == 0 || decider.decide(a1, a2, a3)) out.els += w;
                          });
  return out;
}

void require_shard_size(std::int64_t shard_size) {
  if (shard_size < 1) throw std::invalid_argument("census: shard size must be >= 1");
}

}  // namespace

CensusCount count_els_direct(const ExponentContext& ctx, std::int64_t bound, const FactorTable& table) {
  if (bound < 1) throw std::invalid_argument("count_els_direct: B must be >= 1");
  if (table.limit() < bound) throw std::out_of_range("count_els_direct: factor table smaller than B");
  CensusCount out;
  for (std::int64_t a1 = -bound; a1 <= bound; ++a1) {
    for (std::int64_t a2 = -bound; a2 <= bound; ++a2) {
      for (std::int64_t a3 = -bound; a3 <= bound; ++a3) {
        if (std::gcd(std::gcd(iabs(a1), iabs(a2)), iabs(a3)) != 1) continue;
        ++out.coprime;
        if (els(CoeffTriple(a1, a2, a3), ctx, table)) ++out.els;
      }
    }
  }
  return out;
}

std::int64_t census_shard_count(std::int64_t bound, std::int64_t shard_size) {
  require_shard_size(shard_size);
  return (bound + 1 + shard_size - 1) / shard_size;
}

CensusCount count_els_symmetric_shard(const ExponentContext& ctx, std::int64_t bound,
                                      const FactorTable& table, std::int64_t shard_size,
                                      std::int64_t shard) {
  const CensusTables tables(ctx, bound, table);
  const auto [lo, hi] = shard_range(bound, shard_size, shard);
  return count_range(tables, lo, hi);
}

CensusCount count_els_symmetric(const ExponentContext& ctx, std::int64_t bound, const FactorTable& table,
                                const CensusOptions& options) {
  const CensusTables tables(ctx, bound, table);
  const std::int64_t shards = census_shard_count(bound, options.shard_size);
  std::vector<CensusCount> results(static_cast<std::size_t>(shards));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::int64_t s = next++; s < shards; s = next++) {
      try {
        const auto [lo, hi] = shard_range(bound, options.shard_size, s);
        results[s] = count_range(tables, lo, hi);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  CensusCount total;
  for (const auto& r : results) total += r;
  return total;
}

std::uint64_t symmetric_weight_total(std::int64_t bound) {
  std::uint64_t total = 0;
  for_each_representative(bound, -bound, 0,
                          [&](std::int64_t, std::int64_t, std::int64_t, std::uint64_t w) { total += w; });
  return total;
}

double predicted_count(const ConstantReport& constant, std::int64_t bound) {
  const double b = static_cast<double>(bound);
  return constant.c_n * b * b * b * std::pow(std::log(b), 3.0 * constant.alpha_float - 3.0);
}

// ---- Checkpointed sweep ---------------------------------------------------

namespace {

using nlohmann::json;

struct InProgress {
  std::int64_t bound = 0;
  std::set<std::int64_t> completed;
  CensusCount partial;
  double elapsed_s = 0.0;
};

struct SweepState {
  std::vector<CensusRow> rows;
  std::optional<InProgress> in_progress;
};

constexpr const char* kStrategy = "symmetric";

json to_json(const SweepState& s, int n, std::int64_t shard_size) {
  json j;
  j["format_version"] = kCheckpointVersion;
  j["n"] = n;
  j["strategy"] = kStrategy;
  j["shard_size"] = shard_size;
  j["rows"] = json::array();
  for (const auto& r : s.rows) {
    j["rows"].push_back({{"B", r.bound}, {"observed", r.observed}, {"coprime", r.coprime}, {"elapsed_s", r.elapsed_s}});
  }
  if (s.in_progress) {
    const auto& ip = *s.in_progress;
    j["in_progress"] = {{"B", ip.bound},
                        {"completed_shards", std::vector<std::int64_t>(ip.completed.begin(), ip.completed.end())},
                        {"partial_observed", ip.partial.els},
                        {"partial_coprime", ip.partial.coprime},
                        {"elapsed_s", ip.elapsed_s}};
  } else {
    j["in_progress"] = nullptr;
  }
  return j;
}

SweepState load_state(const std::filesystem::path& path, int n, std::int64_t shard_size) {
  SweepState s;
  std::ifstream in(path);
  if (!in) return s;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw CheckpointError("checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kCheckpointVersion) {
      throw CheckpointError("checkpoint format version " + std::to_string(version) + " does not match " +
                            std::to_string(kCheckpointVersion));
    }
    if (j.at("n").get<int>() != n) throw CheckpointError("checkpoint was written for a different n");
    if (j.at("strategy").get<std::string>() != kStrategy) throw CheckpointError("checkpoint strategy mismatch");
    if (j.at("shard_size").get<std::int64_t>() != shard_size) throw CheckpointError("checkpoint shard size mismatch");
    for (const auto& r : j.at("rows")) {
      CensusRow row;
      row.bound = r.at("B").get<std::int64_t>();
      row.observed = r.at("observed").get<std::uint64_t>();
      row.coprime = r.at("coprime").get<std::uint64_t>();
      row.elapsed_s = r.at("elapsed_s").get<double>();
      s.rows.push_back(row);
    }
    const auto& ip = j.at("in_progress");
    if (!ip.is_null()) {
      InProgress p;
      p.bound = ip.at("B").get<std::int64_t>();
      for (auto k : ip.at("completed_shards")) p.completed.insert(k.get<std::int64_t>());
      p.partial.els = ip.at("partial_observed").get<std::uint64_t>();
      p.partial.coprime = ip.at("partial_coprime").get<std::uint64_t>();
      p.elapsed_s = ip.at("elapsed_s").get<double>();
      s.in_progress = p;
    }
  } catch (const json::exception& e) {
    throw CheckpointError("checkpoint " + path.string() + " is malformed: " + e.what());
  }
  return s;
}

void save_state(const std::optional<std::filesystem::path>& path, const SweepState& s, int n,
                std::int64_t shard_size) {
  if (!path) return;
  write_file_atomically(*path, to_json(s, n, shard_size).dump(2) + "\n");
}

}  // namespace

std::vector<CensusRow> census_sweep(const ExponentContext& ctx, const std::vector<std::int64_t>& bounds,
                                    const ConstantReport& constant, const SweepOptions& options) {
  require_shard_size(options.shard_size);
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] < 1) throw std::invalid_argument("census_sweep: bounds must be >= 1");
    if (i > 0 && bounds[i] <= bounds[i - 1]) throw std::invalid_argument("census_sweep: bounds must ascend");
  }
  const int n = ctx.n();
  SweepState state = options.checkpoint ? load_state(*options.checkpoint, n, options.shard_size) : SweepState{};
  std::size_t shards_this_call = 0;

  std::vector<CensusRow> out;
  for (std::int64_t bound : bounds) {
    auto done = std::find_if(state.rows.begin(), state.rows.end(), [&](const CensusRow& r) { return r.bound == bound; });
    if (done != state.rows.end()) {
      CensusRow row = *done;
      row.predicted = predicted_count(constant, bound);
      row.ratio = static_cast<double>(row.observed) / row.predicted;
      out.push_back(row);
      continue;
    }

    if (options.stop_after_shards && shards_this_call >= *options.stop_after_shards) {
      throw CensusInterrupted("census interrupted before B=" + std::to_string(bound));
    }
    if (!state.in_progress || state.in_progress->bound != bound) state.in_progress = InProgress{bound, {}, {}, 0.0};
    InProgress& ip = *state.in_progress;

    const FactorTable table(std::max<std::int64_t>(bound, 2));
    const CensusTables tables(ctx, bound, table);
    const std::int64_t shards = census_shard_count(bound, options.shard_size);
    std::vector<std::int64_t> pending;
    for (std::int64_t s = 0; s < shards; ++s) {
      if (!ip.completed.contains(s)) pending.push_back(s);
    }

    const auto start = Clock::now();
    const double prior_elapsed = ip.elapsed_s;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mutex;
    std::exception_ptr failure;
    const auto worker = [&] {
      while (!stop.load()) {
        const std::size_t idx = next++;
        if (idx >= pending.size()) return;
        try {
          const auto [lo, hi] = shard_range(bound, options.shard_size, pending[idx]);
          const CensusCount c = count_range(tables, lo, hi);
          std::lock_guard lock(mutex);
          ip.partial += c;
          ip.completed.insert(pending[idx]);
          ip.elapsed_s = prior_elapsed + std::chrono::duration<double>(Clock::now() - start).count();
          save_state(options.checkpoint, state, n, options.shard_size);
          ++shards_this_call;
          if (options.stop_after_shards && shards_this_call >= *options.stop_after_shards) stop = true;
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          stop = true;
        }
      }
    };
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    if (static_cast<std::int64_t>(ip.completed.size()) < shards) {
      throw CensusInterrupted("census interrupted at B=" + std::to_string(bound) + " after " +
                              std::to_string(ip.completed.size()) + " of " + std::to_string(shards) + " shards");
    }

    CensusRow row;
    row.bound = bound;
    row.observed = ip.partial.els;
    row.coprime = ip.partial.coprime;
    row.elapsed_s = prior_elapsed + std::chrono::duration<double>(Clock::now() - start).count();
    row.predicted = predicted_count(constant, bound);
    row.ratio = static_cast<double>(row.observed) / row.predicted;
    state.rows.push_back(row);
    state.in_progress.reset();
    save_state(options.checkpoint, state, n, options.shard_size);
    out.push_back(row);
  }
  return out;
}

std::vector<CensusRow> census_sweep(const ExponentContext& ctx, const std::vector<std::int64_t>& bounds,
                                    std::int64_t p_max, const SweepOptions& options) {
  ConstantOptions copts;
  copts.threads = options.threads;
  return census_sweep(ctx, bounds, leading_constant(ctx, p_max, copts), options);
}

void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows) {
  out << "B,observed,predicted,ratio,elapsed_s\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%llu,%.12g,%.12g,%.3f\n", static_cast<long long>(r.bound),
                  static_cast<unsigned long long>(r.observed), r.predicted, r.ratio, r.elapsed_s);
    out << buf;
  }
}

}  // namespace fermat_els
