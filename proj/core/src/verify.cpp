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

#include "fermat_els/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "fermat_els/census.hpp"
#include "fermat_els/constants.hpp"
#include "fermat_els/densities.hpp"
#include "fermat_els/local.hpp"
#include "fermat_els/oracles.hpp"

namespace fermat_els {

namespace {

std::string mismatch(const std::string& what) { return "mismatch: " + what; }

std::string triple_str(const CoeffTriple& a) {
  return std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]);
}

bool coprime(const CoeffTriple& a) {
  return std::gcd(std::gcd(a[0], a[1]), a[2]) == 1;
}

// Returns an empty string on success, otherwise a failure description.
using Check = std::function<std::string()>;

std::string check_alpha() {
  if (alpha(3) != BigRational(2, 3)) return mismatch("alpha(3)");
  for (int n = 2; n <= 24; ++n) {
    if (alpha(n) != alpha_orbit_oracle(n)) return mismatch("alpha(" + std::to_string(n) + ")");
  }
  return {};
}

std::string check_small_primes() {
  if (small_primes(2) != std::vector<std::int64_t>{2}) return mismatch("S(2)");
  if (small_primes(3) != std::vector<std::int64_t>{3}) return mismatch("S(3)");
  return {};
}

std::string check_closed_cubic() {
  const ExponentContext ctx(3);
  for (std::int64_t p : {7, 13, 31, 2, 5, 11}) {
    const BigInt P(static_cast<long>(p));
    BigRational expected;
    if (p % 3 == 1) {
      expected = BigRational(P * P - P + 1, (P - 1) * (P - 1));
    } else {
      const BigInt q = P * P + P + 1;
      expected = BigRational(P * P * P * P * P * P + 3 * P * P * P * P * P + 6 * P * P * P * P + P * P * P +
                                 6 * P * P + 3 * P + 1,
                             (P - 1) * (P - 1) * q * q);
    }
    if (delta_p_closed(ctx, p).normalized != expected) return mismatch("p=" + std::to_string(p));
  }
  if (delta_p_closed(ctx, 7).normalized != BigRational(43, 36)) return mismatch("43/36");
  if (delta_p_closed(ctx, 2).normalized != BigRational(295, 49)) return mismatch("295/49");
  return {};
}

std::string check_counts_vs_lifting(int n, std::int64_t p) {
  const ExponentContext ctx(n);
  const MCounts fast = m_counts_direct(ctx, p);
  const MCounts slow = oracle::m_counts_by_lifting(n, p);
  if (!(fast == slow)) return mismatch("m-counts n=" + std::to_string(n) + " p=" + std::to_string(p));
  return {};
}

std::string check_hilbert(std::int64_t bound) {
  const ExponentContext ctx(2);
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    for (std::int64_t x = -bound; x <= bound; ++x) {
      for (std::int64_t y = -bound; y <= bound; ++y) {
        for (std::int64_t z = -bound; z <= bound; ++z) {
          const CoeffTriple a(x, y, z);
          if (a.has_zero() || !coprime(a)) continue;
          if (qp_soluble(a, ctx, p) != oracle::conic_soluble_hilbert(a, p)) {
            return mismatch(triple_str(a) + " at p=" + std::to_string(p));
          }
        }
      }
    }
  }
  return {};
}

std::string check_fast_path(int cases) {
  std::mt19937_64 rng(20261016);
  for (int n : {2, 3}) {
    const ExponentContext ctx(n);
    for (std::int64_t p : primes_up_to(31)) {
      if (ctx.is_small_prime(p)) continue;
      const std::int64_t pn = ipow(p, n);
      std::uniform_int_distribution<std::int64_t> unit(1, p * pn);
      std::uniform_int_distribution<int> shift(0, 2 * n);
      for (int i = 0; i < cases; ++i) {
        CoeffTriple a;
        for (std::size_t k = 0; k < 3; ++k) {
          std::int64_t u = unit(rng);
          while (u % p == 0) u = unit(rng);
          a[k] = (rng() & 1 ? -u : u) * ipow(p, shift(rng));
        }
        if (valuation_class_count(a, n, p) == 3) continue;
        if (qp_soluble(a, ctx, p) != qp_soluble(a, ctx, p, QpPath::general)) {
          return mismatch(triple_str(a) + " n=" + std::to_string(n) + " p=" + std::to_string(p));
        }
      }
    }
  }
  return {};
}

std::string check_els_vs_lifting(int n, std::int64_t bound) {
  const ExponentContext ctx(n);
  const FactorTable table(bound);
  for (std::int64_t x = -bound; x <= bound; ++x) {
    for (std::int64_t y = -bound; y <= bound; ++y) {
      for (std::int64_t z = -bound; z <= bound; ++z) {
        const CoeffTriple a(x, y, z);
        if (!coprime(a)) continue;
        if (els(a, ctx, table) != oracle::els_by_lifting(a, n)) return mismatch(triple_str(a));
      }
    }
  }
  return {};
}

std::string check_census(int n, std::int64_t bound, int threads) {
  const ExponentContext ctx(n);
  const FactorTable table(bound);
  CensusOptions opts;
  opts.threads = threads;
  const CensusCount direct = count_els_direct(ctx, bound, table);
  const CensusCount sym = count_els_symmetric(ctx, bound, table, opts);
  if (!(direct == sym)) {
    return mismatch("n=" + std::to_string(n) + " B=" + std::to_string(bound) + " direct " +
                    std::to_string(direct.els) + " symmetric " + std::to_string(sym.els));
  }
  return {};
}

std::string check_wild_cubic() {
  const ExponentContext ctx(3);
  const MCounts c = m_counts_direct(ctx, 3);
  const BigRational scale(BigInt(1), BigInt(14348907));  // 3^15
  if (BigRational(c.m1) * scale != BigRational(56, 243)) return mismatch("m1");
  // Every class with v(a1) = 1 and unit a2, a3 is soluble by Hensel mod 27.
  if (c.m2 < 54 * 162 * 162) return mismatch("m2 below the Hensel bound");
  // Sampled non-unit classes against the lifting oracle.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> residue(1, 242);
  for (int i = 0; i < 400; ++i) {
    std::array<std::int64_t, 3> r{};
    for (auto& x : r) {
      do x = residue(rng);
      while (x % 3 == 0);
    }
    r[0] = r[0] * (i % 2 == 0 ? 3 : 9) % 243;
    if (i % 4 == 3) r[1] = r[1] * 9 % 243;
    if (r[0] % 27 == 0 || (i % 4 == 3 && r[1] % 27 == 0)) continue;
    const CoeffTriple a(r[0], r[1], r[2]);
    if (class_solubility_predicate(r, ctx, 3) != oracle::qp_soluble_by_lifting(a, 3, 3)) {
      return mismatch("class " + triple_str(a));
    }
  }
  return {};
}

std::string check_method_agreement() {
  const std::pair<int, std::int64_t> closed_cases[] = {{2, 3}, {2, 5}, {3, 2}, {3, 5}, {3, 7}};
  for (const auto& [n, p] : closed_cases) {
    const ExponentContext ctx(n);
    const BigRational direct = delta_p(ctx, p, DensityStrategy::direct).exact;
    if (direct != delta_p(ctx, p, DensityStrategy::closed).exact) {
      return mismatch("direct vs closed n=" + std::to_string(n) + " p=" + std::to_string(p));
    }
  }
  const ExponentContext quartic(4);
  DirectOptions forced;
  forced.force = true;
  for (std::int64_t p : {5, 7}) {
    if (!(m_counts_direct(quartic, p, forced) == m_counts_classed(quartic, p))) {
      return mismatch("classed vs direct n=4 p=" + std::to_string(p));
    }
  }
  return {};
}

std::string check_constant(int threads) {
  ConstantOptions opts;
  opts.threads = threads;
  const ConstantReport r = leading_constant(ExponentContext(3), 10000, opts);
  char buf[128];
  std::snprintf(buf, sizeof buf, "Gamma(2/3) %.6f product %.6f C_3 %.6f", r.gamma_alpha, r.euler_product, r.c_n);
  if (std::abs(r.gamma_alpha - 1.3541179394264) > 1e-9) return mismatch(buf);
  if (r.c_n != assemble_leading_constant(3, 8, r.gamma_alpha, r.euler_product)) return mismatch(buf);
  // The product must not move when the cutoff halves.
  const double half = euler_product(ExponentContext(3), 5000).value;
  if (std::abs(half / r.euler_product - 1.0) > 1e-3) return mismatch(buf);
  return {};
}

}  // namespace

VerifySuite parse_verify_suite(std::string_view text) {
  if (text == "quick") return VerifySuite::quick;
  if (text == "full") return VerifySuite::full;
  throw std::invalid_argument("unknown suite: " + std::string(text));
}

std::vector<CheckResult> run_verification(VerifySuite suite, int threads) {
  const bool full = suite == VerifySuite::full;
  std::vector<std::pair<std::string, Check>> checks = {
      {"alpha_vs_orbit_count", check_alpha},
      {"small_primes", check_small_primes},
      {"closed_form_cubic", check_closed_cubic},
      {"m_counts_vs_lifting_n2_p2", [] { return check_counts_vs_lifting(2, 2); }},
      {"m_counts_vs_lifting_n2_p3", [] { return check_counts_vs_lifting(2, 3); }},
      {"m_counts_vs_lifting_n3_p2", [] { return check_counts_vs_lifting(3, 2); }},
      {"conic_vs_hilbert_symbol", [full] { return check_hilbert(full ? 20 : 8); }},
      {"fast_path_vs_general", [full] { return check_fast_path(full ? 1000 : 100); }},
      {"els_vs_lifting_n3", [full] { return check_els_vs_lifting(3, full ? 5 : 3); }},
      {"census_symmetric_vs_direct_n2", [full, threads] { return check_census(2, full ? 30 : 10, threads); }},
      {"census_symmetric_vs_direct_n3", [full, threads] { return check_census(3, full ? 30 : 10, threads); }},
  };
  if (full) {
    checks.emplace_back("m_counts_vs_lifting_n2_p5", [] { return check_counts_vs_lifting(2, 5); });
    checks.emplace_back("wild_cubic_counts", check_wild_cubic);
    checks.emplace_back("method_agreement", check_method_agreement);
    checks.emplace_back("cubic_constant", [threads] { return check_constant(threads); });
  }

  std::vector<CheckResult> results;
  for (auto& [name, fn] : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = name;
    try {
      r.detail = fn();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace fermat_els
