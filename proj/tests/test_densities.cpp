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

#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <doctest.h>

#include "fermat_els/densities.hpp"
#include "fermat_els/density_cache.hpp"
#include "fermat_els/oracles.hpp"

using namespace fermat_els;

namespace {

BigRational q(std::int64_t p, int k) { return BigRational(1, p).pow(k); }

// Normalized density outside S(n), written out term by term.
BigRational closed_reference(int n, std::int64_t p) {
  const BigRational one(1);
  const BigRational d(std::gcd<std::int64_t>(n, p - 1));
  const BigRational t1 = (one - q(p, 3 * n)) / (one - q(p, n)).pow(3);
  const BigRational t2 = BigRational(3) * (one - q(p, 2 * n)) * (q(p, 1) - q(p, n)) /
                         (d * (one - q(p, 1)) * (one - q(p, n)).pow(3));
  const BigRational t3 =
      BigRational(3) * (q(p, 2) - q(p, 2 * n)) / (d * (one - q(p, n)).pow(2) * (one - q(p, 2)));
  return t1 + t2 + t3;
}

}  // namespace

TEST_CASE("strategy names") {
  CHECK(to_string(DensityMethod::classed) == "classed");
  CHECK(parse_density_method("direct") == DensityMethod::direct);
  CHECK(parse_density_strategy("auto") == DensityStrategy::automatic);
  CHECK(parse_density_strategy("closed") == DensityStrategy::closed);
  CHECK_THROWS_AS(parse_density_strategy("fast"), std::invalid_argument);
}

TEST_CASE("class solubility predicate") {
  const ExponentContext ctx(3);
  CHECK(class_solubility_predicate({1, 1, 1}, ctx, 3));
  CHECK_FALSE(class_solubility_predicate({1, 2, 7}, ctx, 7));
  CHECK_THROWS_AS(class_solubility_predicate({1, 1, 0}, ctx, 3), std::invalid_argument);
  CHECK_THROWS_AS(class_solubility_predicate({1, 1, 243}, ctx, 3), std::invalid_argument);
}

TEST_CASE("closed form for cubes") {
  const ExponentContext ctx(3);
  CHECK(delta_p_closed(ctx, 7).normalized == BigRational(43, 36));
  CHECK(delta_p_closed(ctx, 7).exact == BigRational(258, 343));
  CHECK(delta_p_closed(ctx, 2).normalized == BigRational(295, 49));
  for (std::int64_t p : primes_up_to(200)) {
    if (p == 3) continue;
    const BigInt P(static_cast<long>(p));
    const BigRational expected =
        p % 3 == 1 ? BigRational(P * P - P + 1, (P - 1) * (P - 1))
                   : BigRational(P * P * P * P * P * P + 3 * P * P * P * P * P + 6 * P * P * P * P + P * P * P +
                                     6 * P * P + 3 * P + 1,
                                 (P - 1) * (P - 1) * (P * P + P + 1) * (P * P + P + 1));
    CHECK(delta_p_closed(ctx, p).normalized == expected);
  }
  CHECK_THROWS_AS(delta_p_closed(ctx, 3), IncompatibleStrategy);
}

TEST_CASE("closed form matches the term-by-term expression") {
  for (int n = 2; n <= 6; ++n) {
    const ExponentContext ctx(n);
    for (std::int64_t p : primes_up_to(400)) {
      if (ctx.is_small_prime(p)) continue;
      const LocalDensity d = delta_p_closed(ctx, p);
      CHECK(d.normalized == closed_reference(n, p));
      CHECK(d.normalized * (BigRational(1) - q(p, 1)).pow(3) == d.exact);
      CHECK(d.exact > BigRational(0));
      CHECK(d.exact < BigRational(1));
      CHECK(d.normalized.to_double() > 1.0 - 4.0 * n / static_cast<double>(p));
    }
  }
}

TEST_CASE("direct counts equal literal enumeration with the lifting oracle") {
  const std::pair<int, std::int64_t> cases[] = {{2, 2}, {2, 3}, {2, 5}, {3, 2}, {4, 3}};
  for (const auto& [n, p] : cases) {
    const ExponentContext ctx(n);
    CHECK_MESSAGE(m_counts_direct(ctx, p) == oracle::m_counts_by_lifting(n, p), "n=" << n << " p=" << p);
  }
}

TEST_CASE("direct, classed and closed agree") {
  const std::pair<int, std::int64_t> closed_cases[] = {{2, 3}, {2, 5}, {2, 7}, {3, 2}, {3, 5}, {3, 7}};
  for (const auto& [n, p] : closed_cases) {
    const ExponentContext ctx(n);
    const BigRational closed = delta_p(ctx, p, DensityStrategy::closed).exact;
    CHECK(delta_p(ctx, p, DensityStrategy::direct).exact == closed);
    CHECK(delta_p(ctx, p, DensityStrategy::classed).exact == closed);
  }
  const ExponentContext quartic(4);
  DirectOptions forced;
  forced.force = true;
  CHECK(m_counts_classed(quartic, 5) == m_counts_direct(quartic, 5, forced));
  CHECK(m_counts_classed(ExponentContext(3), 7) == m_counts_direct(ExponentContext(3), 7));
  CHECK(m_counts_classed(ExponentContext(5), 3) == m_counts_direct(ExponentContext(5), 3, forced));
}

TEST_CASE("classed counts") {
  const ExponentContext quartic(4);
  const MCounts c = m_counts_classed(quartic, 5);
  // m2 = 5^12 (4/5)^2 (1/5 - 1/5^4) / 4.
  const BigRational m2 = BigRational(ipow(5, 12)) * BigRational(16, 25) * (q(5, 1) - q(5, 4)) / BigRational(4);
  CHECK(BigRational(c.m2) == m2);
  CHECK(c.modulus_exponent == 4);
  const MCounts seven = m_counts_classed(ExponentContext(3), 7);
  CHECK(seven.m1 == BigInt(static_cast<long>(ipow(7, 6) * 216)));
  CHECK_THROWS_AS(m_counts_classed(ExponentContext(3), 3), std::invalid_argument);
}

TEST_CASE("wild prime counts for cubes") {
  const ExponentContext ctx(3);
  const MCounts c = m_counts_direct(ctx, 3);
  CHECK(c.modulus_exponent == 5);
  CHECK(c.m1 == 3306744);  // 56/243 of 3^15
  // Every class with v_3(a1) = 1 and unit a2, a3 is soluble (a Hensel
  // argument mod 27), so m2 >= 54 * 162^2.
  CHECK(c.m2 >= 1417176);
  CHECK(c.m2 == 1574640);
  CHECK(c.m3 == 209952);
  const LocalDensity d = delta_p(ctx, 3);
  CHECK(d.method == DensityMethod::direct);
  CHECK(d.exact == BigRational(27662, 41067));
}

TEST_CASE("dispatcher routes and guards") {
  CHECK(delta_p(ExponentContext(3), 5).method == DensityMethod::closed);
  CHECK(delta_p(ExponentContext(4), 31).method == DensityMethod::classed);
  CHECK(delta_p(ExponentContext(3), 3).method == DensityMethod::direct);
  CHECK_THROWS_AS(delta_p(ExponentContext(3), 3, DensityStrategy::closed), IncompatibleStrategy);
  CHECK_THROWS_AS(delta_p(ExponentContext(3), 3, DensityStrategy::classed), IncompatibleStrategy);
  DirectOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(m_counts_direct(ExponentContext(3), 3, tight), BudgetExceeded);
  CHECK_THROWS_AS(m_counts_direct(ExponentContext(4), 7), BudgetExceeded);
}

TEST_CASE("density cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "fermat_els_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto file = dir / DensityCache::kFileName;
  {
    DensityCache cache(file);
    CHECK(cache.size() == 0);
    cache.store(delta_p(ExponentContext(3), 7));
    cache.store(delta_p(ExponentContext(3), 3));
  }
  DensityCache reloaded(file);
  CHECK(reloaded.size() == 2);
  const auto d = reloaded.lookup(3, 7);
  REQUIRE(d.has_value());
  CHECK(d->exact == BigRational(258, 343));
  CHECK(d->normalized == BigRational(43, 36));
  CHECK(d->method == DensityMethod::closed);
  CHECK_FALSE(reloaded.lookup(4, 7).has_value());
  reloaded.rewrite();
  CHECK(DensityCache(file).size() == 2);

  const LocalDensity back = DensityCache::decode(DensityCache::encode(*d));
  CHECK(back.exact == d->exact);

  std::ofstream(file, std::ios::app) << "not json\n";
  CHECK_THROWS_AS(DensityCache{file}, std::runtime_error);
  std::filesystem::remove_all(dir);
}
