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

// Self-checks of the reference oracles, so that agreement with them means
// something.

#include <stdexcept>

#include <doctest.h>

#include "fermat_els/arith.hpp"
#include "fermat_els/oracles.hpp"

using namespace fermat_els;

namespace {

int hilbert_real(std::int64_t a, std::int64_t b) { return a < 0 && b < 0 ? -1 : 1; }

}  // namespace

TEST_CASE("Hilbert symbol textbook values") {
  CHECK(oracle::hilbert_symbol(-1, -1, 2) == -1);
  CHECK(oracle::hilbert_symbol(-1, -1, 3) == 1);
  CHECK(oracle::hilbert_symbol(2, 3, 3) == -1);
  CHECK(oracle::hilbert_symbol(5, 5, 5) == 1);  // (5, -5) = 1 and (5, -1) = 1
  CHECK(oracle::hilbert_symbol(3, 3, 3) == -1);
  CHECK_THROWS_AS(oracle::hilbert_symbol(0, 3, 3), std::invalid_argument);
}

TEST_CASE("Hilbert symbol is symmetric, bimultiplicative and obeys the product formula") {
  const std::vector<std::int64_t> primes = primes_up_to(50);
  for (std::int64_t a = -30; a <= 30; ++a) {
    for (std::int64_t b = -30; b <= 30; ++b) {
      if (a == 0 || b == 0) continue;
      int product = hilbert_real(a, b);
      for (std::int64_t p : primes) {
        const int s = oracle::hilbert_symbol(a, b, p);
        CHECK(s == oracle::hilbert_symbol(b, a, p));
        if (a != 1) CHECK(oracle::hilbert_symbol(a, -a, p) == 1);
        if (a != 1) CHECK(oracle::hilbert_symbol(a, 1 - a, p) == 1);
        CHECK(oracle::hilbert_symbol(a * 7, b, p) == s * oracle::hilbert_symbol(7, b, p));
        product *= s;
      }
      CHECK(product == 1);
    }
  }
}

TEST_CASE("lifting oracle on hand-checked curves") {
  // x^2 + y^2 + z^2 has no point over Q_2 but does over Q_3.
  CHECK_FALSE(oracle::qp_soluble_by_lifting({1, 1, 1}, 2, 2));
  CHECK(oracle::qp_soluble_by_lifting({1, 1, 1}, 2, 3));
  CHECK(oracle::qp_soluble_by_lifting({1, 1, -1}, 2, 2));
  // -1/2 = 3 is not a cube mod 7.
  CHECK_FALSE(oracle::qp_soluble_by_lifting({1, 2, 7}, 3, 7));
  CHECK(oracle::qp_soluble_by_lifting({1, 1, 7}, 3, 7));
  // Selmer's 3x^3 + 4y^3 + 5z^3 is everywhere locally soluble.
  CHECK(oracle::els_by_lifting({3, 4, 5}, 3));
  CHECK_FALSE(oracle::els_by_lifting({1, 1, 1}, 2));
  CHECK_FALSE(oracle::els_by_lifting({1, 1, -3}, 2));
  CHECK(oracle::els_by_lifting({0, 5, 7}, 4));
  CHECK_THROWS_AS(oracle::qp_soluble_by_lifting({0, 1, 1}, 3, 3), std::invalid_argument);
}

TEST_CASE("lifting oracle agrees with the Hilbert symbol for conics") {
  for (std::int64_t p : {2, 3, 5}) {
    for (std::int64_t x = -6; x <= 6; ++x) {
      for (std::int64_t y = -6; y <= 6; ++y) {
        for (std::int64_t z = -6; z <= 6; ++z) {
          if (x == 0 || y == 0 || z == 0) continue;
          const CoeffTriple a(x, y, z);
          CHECK(oracle::qp_soluble_by_lifting(a, 2, p) == oracle::conic_soluble_hilbert(a, p));
        }
      }
    }
  }
}

TEST_CASE("literal m-counts respect the pattern sizes") {
  // n = 2, p = 2: modulus 2^4; unit residues number 8.
  const MCounts c = oracle::m_counts_by_lifting(2, 2);
  CHECK(c.modulus_exponent == 4);
  CHECK(c.m1 <= 512);
  CHECK(c.m2 <= 4 * 8 * 8);
  CHECK(c.m3 <= 4 * 4 * 8);
}
