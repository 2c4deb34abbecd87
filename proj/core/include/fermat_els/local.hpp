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

// Local solubility of the diagonal curve a1 x^n + a2 y^n + a3 z^n = 0 over
// the p-adic fields and the reals.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fermat_els/arith.hpp"

namespace fermat_els {

struct CoeffTriple {
  std::array<std::int64_t, 3> a{};

  CoeffTriple() = default;
  CoeffTriple(std::int64_t a1, std::int64_t a2, std::int64_t a3) : a{a1, a2, a3} {}

  std::int64_t operator[](std::size_t i) const { return a[i]; }
  std::int64_t& operator[](std::size_t i) { return a[i]; }
  bool has_zero() const { return a[0] == 0 || a[1] == 0 || a[2] == 0; }

  friend bool operator==(const CoeffTriple&, const CoeffTriple&) = default;
};

/// Primes dividing n together with those p for which the Hasse-Weil bound
/// does not force a point on a smooth degree-n plane curve, i.e.
/// (p+1)^2 <= ((n-1)(n-2))^2 p. Pure integer test.
std::vector<std::int64_t> small_primes(int n);

/// Exponent n with its bad prime set S(n) and the p-adic valuations of n.
/// Immutable; safe to share between threads.
class ExponentContext {
 public:
  explicit ExponentContext(int n);

  int n() const { return n_; }
  const std::vector<std::int64_t>& small_primes() const { return small_primes_; }
  bool is_small_prime(std::int64_t p) const;
  /// Prime factorization of n, ascending.
  const std::vector<PrimePower>& n_factors() const { return n_factors_; }
  int vp_of_n(std::int64_t p) const;
  /// p^(2 v_p(n) + 1), the modulus of the witness search.
  std::int64_t witness_modulus(std::int64_t p) const;

 private:
  int n_;
  std::vector<std::int64_t> small_primes_;
  std::vector<PrimePower> n_factors_;
};

class DistinctClassesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// p-adically reduced triple: b[0], b[1] are p-adic units, v_p(b[2]) = vb3 in
/// [0, n). perm[slot] is the index of the input coefficient placed in slot.
struct MinimisedTriple {
  std::array<std::int64_t, 3> b{};
  std::array<int, 3> perm{};
  int vb3 = 0;
  /// v_p of the input coefficients, by input index.
  std::array<int, 3> valuations{};
  /// Power of p removed from each slot: b[s] = a[perm[s]] / p^removed[s].
  std::array<int, 3> removed{};
};

/// Number of distinct classes v_p(a_i) mod n. Requires nonzero entries.
int valuation_class_count(const CoeffTriple& a, int n, std::int64_t p);

/// Throws DistinctClassesError when the three classes v_p(a_i) mod n are
/// pairwise distinct, std::invalid_argument for a zero entry. Ties pick the
/// lexicographically smallest pair (i, j).
MinimisedTriple minimise(const CoeffTriple& a, const ExponentContext& ctx, std::int64_t p);

/// Whether some t with (t1, t2) != (0, 0) mod p satisfies
/// b1 t1^n + b2 t2^n + b3 t3^n = 0 mod m. The b_i are taken mod m, m = p^k.
bool minimised_has_witness(const std::array<std::int64_t, 3>& b, int n, std::int64_t p,
                           std::int64_t m);

enum class QpPath {
  automatic,  // residue test for p outside S(n), witness search otherwise
  general,    // witness search at every prime
};

/// Whether the curve has a Q_p-point. Requires nonzero entries and p prime.
bool qp_soluble(const CoeffTriple& a, const ExponentContext& ctx, std::int64_t p,
                QpPath path = QpPath::automatic);

/// Whether the curve has a real point. Requires nonzero entries.
bool r_soluble(const CoeffTriple& a, int n);

/// Everywhere local solubility of a primitive triple. Triples with a zero
/// entry count as soluble (the coordinate point supported there lies on
/// the curve). Throws std::invalid_argument when gcd(a1, a2, a3) != 1 and
/// std::out_of_range when some |a_i| exceeds the table.
bool els(const CoeffTriple& a, const ExponentContext& ctx, const FactorTable& table);

}  // namespace fermat_els
