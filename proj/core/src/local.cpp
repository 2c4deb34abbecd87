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

#include "fermat_els/local.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace fermat_els {

namespace {

// Candidate bound for S(n) is c^2; beyond this the sieve is impractical.
constexpr std::int64_t kMaxSmallPrimeBound = 200'000'000;

void require_nonzero(const CoeffTriple& a, const char* who) {
  if (a.has_zero()) throw std::invalid_argument(std::string(who) + ": coefficients must be nonzero");
}

}  // namespace

std::vector<std::int64_t> small_primes(int n) {
  if (n < 2) throw std::invalid_argument("small_primes: n must be >= 2");
  const std::int64_t c = static_cast<std::int64_t>(n - 1) * (n - 2);
  const std::int64_t c2 = c * c;
  if (c2 > kMaxSmallPrimeBound) throw std::invalid_argument("small_primes: n too large");

  std::vector<std::int64_t> out;
  for (std::int64_t p : primes_up_to(std::max<std::int64_t>(n, c2))) {
    const bool divides = n % p == 0;
    // (p+1)^2 > p^2 >= c^2 p once p >= c^2, so candidates below c^2 suffice.
    const std::int64_t lhs = (p + 1) * (p + 1);
    const std::int64_t rhs = c2 * p;
    if (divides || lhs <= rhs) out.push_back(p);
  }
  return out;
}

ExponentContext::ExponentContext(int n) : n_(n), small_primes_(fermat_els::small_primes(n)) {
  std::int64_t m = n;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    if (e > 0) n_factors_.push_back({q, e});
  }
  if (m > 1) n_factors_.push_back({m, 1});
}

bool ExponentContext::is_small_prime(std::int64_t p) const {
  return std::binary_search(small_primes_.begin(), small_primes_.end(), p);
}

int ExponentContext::vp_of_n(std::int64_t p) const {
  for (const auto& f : n_factors_) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

std::int64_t ExponentContext::witness_modulus(std::int64_t p) const {
  return ipow(p, 2 * vp_of_n(p) + 1);
}

int valuation_class_count(const CoeffTriple& a, int n, std::int64_t p) {
  require_nonzero(a, "valuation_class_count");
  std::array<int, 3> cls{};
  for (std::size_t i = 0; i < 3; ++i) cls[i] = padic_valuation(a[i], p).v % n;
  if (cls[0] == cls[1] && cls[1] == cls[2]) return 1;
  if (cls[0] == cls[1] || cls[0] == cls[2] || cls[1] == cls[2]) return 2;
  return 3;
}

MinimisedTriple minimise(const CoeffTriple& a, const ExponentContext& ctx, std::int64_t p) {
  require_nonzero(a, "minimise");
  const int n = ctx.n();
  MinimisedTriple out;
  std::array<std::int64_t, 3> units{};
  for (std::size_t i = 0; i < 3; ++i) {
    const Valuation val = padic_valuation(a[i], p);
    out.valuations[i] = val.v;
    units[i] = val.unit;
  }
  const auto cls = [&](int i) { return out.valuations[i] % n; };

  int i = -1, j = -1;
  constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (const auto& pair : kPairs) {
    if (cls(pair[0]) == cls(pair[1])) {
      i = pair[0];
      j = pair[1];
      break;
    }
  }
  if (i < 0) throw DistinctClassesError("minimise: valuation classes mod n are pairwise distinct");
  const int k = 3 - i - j;

  out.perm = {i, j, k};
  out.b[0] = units[i];
  out.b[1] = units[j];
  out.removed[0] = out.valuations[i];
  out.removed[1] = out.valuations[j];
  out.vb3 = static_cast<int>(rep_mod(out.valuations[k] - out.valuations[i], n));
  out.removed[2] = out.valuations[k] - out.vb3;
  out.b[2] = units[k] * ipow(p, out.vb3);
  return out;
}

bool minimised_has_witness(const std::array<std::int64_t, 3>& b, int n, std::int64_t p,
                           std::int64_t m) {
  if (m < 1 || m > (std::int64_t{1} << 31)) {
    throw std::invalid_argument("minimised_has_witness: modulus out of range");
  }
  // Distinct values of t^n mod m, split by whether p | t.
  std::vector<char> seen_unit(m, 0), seen_any(m, 0);
  std::vector<std::int64_t> unit_pows, any_pows;
  for (std::int64_t t = 0; t < m; ++t) {
    const auto v = static_cast<std::int64_t>(pow_mod(t, n, m));
    if (t % p != 0 && !seen_unit[v]) {
      seen_unit[v] = 1;
      unit_pows.push_back(v);
    }
    if (!seen_any[v]) {
      seen_any[v] = 1;
      any_pows.push_back(v);
    }
  }

  const std::int64_t b1 = rep_mod(b[0], m), b2 = rep_mod(b[1], m), b3 = rep_mod(b[2], m);
  // Values of b1 t1^n + b2 t2^n with (t1, t2) not both divisible by p.
  std::vector<char> reachable(m, 0);
  for (std::int64_t x : unit_pows) {
    for (std::int64_t y : any_pows) {
      reachable[(b1 * x + b2 * y) % m] = 1;
      reachable[(b1 * y + b2 * x) % m] = 1;
    }
  }
  for (std::int64_t z : any_pows) {
    if (reachable[rep_mod(-(b3 * z % m), m)]) return true;
  }
  return false;
}

bool qp_soluble(const CoeffTriple& a, const ExponentContext& ctx, std::int64_t p, QpPath path) {
  require_nonzero(a, "qp_soluble");
  if (p < 2) throw std::invalid_argument("qp_soluble: p must be prime");
  const int n = ctx.n();
  if (valuation_class_count(a, n, p) == 3) return false;
  const MinimisedTriple mt = minimise(a, ctx, p);

  if (path == QpPath::automatic && !ctx.is_small_prime(p)) {
    if (mt.vb3 == 0) return true;
    const std::int64_t ratio = rep_mod(-rep_mod(mt.b[0], p) * inverse_mod(mt.b[1], p), p);
    return is_nth_power_residue(ratio, n, p);
  }
  const std::int64_t m = ctx.witness_modulus(p);
  return minimised_has_witness(mt.b, n, p, m);
}

bool r_soluble(const CoeffTriple& a, int n) {
  require_nonzero(a, "r_soluble");
  if (n % 2 != 0) return true;
  const bool all_pos = a[0] > 0 && a[1] > 0 && a[2] > 0;
  const bool all_neg = a[0] < 0 && a[1] < 0 && a[2] < 0;
  return !(all_pos || all_neg);
}

bool els(const CoeffTriple& a, const ExponentContext& ctx, const FactorTable& table) {
  const std::int64_t g = std::gcd(std::gcd(std::abs(a[0]), std::abs(a[1])), std::abs(a[2]));
  if (g != 1) throw std::invalid_argument("els: coefficients must be coprime");
  if (a.has_zero()) return true;
  if (!r_soluble(a, ctx.n())) return false;

  std::vector<std::int64_t> primes = ctx.small_primes();
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& f : table.factorize(a[i])) primes.push_back(f.prime);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return std::all_of(primes.begin(), primes.end(),
                     [&](std::int64_t p) { return qp_soluble(a, ctx, p); });
}

}  // namespace fermat_els
