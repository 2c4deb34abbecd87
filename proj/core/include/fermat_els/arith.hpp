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
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace fermat_els {

using BigInt = mpz_class;

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Equality is equality of the canonical form.
class BigRational {
 public:
  BigRational() = default;
  BigRational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& value);  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den);
  BigRational(std::int64_t num, std::int64_t den);

  /// Parses "num/den" or a plain integer.
  static BigRational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  /// Nearest double (round half to even).
  double to_double() const;
  /// "num/den", or just "num" when the denominator is 1.
  std::string to_string() const;

  bool is_integer() const;
  int sign() const { return sgn(value_); }

  /// Integer power; negative exponents invert.
  BigRational pow(int exponent) const;

  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }
  BigRational operator-() const;

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.value_ < b.value_; }
  friend bool operator>(const BigRational& a, const BigRational& b) { return b < a; }
  friend bool operator<=(const BigRational& a, const BigRational& b) { return !(b < a); }
  friend bool operator>=(const BigRational& a, const BigRational& b) { return !(a < b); }

  const mpq_class& raw() const { return value_; }

 private:
  explicit BigRational(mpq_class value);
  mpq_class value_{0};
};

/// x = p^v * u with p not dividing u.
struct Valuation {
  int v = 0;
  std::int64_t unit = 0;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Throws std::invalid_argument for x == 0 or p < 2.
Valuation padic_valuation(std::int64_t x, std::int64_t p);

/// Representative of a mod n in {0, ..., n-1}.
std::int64_t rep_mod(std::int64_t a, std::int64_t n);

/// Square-and-multiply with 128-bit intermediates; modulus in [1, 2^63).
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Modular inverse of a unit; throws std::invalid_argument if gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// p^k as a 64-bit integer; throws std::overflow_error when it does not fit.
std::int64_t ipow(std::int64_t p, int k);

/// Euler's totient by trial division.
std::int64_t euler_phi(std::int64_t n);

/// Whether a mod p lies in (F_p^x)^n. Uses a^((p-1)/gcd(n,p-1)) == 1.
/// Throws std::invalid_argument when p divides a.
bool is_nth_power_residue(std::int64_t a, std::int64_t n, std::int64_t p);

/// Smallest primitive root modulo the prime p.
std::int64_t primitive_root(std::int64_t p);

/// Gamma function on x > 0 (Lanczos, g = 7). Throws std::domain_error for x <= 0.
double gamma_real(double x);

/// Primes <= n in ascending order; empty for n < 2.
std::vector<std::int64_t> primes_up_to(std::int64_t n);

bool is_prime(std::int64_t n);

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Smallest-prime-factor table over [2, limit]. Immutable after construction.
class FactorTable {
 public:
  explicit FactorTable(std::int64_t limit);

  std::int64_t limit() const { return limit_; }

  /// Least prime dividing k, 2 <= k <= limit.
  std::int64_t smallest_prime_factor(std::int64_t k) const;

  /// Factorization of |x| in ascending primes. Throws std::out_of_range when
  /// |x| exceeds the limit, std::invalid_argument for x == 0.
  std::vector<PrimePower> factorize(std::int64_t x) const;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace fermat_els
