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

#include "fermat_els/arith.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fermat_els {

// ---- BigRational ----------------------------------------------------------

BigRational::BigRational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

static_assert(sizeof(long) == sizeof(std::int64_t), "mpz_class long constructor must be 64-bit");

BigRational::BigRational(std::int64_t value) : value_(mpz_class(static_cast<long>(value))) {}

BigRational::BigRational(const BigInt& value) : value_(value) {}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

BigRational::BigRational(std::int64_t num, std::int64_t den)
    : BigRational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

BigRational BigRational::parse(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return BigRational(BigInt(std::string(text)));
    }
    return BigRational(BigInt(std::string(text.substr(0, slash))),
                       BigInt(std::string(text.substr(slash + 1))));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("BigRational: cannot parse '" + std::string(text) + "'");
  }
}

BigInt BigRational::numerator() const { return value_.get_num(); }
BigInt BigRational::denominator() const { return value_.get_den(); }

bool BigRational::is_integer() const { return value_.get_den() == 1; }

std::string BigRational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

double BigRational::to_double() const {
  const int s = sgn(value_);
  if (s == 0) return 0.0;
  BigInt num = abs(value_.get_num());
  BigInt den = value_.get_den();
  // Scale so the integer quotient carries 55 or 56 bits, then round the
  // surplus bits half-to-even with the division remainder as sticky bit.
  const long k = 55 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) +
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  if (k >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int shift = static_cast<int>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 53;
  const std::uint64_t wide = q.get_ui();
  std::uint64_t mant = wide >> shift;
  const std::uint64_t low = wide & ((std::uint64_t{1} << shift) - 1);
  const std::uint64_t half = std::uint64_t{1} << (shift - 1);
  if (low > half || (low == half && (r != 0 || (mant & 1U)))) ++mant;
  const double result = std::ldexp(static_cast<double>(mant), static_cast<int>(shift - k));
  return s < 0 ? -result : result;
}

BigRational BigRational::pow(int exponent) const {
  if (exponent < 0) {
    if (value_ == 0) throw std::domain_error("BigRational: zero to a negative power");
    return BigRational(1) / pow(-exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return BigRational(num, den);
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.value_ == 0) throw std::domain_error("BigRational: division by zero");
  value_ /= rhs.value_;
  return *this;
}
BigRational BigRational::operator-() const { return BigRational(mpq_class(-value_)); }

// ---- Integer kernels ------------------------------------------------------

Valuation padic_valuation(std::int64_t x, std::int64_t p) {
  if (p < 2) throw std::invalid_argument("padic_valuation: p must be >= 2");
  if (x == 0) throw std::invalid_argument("padic_valuation: valuation of 0 is infinite");
  Valuation out{0, x};
  while (out.unit % p == 0) {
    out.unit /= p;
    ++out.v;
  }
  return out;
}

std::int64_t rep_mod(std::int64_t a, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("rep_mod: modulus must be positive");
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus == 0 || modulus >= (std::uint64_t{1} << 63)) {
    throw std::invalid_argument("pow_mod: modulus out of range");
  }
  __extension__ typedef unsigned __int128 u128;
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = static_cast<std::uint64_t>(u128{result} * base % modulus);
    base = static_cast<std::uint64_t>(u128{base} * base % modulus);
    exponent >>= 1;
  }
  return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = rep_mod(a, m);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  if (r0 != 1) throw std::invalid_argument("inverse_mod: not a unit");
  return rep_mod(s0, m);
}

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t out = 1;
  for (int i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(out, p, &out)) throw std::overflow_error("ipow: overflow");
  }
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  std::int64_t result = n;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      result -= result / q;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_nth_power_residue(std::int64_t a, std::int64_t n, std::int64_t p) {
  if (n < 1) throw std::invalid_argument("is_nth_power_residue: n must be positive");
  if (p < 2) throw std::invalid_argument("is_nth_power_residue: p must be prime");
  const std::int64_t r = rep_mod(a, p);
  if (r == 0) throw std::invalid_argument("is_nth_power_residue: p divides a");
  const std::int64_t d = std::gcd(n, p - 1);
  return pow_mod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / d),
                 static_cast<std::uint64_t>(p)) == 1;
}

std::int64_t primitive_root(std::int64_t p) {
  if (p == 2) return 1;
  std::vector<std::int64_t> factors;
  std::int64_t m = p - 1;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::int64_t q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::invalid_argument("primitive_root: p is not prime");
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

// ---- FactorTable ----------------------------------------------------------

FactorTable::FactorTable(std::int64_t limit) : limit_(limit) {
  if (limit < 1) throw std::invalid_argument("FactorTable: limit must be positive");
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("FactorTable: limit too large");
  }
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    for (std::int64_t j = i * i; j <= limit; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::int64_t FactorTable::smallest_prime_factor(std::int64_t k) const {
  if (k < 2 || k > limit_) throw std::out_of_range("FactorTable: index out of range");
  return spf_[k];
}

std::vector<PrimePower> FactorTable::factorize(std::int64_t x) const {
  if (x == 0) throw std::invalid_argument("FactorTable::factorize: zero");
  std::int64_t m = x < 0 ? -x : x;
  if (m > limit_) throw std::out_of_range("FactorTable::factorize: |x| exceeds table limit");
  std::vector<PrimePower> out;
  while (m > 1) {
    const std::int64_t q = spf_[m];
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  return out;
}

}  // namespace fermat_els
