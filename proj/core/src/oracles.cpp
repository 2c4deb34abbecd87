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

#include "fermat_els/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fermat_els::oracle {

namespace {

__extension__ typedef __int128 i128;

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<i128>(a) * b % m);
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b = mod(b, m);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
  }
  return r;
}

bool prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int val(std::int64_t& x, std::int64_t p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int legendre(std::int64_t u, std::int64_t p) {
  const std::int64_t r = powmod(u, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

// Valuation of a residue mod p^cap, capped at cap.
int capped_val(std::int64_t r, std::int64_t p, int cap) {
  if (r == 0) return cap;
  int v = 0;
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

}  // namespace

int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
  std::int64_t u = a, v = b;
  const int alpha = val(u, p);
  const int beta = val(v, p);
  if (p != 2) {
    int s = ((static_cast<std::int64_t>(alpha) * beta * ((p - 1) / 2)) % 2 == 0) ? 1 : -1;
    if (beta % 2 != 0) s *= legendre(mod(u, p), p);
    if (alpha % 2 != 0) s *= legendre(mod(v, p), p);
    return s;
  }
  const std::int64_t u8 = mod(u, 8), v8 = mod(v, 8);
  const int eps_u = static_cast<int>(((u8 - 1) / 2) % 2);
  const int eps_v = static_cast<int>(((v8 - 1) / 2) % 2);
  const int omega_u = static_cast<int>(((u8 * u8 - 1) / 8) % 2);
  const int omega_v = static_cast<int>(((v8 * v8 - 1) / 8) % 2);
  const int e = eps_u * eps_v + alpha * omega_v + beta * omega_u;
  return e % 2 == 0 ? 1 : -1;
}

bool conic_soluble_hilbert(const CoeffTriple& a, std::int64_t p) {
  return hilbert_symbol(-a[0] * a[2], -a[1] * a[2], p) == 1;
}

bool is_nth_power_by_search(std::int64_t a, std::int64_t n, std::int64_t p) {
  const std::int64_t target = mod(a, p);
  for (std::int64_t t = 1; t < p; ++t) {
    if (powmod(t, n, p) == target) return true;
  }
  return false;
}

bool qp_soluble_by_lifting(const CoeffTriple& a, int n, std::int64_t p) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i] == 0) throw std::invalid_argument("qp_soluble_by_lifting: zero coefficient");
  }
  // Work modulo p^cap with cap as large as 63-bit arithmetic allows.
  int cap = 0;
  std::int64_t pk = 1;
  while (pk <= (std::int64_t{1} << 40) / p) {
    pk *= p;
    ++cap;
  }
  std::int64_t vn_tmp = n;
  const int vn = val(vn_tmp, p);
  // Rescaling x_i by p and dividing the form by p change nothing, so
  // bring every valuation below n and the smallest one to zero.
  std::array<int, 3> va{};
  std::array<std::int64_t, 3> unit{};
  for (std::size_t i = 0; i < 3; ++i) {
    unit[i] = a[i];
    va[i] = val(unit[i], p) % n;
  }
  const int vmin = std::min({va[0], va[1], va[2]});
  std::array<std::int64_t, 3> ar{};
  for (std::size_t i = 0; i < 3; ++i) {
    va[i] -= vmin;
    ar[i] = mulmod(mod(unit[i], pk), powmod(p, va[i], pk), pk);
  }
  const auto form = [&](const std::array<std::int64_t, 3>& x) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < 3; ++i) s = mod(s + mulmod(ar[i], powmod(x[i], n, pk), pk), pk);
    return s;
  };
  const auto hensel_ok = [&](const std::array<std::int64_t, 3>& x, int vf) {
    int mu = -1;
    for (std::size_t i = 0; i < 3; ++i) {
      if (x[i] == 0) continue;
      std::int64_t t = x[i];
      const int term = va[i] + (n - 1) * val(t, p);
      if (mu < 0 || term < mu) mu = term;
    }
    return mu >= 0 && vf > 2 * (vn + mu) && (vf < cap || cap > 2 * (vn + mu));
  };

  constexpr std::size_t kFrontierLimit = 4'000'000;
  for (std::size_t chart = 0; chart < 3; ++chart) {
    const std::size_t j = (chart + 1) % 3, l = (chart + 2) % 3;
    std::vector<std::array<std::int64_t, 3>> frontier;
    {
      std::array<std::int64_t, 3> x{};
      x[chart] = 1;
      for (std::int64_t s = 0; s < p; ++s) {
        for (std::int64_t t = 0; t < p; ++t) {
          // Charts already searched cover points with a unit coordinate there.
          if ((j < chart && s != 0) || (l < chart && t != 0)) continue;
          x[j] = s;
          x[l] = t;
          if (form(x) % p == 0) frontier.push_back(x);
        }
      }
    }
    std::int64_t scale = p;  // frontier points are solutions mod scale
    for (int k = 1;; ++k) {
      if (frontier.empty()) break;
      for (const auto& x : frontier) {
        if (hensel_ok(x, capped_val(form(x), p, cap))) return true;
      }
      if (k + 1 >= cap || frontier.size() > kFrontierLimit) {
        throw std::runtime_error("qp_soluble_by_lifting: undecided within limits");
      }
      const std::int64_t next_scale = scale * p;
      std::vector<std::array<std::int64_t, 3>> next;
      for (const auto& x : frontier) {
        for (std::int64_t s = 0; s < p; ++s) {
          for (std::int64_t t = 0; t < p; ++t) {
            std::array<std::int64_t, 3> y = x;
            y[j] += s * scale;
            y[l] += t * scale;
            if (form(y) % next_scale == 0) next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
      scale = next_scale;
    }
  }
  return false;
}

bool els_by_lifting(const CoeffTriple& a, int n) {
  if (a[0] == 0 || a[1] == 0 || a[2] == 0) return true;
  if (n % 2 == 0) {
    const bool pos = a[0] > 0 && a[1] > 0 && a[2] > 0;
    const bool neg = a[0] < 0 && a[1] < 0 && a[2] < 0;
    if (pos || neg) return false;
  }
  const std::int64_t c = static_cast<std::int64_t>(n - 1) * (n - 2);
  const std::int64_t limit = c * c + 1;
  std::vector<std::int64_t> primes;
  for (std::int64_t q = 2; q <= limit; ++q) {
    if (prime(q)) primes.push_back(q);
  }
  for (std::int64_t v : {static_cast<std::int64_t>(n), a[0], a[1], a[2]}) {
    std::int64_t m = v < 0 ? -v : v;
    for (std::int64_t q = 2; q * q <= m; ++q) {
      if (m % q == 0) {
        primes.push_back(q);
        while (m % q == 0) m /= q;
      }
    }
    if (m > 1) primes.push_back(m);
  }
  for (std::int64_t q : primes) {
    if (!qp_soluble_by_lifting(a, n, q)) return false;
  }
  return true;
}

MCounts m_counts_by_lifting(int n, std::int64_t p) {
  std::int64_t nn = n;
  const int vn = val(nn, p);
  const int e = n + 2 * vn;
  std::int64_t modulus = 1;
  for (int i = 0; i < e; ++i) modulus *= p;
  std::vector<int> v(static_cast<std::size_t>(modulus), -1);
  for (std::int64_t r = 1; r < modulus; ++r) {
    std::int64_t t = r;
    v[r] = val(t, p);
  }
  MCounts out;
  out.modulus_exponent = e;
  for (std::int64_t x = 1; x < modulus; ++x) {
    if (v[x] >= n) continue;
    for (std::int64_t y = 1; y < modulus; ++y) {
      if (v[y] >= n) continue;
      for (std::int64_t z = 1; z < modulus; ++z) {
        if (v[z] != 0) continue;
        int pattern;
        if (v[x] == 0 && v[y] == 0) {
          pattern = 1;
        } else if (v[x] > 0 && v[y] == 0) {
          pattern = 2;
        } else if (v[x] > 0 && v[x] == v[y]) {
          pattern = 3;
        } else {
          continue;
        }
        if (!qp_soluble_by_lifting(CoeffTriple(x, y, z), n, p)) continue;
        if (pattern == 1) {
          out.m1 += 1;
        } else if (pattern == 2) {
          out.m2 += 1;
        } else {
          out.m3 += 1;
        }
      }
    }
  }
  return out;
}

}  // namespace fermat_els::oracle
