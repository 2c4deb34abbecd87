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

#include "fermat_els/constants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>

#include "fermat_els/density_cache.hpp"

namespace fermat_els {

BigRational alpha(int n) {
  if (n < 2) throw std::invalid_argument("alpha: n must be >= 2");
  BigRational sum(0);
  for (int r = 1; r < n; ++r) {
    if (std::gcd(r, n) != 1) continue;
    // gcd(n, 0) = n covers r = 1.
    sum += BigRational(1, std::gcd(n, r - 1));
  }
  return sum / BigRational(euler_phi(n));
}

BigRational alpha_orbit_oracle(int n) {
  if (n < 2) throw std::invalid_argument("alpha_orbit_oracle: n must be >= 2");
  std::int64_t hits = 0;
  std::int64_t units = 0;
  for (int r = 0; r < n; ++r) {
    if (std::gcd(r, n) != 1) continue;
    ++units;
    for (int q = 0; q < n; ++q) {
      for (int x = 0; x < n; ++x) {
        if ((static_cast<std::int64_t>(r) * x + q) % n == x) {
          ++hits;
          break;
        }
      }
    }
  }
  return BigRational(hits, static_cast<std::int64_t>(n) * units);
}

int delta_infinity(int n) {
  if (n < 2) throw std::invalid_argument("delta_infinity: n must be >= 2");
  return n % 2 == 0 ? 6 : 8;
}

EulerProduct euler_product(const ExponentContext& ctx, std::int64_t p_max,
                           const ConstantOptions& options) {
  EulerProduct out;
  const std::vector<std::int64_t> primes = primes_up_to(p_max);
  if (primes.empty()) return out;

  const double exponent = 3.0 * alpha(ctx.n()).to_double() - 3.0;
  std::vector<std::optional<LocalDensity>> densities(primes.size());
  if (options.cache != nullptr) {
    for (std::size_t i = 0; i < primes.size(); ++i) densities[i] = options.cache->lookup(ctx.n(), primes[i]);
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      if (densities[i]) continue;
      try {
        densities[i] = delta_p(ctx, primes[i]);
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

  out.factors.reserve(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const LocalDensity& d = *densities[i];
    if (options.cache != nullptr && !options.cache->lookup(ctx.n(), d.p)) options.cache->store(d);
    const double p = static_cast<double>(primes[i]);
    const double factor = d.exact.to_double() * std::pow(1.0 - 1.0 / p, exponent);
    out.value *= factor;
    out.factors.push_back({primes[i], factor, d.method});
  }
  return out;
}

double assemble_leading_constant(int n, int delta_inf, double gamma_alpha, double product) {
  const double even = n % 2 == 0 ? 2.0 : 1.0;
  return even * static_cast<double>(delta_inf) / (gamma_alpha * gamma_alpha * gamma_alpha) * product;
}

ConstantReport leading_constant(const ExponentContext& ctx, std::int64_t p_max,
                                const ConstantOptions& options) {
  if (p_max < 2) throw std::invalid_argument("leading_constant: p_max must be >= 2");
  ConstantReport r;
  r.n = ctx.n();
  r.alpha = alpha(ctx.n());
  r.alpha_float = r.alpha.to_double();
  r.delta_infinity = delta_infinity(ctx.n());
  r.p_max = p_max;
  EulerProduct product = euler_product(ctx, p_max, options);
  r.euler_product = product.value;
  r.factor_log = std::move(product.factors);
  r.gamma_alpha = gamma_real(r.alpha_float);
  r.c_n = assemble_leading_constant(r.n, r.delta_infinity, r.gamma_alpha, r.euler_product);
  return r;
}

}  // namespace fermat_els
