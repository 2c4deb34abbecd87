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

// The exponent alpha_n and the leading constant
//
//   C_n = (1 + [n even]) delta_inf(n) / Gamma(alpha_n)^3
//         * prod_p delta_p(n) (1 - 1/p)^(3 alpha_n - 3)
//
// of the count of everywhere locally soluble triples.

#pragma once

#include <cstdint>
#include <vector>

#include "fermat_els/arith.hpp"
#include "fermat_els/densities.hpp"
#include "fermat_els/local.hpp"

namespace fermat_els {

class DensityCache;

/// (1/phi(n)) * sum over units r mod n of 1/gcd(n, r - 1).
BigRational alpha(int n);

/// Proportion of pairs (q, r) in Z/n x (Z/n)^x for which x -> r x + q has
/// a fixed point, counted by brute force.
BigRational alpha_orbit_oracle(int n);

/// 8 for odd n, 6 for even n.
int delta_infinity(int n);

struct EulerFactor {
  std::int64_t p = 0;
  double factor = 0.0;
  DensityMethod method = DensityMethod::closed;
};

struct EulerProduct {
  double value = 1.0;
  std::vector<EulerFactor> factors;  // ascending p
};

struct ConstantOptions {
  int threads = 1;
  /// Optional exact-density cache, consulted before computing.
  DensityCache* cache = nullptr;
};

/// Product over p <= p_max of delta_p(n) (1 - 1/p)^(3 alpha_n - 3), with each
/// exact density rounded once to double and factors multiplied in
/// ascending p regardless of thread count.
EulerProduct euler_product(const ExponentContext& ctx, std::int64_t p_max,
                           const ConstantOptions& options = {});

struct ConstantReport {
  int n = 0;
  BigRational alpha;
  double alpha_float = 0.0;
  int delta_infinity = 0;
  std::int64_t p_max = 0;
  double euler_product = 0.0;
  double gamma_alpha = 0.0;
  double c_n = 0.0;
  std::vector<EulerFactor> factor_log;
};

/// C_n from its ingredients; the single formula used everywhere.
double assemble_leading_constant(int n, int delta_inf, double gamma_alpha, double product);

ConstantReport leading_constant(const ExponentContext& ctx, std::int64_t p_max,
                                const ConstantOptions& options = {});

}  // namespace fermat_els
