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

// Exact local densities: the Haar volume of primitive coefficient triples
// in Z_p^3 whose diagonal equation has a nonzero Z_p-solution.
//
// Three routes are provided and cross-checked by the test suite:
//   direct  - count residue triples mod p^(n + 2 v_p(n)) by valuation
//             pattern, deciding each class with the witness search;
//   classed - for p not dividing n, count unit triples by n-th power coset
//             pairs and use the exact formulas for the other patterns;
//   closed  - the rational function valid outside S(n).

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fermat_els/arith.hpp"
#include "fermat_els/local.hpp"

namespace fermat_els {

enum class DensityMethod { direct, classed, closed };
enum class DensityStrategy { automatic, direct, classed, closed };

std::string to_string(DensityMethod method);
DensityMethod parse_density_method(std::string_view text);
DensityStrategy parse_density_strategy(std::string_view text);

/// Solubility-class counts by valuation pattern modulo p^e, e = n + 2 v_p(n):
///   m1 - all three coefficients units;
///   m2 - 0 < v_p(a1) < n, a2 and a3 units;
///   m3 - 0 < v_p(a1) = v_p(a2) < n, a3 unit.
struct MCounts {
  BigInt m1;
  BigInt m2;
  BigInt m3;
  int modulus_exponent = 0;

  friend bool operator==(const MCounts&, const MCounts&) = default;
};

struct LocalDensity {
  std::int64_t p = 0;
  int n = 0;
  BigRational exact;       // delta_p(n)
  BigRational normalized;  // delta_p(n) (1 - 1/p)^-3
  DensityMethod method = DensityMethod::closed;
  std::optional<MCounts> counts;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncompatibleStrategy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DirectOptions {
  /// Refuse when p^(3e) exceeds this, unless forced.
  double budget = 1e9;
  bool force = false;
};

/// n + 2 v_p(n).
int m_count_modulus_exponent(const ExponentContext& ctx, std::int64_t p);

/// Solubility of the residue class of (a1, a2, a3) mod p^e. Every residue
/// must lie in [0, p^e) with v_p < n; the decision is qp_soluble on the
/// canonical lift.
bool class_solubility_predicate(const std::array<std::int64_t, 3>& residues,
                                const ExponentContext& ctx, std::int64_t p);

MCounts m_counts_direct(const ExponentContext& ctx, std::int64_t p,
                        const DirectOptions& options = {});

/// Requires p not dividing n.
MCounts m_counts_classed(const ExponentContext& ctx, std::int64_t p);

/// Assembles delta_p from the counts via the geometric-series weights.
LocalDensity delta_p_exact(const ExponentContext& ctx, std::int64_t p, const MCounts& counts,
                           DensityMethod method);

/// Requires p outside S(n).
LocalDensity delta_p_closed(const ExponentContext& ctx, std::int64_t p);

/// automatic: closed outside S(n), classed for p in S(n) not dividing n,
/// direct for p | n.
LocalDensity delta_p(const ExponentContext& ctx, std::int64_t p,
                     DensityStrategy strategy = DensityStrategy::automatic,
                     const DirectOptions& options = {});

}  // namespace fermat_els
