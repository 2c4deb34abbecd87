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

// Slow reference implementations used only to cross-check the library.
// Nothing here calls into local.hpp or densities.hpp deciders; modular
// helpers are re-implemented locally.

#pragma once

#include <cstdint>

#include "fermat_els/densities.hpp"
#include "fermat_els/local.hpp"

namespace fermat_els::oracle {

/// Hilbert symbol (a, b)_p in {+1, -1} for nonzero integers a, b.
int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p);

/// a1 x^2 + a2 y^2 + a3 z^2 = 0 has a nontrivial Q_p-point iff
/// (-a1 a3, -a2 a3)_p = 1.
bool conic_soluble_hilbert(const CoeffTriple& a, std::int64_t p);

/// Exhaustive: is a mod p in {t^n : 1 <= t < p}?
bool is_nth_power_by_search(std::int64_t a, std::int64_t n, std::int64_t p);

/// Decides Q_p-solubility by breadth-first lifting of primitive solutions
/// mod p^k, stopping at the first point meeting the Hensel criterion
/// v(F(x)) > 2 (v_p(n) + min_i v(a_i x_i^(n-1))) or when no solution
/// survives. Throws std::runtime_error if undecided within the depth limit.
bool qp_soluble_by_lifting(const CoeffTriple& a, int n, std::int64_t p);

/// Everywhere local solubility with the lifting oracle at every prime
/// dividing n a1 a2 a3 and every prime p <= ((n-1)(n-2))^2 + 1. Zero
/// entries count as soluble.
bool els_by_lifting(const CoeffTriple& a, int n);

/// Literal enumeration of every residue triple mod p^(n + 2 v_p(n)),
/// deciding each with the lifting oracle. Only for tiny (n, p).
MCounts m_counts_by_lifting(int n, std::int64_t p);

}  // namespace fermat_els::oracle
