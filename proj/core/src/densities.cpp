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

#include "fermat_els/densities.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace fermat_els {

namespace {

BigInt big_pow(std::int64_t p, int k) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return out;
}

BigInt to_big(std::int64_t x) { return BigInt(static_cast<long>(x)); }

BigInt require_integer(const BigRational& r, const char* what) {
  if (!r.is_integer()) throw std::logic_error(std::string(what) + " is not an integer");
  return r.numerator();
}

// Per-residue data for the direct count: residues mod p^e grouped by
// (v_p, unit part mod p^(2 v_p(n) + 1)), which determines the minimised
// triple mod the witness modulus.
struct Signature {
  int v = 0;
  std::int64_t representative = 0;
  std::int64_t multiplicity = 0;
};

}  // namespace

std::string to_string(DensityMethod method) {
  switch (method) {
    case DensityMethod::direct: return "direct";
    case DensityMethod::classed: return "classed";
    case DensityMethod::closed: return "closed";
  }
  return "unknown";
}

DensityMethod parse_density_method(std::string_view text) {
  if (text == "direct") return DensityMethod::direct;
  if (text == "classed") return DensityMethod::classed;
  if (text == "closed") return DensityMethod::closed;
  throw std::invalid_argument("unknown density method '" + std::string(text) + "'");
}

DensityStrategy parse_density_strategy(std::string_view text) {
  if (text == "auto") return DensityStrategy::automatic;
  if (text == "direct") return DensityStrategy::direct;
  if (text == "classed") return DensityStrategy::classed;
  if (text == "closed") return DensityStrategy::closed;
  throw std::invalid_argument("unknown density strategy '" + std::string(text) + "'");
}

int m_count_modulus_exponent(const ExponentContext& ctx, std::int64_t p) {
  return ctx.n() + 2 * ctx.vp_of_n(p);
}

bool class_solubility_predicate(const std::array<std::int64_t, 3>& residues,
                                const ExponentContext& ctx, std::int64_t p) {
  const std::int64_t modulus = ipow(p, m_count_modulus_exponent(ctx, p));
  CoeffTriple lift;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::int64_t r = residues[i];
    if (r <= 0 || r >= modulus) {
      throw std::invalid_argument("class_solubility_predicate: residue must be a nonzero class mod p^e");
    }
    if (padic_valuation(r, p).v >= ctx.n()) {
      throw std::invalid_argument("class_solubility_predicate: residue valuation must be < n");
    }
    lift[i] = r;
  }
  return qp_soluble(lift, ctx, p);
}

MCounts m_counts_direct(const ExponentContext& ctx, std::int64_t p, const DirectOptions& options) {
  if (!is_prime(p)) throw std::invalid_argument("m_counts_direct: p must be prime");
  const int n = ctx.n();
  const int e = m_count_modulus_exponent(ctx, p);
  const double nominal = std::pow(static_cast<double>(p), 3.0 * e);
  if (nominal > options.budget && !options.force) {
    throw BudgetExceeded("m_counts_direct: p^(3e) = " + std::to_string(nominal) +
                         " exceeds the enumeration budget");
  }
  const std::int64_t modulus = ipow(p, e);
  const std::int64_t wmod = ctx.witness_modulus(p);

  // Group residues by signature; index = v * wmod + (unit mod wmod).
  std::vector<Signature> sigs(static_cast<std::size_t>(n * wmod));
  for (std::int64_t r = 1; r < modulus; ++r) {
    const Valuation val = padic_valuation(r, p);
    if (val.v >= n) continue;
    Signature& s = sigs[static_cast<std::size_t>(val.v * wmod + val.unit % wmod)];
    s.v = val.v;
    if (s.multiplicity++ == 0) s.representative = r;
  }
  std::vector<std::vector<const Signature*>> by_valuation(n);
  for (const auto& s : sigs) {
    if (s.multiplicity > 0) by_valuation[s.v].push_back(&s);
  }

  // Memo keyed on the minimised triple reduced mod the witness modulus.
  std::unordered_map<std::uint64_t, bool> memo;
  const auto soluble = [&](const Signature* x, const Signature* y, const Signature* z) {
    const CoeffTriple a(x->representative, y->representative, z->representative);
    if (valuation_class_count(a, n, p) == 3) return false;
    const MinimisedTriple mt = minimise(a, ctx, p);
    const auto w = static_cast<std::uint64_t>(wmod);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(rep_mod(mt.b[0], wmod)) * w +
         static_cast<std::uint64_t>(rep_mod(mt.b[1], wmod))) * w +
        static_cast<std::uint64_t>(rep_mod(mt.b[2], wmod));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const bool ok = class_solubility_predicate(a.a, ctx, p);
    memo.emplace(key, ok);
    return ok;
  };

  MCounts out;
  out.modulus_exponent = e;
  const auto& units = by_valuation[0];
  for (const Signature* x : units) {
    for (const Signature* y : units) {
      for (const Signature* z : units) {
        if (soluble(x, y, z)) out.m1 += to_big(x->multiplicity * y->multiplicity) * to_big(z->multiplicity);
      }
    }
  }
  for (int v = 1; v < n; ++v) {
    for (const Signature* x : by_valuation[v]) {
      for (const Signature* y : units) {
        for (const Signature* z : units) {
          if (soluble(x, y, z)) out.m2 += to_big(x->multiplicity * y->multiplicity) * to_big(z->multiplicity);
        }
      }
      for (const Signature* y : by_valuation[v]) {
        for (const Signature* z : units) {
          if (soluble(x, y, z)) out.m3 += to_big(x->multiplicity * y->multiplicity) * to_big(z->multiplicity);
        }
      }
    }
  }
  return out;
}

MCounts m_counts_classed(const ExponentContext& ctx, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("m_counts_classed: p must be prime");
  const int n = ctx.n();
  if (n % p == 0) throw std::invalid_argument("m_counts_classed: requires p not dividing n");
  const std::int64_t d = std::gcd<std::int64_t>(n, p - 1);
  const std::int64_t g = primitive_root(p);

  // n-th powers mod p, as a membership table and a distinct list.
  std::vector<char> is_power(p, 0);
  std::vector<std::int64_t> powers;
  for (std::int64_t t = 0; t < p; ++t) {
    const auto v = static_cast<std::int64_t>(pow_mod(t, n, p));
    if (!is_power[v]) {
      is_power[v] = 1;
      powers.push_back(v);
    }
  }

  // Unit triples (b1, b2, b3) up to scaling by b1 and by n-th powers are
  // classified by the cosets of b2/b1 and b3/b1 in F_p^x / F_p^xn.
  std::int64_t soluble_pairs = 0;
  std::vector<std::int64_t> coset_rep(d);
  for (std::int64_t i = 0; i < d; ++i) coset_rep[i] = static_cast<std::int64_t>(pow_mod(g, i, p));
  for (std::int64_t i = 0; i < d; ++i) {
    for (std::int64_t j = 0; j < d; ++j) {
      const std::int64_t c2 = coset_rep[i], c3 = coset_rep[j];
      const std::int64_t c3_inv = inverse_mod(c3, p);
      bool found = false;
      for (std::int64_t x : powers) {
        for (std::int64_t y : powers) {
          // Need c3 z = -(x + c2 y) with z an n-th power, not all of x, y, z zero.
          const std::int64_t s = (x + c2 * y) % p;
          const std::int64_t z = rep_mod(-s * c3_inv, p);
          if (z == 0 && x == 0 && y == 0) continue;
          if (is_power[z]) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) ++soluble_pairs;
    }
  }

  const std::int64_t per_pair = (p - 1) * ((p - 1) / d) * ((p - 1) / d);
  MCounts out;
  out.modulus_exponent = n;
  out.m1 = big_pow(p, 3 * (n - 1)) * to_big(soluble_pairs) * to_big(per_pair);

  const BigRational q(1, p);
  const BigRational one(1);
  const BigRational scale = BigRational(big_pow(p, 3 * n)) / BigRational(d);
  out.m2 = require_integer(scale * (one - q).pow(2) * (q - q.pow(n)), "m2");
  out.m3 = require_integer(scale * (one - q).pow(3) * (q.pow(2) - q.pow(2 * n)) / (one - q.pow(2)), "m3");
  return out;
}

LocalDensity delta_p_exact(const ExponentContext& ctx, std::int64_t p, const MCounts& counts,
                           DensityMethod method) {
  const int n = ctx.n();
  const BigRational q(1, p);
  const BigRational one(1);
  const BigRational qn = q.pow(n);
  const BigRational w1 = (one - q.pow(3 * n)) / (one - qn).pow(3);
  const BigRational w2 = BigRational(3) * (one - q.pow(2 * n)) / (one - qn).pow(3);
  const BigRational w3 = BigRational(3) / (one - qn).pow(2);

  LocalDensity out;
  out.p = p;
  out.n = n;
  out.method = method;
  out.counts = counts;
  out.exact = (w1 * BigRational(counts.m1) + w2 * BigRational(counts.m2) + w3 * BigRational(counts.m3)) /
              BigRational(big_pow(p, 3 * counts.modulus_exponent));
  out.normalized = out.exact / (one - q).pow(3);
  return out;
}

LocalDensity delta_p_closed(const ExponentContext& ctx, std::int64_t p) {
  if (ctx.is_small_prime(p)) throw IncompatibleStrategy("delta_p_closed: p lies in S(n)");
  const int n = ctx.n();
  const BigRational d(std::gcd<std::int64_t>(n, p - 1));
  const BigRational q(1, p);
  const BigRational one(1), three(3);
  const BigRational qn = q.pow(n);

  LocalDensity out;
  out.p = p;
  out.n = n;
  out.method = DensityMethod::closed;
  out.normalized = (one - q.pow(3 * n)) / (one - qn).pow(3) +
                   three * (one - q.pow(2 * n)) * (q - qn) / (d * (one - q) * (one - qn).pow(3)) +
                   three * (q.pow(2) - q.pow(2 * n)) / (d * (one - qn).pow(2) * (one - q.pow(2)));
  out.exact = out.normalized * (one - q).pow(3);
  return out;
}

LocalDensity delta_p(const ExponentContext& ctx, std::int64_t p, DensityStrategy strategy,
                     const DirectOptions& options) {
  if (!is_prime(p)) throw std::invalid_argument("delta_p: p must be prime");
  const bool divides = ctx.n() % p == 0;
  const bool small = ctx.is_small_prime(p);
  if (strategy == DensityStrategy::automatic) {
    strategy = !small ? DensityStrategy::closed
                      : (divides ? DensityStrategy::direct : DensityStrategy::classed);
  }
  switch (strategy) {
    case DensityStrategy::closed:
      if (small) throw IncompatibleStrategy("closed form requires p outside S(n)");
      return delta_p_closed(ctx, p);
    case DensityStrategy::classed:
      if (divides) throw IncompatibleStrategy("classed counts require p not dividing n");
      return delta_p_exact(ctx, p, m_counts_classed(ctx, p), DensityMethod::classed);
    case DensityStrategy::direct:
      return delta_p_exact(ctx, p, m_counts_direct(ctx, p, options), DensityMethod::direct);
    case DensityStrategy::automatic:
      break;
  }
  throw std::logic_error("delta_p: unreachable strategy");
}

}  // namespace fermat_els
