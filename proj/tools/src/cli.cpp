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

#include "fermat_els/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermat_els/census.hpp"
#include "fermat_els/constants.hpp"
#include "fermat_els/densities.hpp"
#include "fermat_els/density_cache.hpp"
#include "fermat_els/local.hpp"
#include "fermat_els/verify.hpp"

namespace fermat_els::cli {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CoeffTriple parse_triple(const std::string& text) {
  CoeffTriple a;
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 3) throw UsageError("--a expects three comma-separated integers");
    std::size_t used = 0;
    try {
      a[i] = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--a: not an integer: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("--a: not an integer: '" + item + "'");
    ++i;
  }
  if (i != 3) throw UsageError("--a expects three comma-separated integers");
  return a;
}

json triple_json(const CoeffTriple& a) { return json::array({a[0], a[1], a[2]}); }

std::unique_ptr<DensityCache> open_cache(const std::string& flag) {
  std::optional<std::filesystem::path> dir;
  if (!flag.empty()) {
    dir = flag;
  } else {
    dir = DensityCache::env_dir();
  }
  if (!dir) return nullptr;
  std::filesystem::create_directories(*dir);
  return std::make_unique<DensityCache>(*dir / DensityCache::kFileName);
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw UsageError("--p must be prime, got " + std::to_string(p));
}

struct Options {
  int n = 3;
  std::int64_t p = 0;
  std::string triple;
  std::string method = "auto";
  bool exact = false;
  bool force = false;
  std::int64_t p_max = 10000;
  std::int64_t bmax = 0;
  std::int64_t step = 0;
  std::string checkpoint;
  int threads = 1;
  std::int64_t shard_size = 8;
  std::string cache_dir;
  std::string suite = "quick";
};

json run_solvable(const Options& o) {
  require_prime(o.p);
  const CoeffTriple a = parse_triple(o.triple);
  if (a.has_zero()) throw UsageError("--a: coefficients must be nonzero");
  const ExponentContext ctx(o.n);
  return {{"n", o.n}, {"p", o.p}, {"a", triple_json(a)}, {"soluble", qp_soluble(a, ctx, o.p)}};
}

json run_els(const Options& o) {
  const CoeffTriple a = parse_triple(o.triple);
  std::int64_t m = 2;
  for (std::size_t i = 0; i < 3; ++i) m = std::max(m, a[i] < 0 ? -a[i] : a[i]);
  const ExponentContext ctx(o.n);
  const FactorTable table(m);
  return {{"n", o.n}, {"a", triple_json(a)}, {"els", els(a, ctx, table)}};
}

json run_delta_p(const Options& o) {
  require_prime(o.p);
  const ExponentContext ctx(o.n);
  const DensityStrategy strategy = parse_density_strategy(o.method);
  DirectOptions direct;
  direct.force = o.force;

  std::unique_ptr<DensityCache> cache = open_cache(o.cache_dir);
  std::optional<LocalDensity> d;
  if (cache && strategy == DensityStrategy::automatic) d = cache->lookup(o.n, o.p);
  if (!d) {
    d = delta_p(ctx, o.p, strategy, direct);
    if (cache) cache->store(*d);
  }

  json j = {{"n", o.n},
            {"p", o.p},
            {"method", to_string(d->method)},
            {"delta_p", round12(d->exact.to_double())},
            {"normalized", round12(d->normalized.to_double())}};
  if (o.exact) {
    j["delta_p_exact"] = d->exact.to_string();
    j["normalized_exact"] = d->normalized.to_string();
    if (d->counts) {
      j["m_counts"] = {{"m1", d->counts->m1.get_str()},
                       {"m2", d->counts->m2.get_str()},
                       {"m3", d->counts->m3.get_str()},
                       {"modulus_exponent", d->counts->modulus_exponent}};
    }
  }
  return j;
}

json run_alpha(const Options& o) {
  const BigRational a = alpha(o.n);
  return {{"n", o.n}, {"alpha", a.to_string()}, {"alpha_float", round12(a.to_double())}};
}

ConstantReport compute_constant(const Options& o) {
  std::unique_ptr<DensityCache> cache = open_cache(o.cache_dir);
  ConstantOptions opts;
  opts.threads = o.threads;
  opts.cache = cache.get();
  return leading_constant(ExponentContext(o.n), o.p_max, opts);
}

json run_constant(const Options& o) {
  if (o.p_max < 2) throw UsageError("--pmax must be at least 2");
  const ConstantReport r = compute_constant(o);
  return {{"n", r.n},
          {"alpha", r.alpha.to_string()},
          {"alpha_float", round12(r.alpha_float)},
          {"delta_infinity", r.delta_infinity},
          {"p_max", r.p_max},
          {"euler_product", round12(r.euler_product)},
          {"gamma_alpha", round12(r.gamma_alpha)},
          {"C_n", round12(r.c_n)}};
}

void run_census(const Options& o, std::ostream& out) {
  if (o.bmax < 1) throw UsageError("--bmax must be positive");
  if (o.step < 0) throw UsageError("--step must be positive");
  if (o.p_max < 2) throw UsageError("--pmax must be at least 2");
  std::vector<std::int64_t> bounds;
  if (o.step == 0) {
    bounds.push_back(o.bmax);
  } else {
    for (std::int64_t b = o.step; b < o.bmax; b += o.step) bounds.push_back(b);
    bounds.push_back(o.bmax);
  }
  const ConstantReport constant = compute_constant(o);
  SweepOptions sweep;
  sweep.threads = o.threads;
  sweep.shard_size = o.shard_size;
  if (!o.checkpoint.empty()) sweep.checkpoint = o.checkpoint;
  write_census_csv(out, census_sweep(ExponentContext(o.n), bounds, constant, sweep));
}

int run_verify(const Options& o, std::ostream& out) {
  const std::vector<CheckResult> results = run_verification(parse_verify_suite(o.suite), o.threads);
  bool ok = true;
  json checks = json::array();
  for (const CheckResult& r : results) {
    ok = ok && r.passed;
    checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", round12(r.seconds)}});
  }
  out << json{{"suite", o.suite}, {"passed", ok}, {"checks", checks}}.dump() << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Local solubility of a1 x^n + a2 y^n + a3 z^n = 0", "fermat-els"};
  app.require_subcommand(1);

  const auto add_n = [&](CLI::App* sub) { sub->add_option("--n", o.n, "exponent n >= 2")->required()->check(CLI::Range(2, 1000)); };
  const auto add_threads = [&](CLI::App* sub) { sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 1024)); };
  const auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", o.cache_dir, "density cache directory (overrides FERMAT_ELS_CACHE_DIR)");
  };

  CLI::App* solvable = app.add_subcommand("solvable", "Q_p solubility of one triple");
  add_n(solvable);
  solvable->add_option("--p", o.p, "prime")->required();
  solvable->add_option("--a", o.triple, "A1,A2,A3")->required();

  CLI::App* els_cmd = app.add_subcommand("els", "everywhere local solubility of one triple");
  add_n(els_cmd);
  els_cmd->add_option("--a", o.triple, "A1,A2,A3")->required();

  CLI::App* dp = app.add_subcommand("delta-p", "local density delta_p(n)");
  add_n(dp);
  dp->add_option("--p", o.p, "prime")->required();
  dp->add_option("--method", o.method, "auto|direct|classed|closed")
      ->check(CLI::IsMember({"auto", "direct", "classed", "closed"}));
  dp->add_flag("--exact", o.exact, "also print exact rationals and counts");
  dp->add_flag("--force", o.force, "run direct enumeration past its budget");
  add_cache(dp);

  CLI::App* al = app.add_subcommand("alpha", "the exponent alpha_n");
  add_n(al);

  CLI::App* cn = app.add_subcommand("constant", "leading constant C_n");
  add_n(cn);
  cn->add_option("--pmax", o.p_max, "largest prime in the Euler product");
  add_threads(cn);
  add_cache(cn);

  CLI::App* census = app.add_subcommand("census", "count ELS triples in [-B, B]^3 (CSV)");
  add_n(census);
  census->add_option("--bmax", o.bmax, "largest bound B")->required();
  census->add_option("--step", o.step, "emit a row every S up to bmax");
  census->add_option("--checkpoint", o.checkpoint, "resumable checkpoint file");
  census->add_option("--pmax", o.p_max, "largest prime in the Euler product");
  census->add_option("--shard-size", o.shard_size, "a1 values per shard")->check(CLI::PositiveNumber);
  add_threads(census);
  add_cache(census);

  CLI::App* verify = app.add_subcommand("verify", "cross-check against slow oracles");
  verify->add_option("--suite", o.suite, "quick|full")->check(CLI::IsMember({"quick", "full"}));
  add_threads(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solvable->parsed()) out << run_solvable(o).dump() << '\n';
    if (els_cmd->parsed()) out << run_els(o).dump() << '\n';
    if (dp->parsed()) out << run_delta_p(o).dump() << '\n';
    if (al->parsed()) out << run_alpha(o).dump() << '\n';
    if (cn->parsed()) out << run_constant(o).dump() << '\n';
    if (census->parsed()) run_census(o, out);
    if (verify->parsed()) return run_verify(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (pass --force to run anyway)\n";
    return kExitUsage;
  } catch (const CheckpointError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace fermat_els::cli
