#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/instance_gen.hpp"
#include "subsum/lll.hpp"
#include "subsum/lo_classic.hpp"
#include "subsum/modular_tester.hpp"
#include "subsum/oracle.hpp"
#include "subsum/subset_sum.hpp"
#include "subsum/truncated_lo.hpp"

namespace subsum {

enum class Method { classic, modular, truncated };
enum class Check { gso_profile, babai_gap, spurious_count, oracle_equivalence };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::classic: return "classic";
    case Method::modular: return "modular";
    case Method::truncated: return "truncated";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "classic") return Method::classic;
  if (s == "modular") return Method::modular;
  if (s == "truncated") return Method::truncated;
  throw ParseError("unknown method '" + std::string(s) +
                   "' (expected classic, modular or truncated)");
}

inline std::string check_name(Check c) {
  switch (c) {
    case Check::gso_profile: return "gso-profile";
    case Check::babai_gap: return "babai-gap";
    case Check::spurious_count: return "spurious-count";
    case Check::oracle_equivalence: return "oracle-equivalence";
  }
  return "?";
}

inline Check parse_check(std::string_view s) {
  for (Check c : {Check::gso_profile, Check::babai_gap, Check::spurious_count,
                  Check::oracle_equivalence})
    if (s == check_name(c)) return c;
  throw ParseError("unknown check '" + std::string(s) + "'");
}

inline RangePolicy::Kind default_policy_kind(Method m) {
  switch (m) {
    case Method::classic: return RangePolicy::Kind::classic_lo;
    case Method::modular: return RangePolicy::Kind::modular_range;
    case Method::truncated: return RangePolicy::Kind::truncated_lo;
  }
  return RangePolicy::Kind::modular_range;
}

struct ExperimentConfig {
  Method method = Method::modular;
  std::vector<std::size_t> n_list{8};
  std::size_t trials = 1;
  std::optional<RangePolicy> policy;  // default: the method's own policy
  ReductionParams params;
  PrimeSizing prime_sizing;           // modular only
  std::optional<std::size_t> plant_weight;
  std::uint64_t seed = 0;
  std::set<Check> checks;
  unsigned threads = 1;
  bool timings = false;               // wall times in the CSV

  void validate() const {
    if (trials < 1) throw UsageError("trials must be >= 1");
    if (n_list.empty()) throw UsageError("no dimensions given");
    for (std::size_t n : n_list) {
      if (n < 1) throw UsageError("n must be >= 1");
      if (checks.count(Check::oracle_equivalence) &&
          n > kMeetInTheMiddleLimit) {
        throw UsageError("oracle-equivalence needs n <= " +
                         std::to_string(kMeetInTheMiddleLimit));
      }
      if (method == Method::modular && n < 2) {
        throw UsageError("modular method needs n >= 2");
      }
    }
  }

  RangePolicy resolved_policy() const {
    RangePolicy p = policy.value_or(
        RangePolicy::of_kind(default_policy_kind(method), params));
    p.params = params;
    p.prime_sizing = prime_sizing;
    return p;
  }
};

struct TrialRecord {
  Method method = Method::modular;
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  unsigned long bits = 0;
  bool build_success = false;
  bool recovered = false;  // a witness was found and re-verified
  std::optional<bool> gso_profile_pass;
  std::optional<bool> babai_gap_pass;
  std::optional<std::size_t> spurious_count;
  std::size_t oracle_checked = 0;
  std::size_t oracle_mismatches = 0;
  std::vector<long> l1_margins;  // bits(p) - bits(2 ||row||_1), modular only
  double reduce_ms = 0;
  double build_ms = 0;
  double query_us = 0;
  std::string error;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Targets for oracle comparison: every subset sum and its successor for
// n <= 12, otherwise 32 random subsets and their successors.
inline std::vector<Integer> oracle_targets(const SubsetSumInstance& inst,
                                           Rng& rng) {
  std::vector<Integer> out;
  if (inst.n <= 12) {
    for (const auto& s : subset_sum_table(inst.a)) {
      out.push_back(s);
      out.push_back(s + 1);
    }
  } else {
    for (int k = 0; k < 32; ++k) {
      const Indicator e = random_indicator(
          rng, inst.n, static_cast<std::size_t>(rng.below(inst.n + 1)));
      const Integer s = subset_sum(inst.a, e);
      out.push_back(s);
      out.push_back(s + 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool oracle_feasible(const SubsetSumInstance& inst, const Integer& t,
                            const std::vector<Integer>* table) {
  if (table) return std::binary_search(table->begin(), table->end(), t);
  return brute_force_oracle(inst.a, t).has_value();
}

inline void run_trial(const ExperimentConfig& cfg, const RangePolicy& policy,
                      TrialRecord& rec) {
  const std::size_t n = rec.n;
  rec.bits = policy.resolve_bits(n);
  const SubsetSumInstance inst =
      gen_instance(n, policy, rec.seed, PlantSpec{cfg.plant_weight});
  const Integer& target = inst.planted->T;
  const bool want_oracle = cfg.checks.count(Check::oracle_equivalence) > 0;
  const LoConfig lo = LoConfig::automatic(n, cfg.params);

  switch (cfg.method) {
    case Method::classic: {
      const auto t0 = Clock::now();
      const ClassicOutcome out = solve_classic(inst.a, target, lo);
      rec.reduce_ms = ms_since(t0);
      rec.build_success = true;
      rec.recovered = out.solution && is_witness(inst.a, *out.solution, target);
      if (cfg.checks.count(Check::spurious_count))
        rec.spurious_count = out.spurious_count;
      if (want_oracle) {
        rec.oracle_checked = 1;
        rec.oracle_mismatches =
            rec.recovered && !brute_force_oracle(inst.a, target) ? 1 : 0;
      }
      break;
    }
    case Method::truncated: {
      const auto t0 = Clock::now();
      const TruncatedOutcome out = solve_truncated(inst.a, target, lo);
      rec.reduce_ms = ms_since(t0);
      rec.build_success = true;
      rec.recovered = out.solution && is_witness(inst.a, *out.solution, target);
      if (cfg.checks.count(Check::babai_gap) && out.gap)
        rec.babai_gap_pass = out.gap->all_ok();
      if (want_oracle) {
        rec.oracle_checked = 1;
        rec.oracle_mismatches =
            rec.recovered && !brute_force_oracle(inst.a, target) ? 1 : 0;
      }
      break;
    }
    case Method::modular: {
      const Integer p = policy.prime(n).value_or(
          select_prime(n, cfg.params, cfg.prime_sizing));
      const auto t0 = Clock::now();
      TesterBuild b = build_tester_detailed(inst.a, p, cfg.params);
      rec.build_ms = ms_since(t0);
      rec.reduce_ms = rec.build_ms;
      const ModularTester& tester = b.tester;
      rec.build_success = tester.usable();
      const long pbits = static_cast<long>(bit_length(p));
      for (const auto& l1 : tester.cert().l1_norms)
        rec.l1_margins.push_back(pbits -
                                 static_cast<long>(bit_length(Integer(2 * l1))));
      if (cfg.checks.count(Check::gso_profile)) {
        rec.gso_profile_pass =
            gso_profile(gram_schmidt(b.reduction.basis), cfg.params).holds();
      }
      if (!rec.build_success) break;
      const auto tq = Clock::now();
      const QueryResult q = tester.query(target);
      rec.query_us = ms_since(tq) * 1000.0;
      rec.recovered = q.accepted() && is_witness(inst.a, *q.witness, target);
      if (want_oracle) {
        Rng rng(derive_seed(rec.seed, 1));
        const auto targets = oracle_targets(inst, rng);
        std::vector<Integer> table;
        if (n <= 12) {
          table = subset_sum_table(inst.a);
          std::sort(table.begin(), table.end());
        }
        for (const auto& t : targets) {
          const QueryResult r = tester.query(t);
          const bool ok = r.accepted() ? is_witness(inst.a, *r.witness, t) : false;
          const bool truth = oracle_feasible(inst, t, n <= 12 ? &table : nullptr);
          ++rec.oracle_checked;
          if (ok != truth || r.accepted() != truth) ++rec.oracle_mismatches;
        }
      }
      break;
    }
  }
}

}  // namespace detail

// Runs every (n, trial) pair. Trial seeds are derive_seed(seed, n << 32 | t).
// Records come back sorted by (n, trial) whatever the thread count.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const RangePolicy policy = cfg.resolved_policy();
  std::vector<TrialRecord> recs;
  std::vector<std::size_t> ns = cfg.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (std::size_t n : ns)
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      TrialRecord r;
      r.method = cfg.method;
      r.n = n;
      r.trial = t;
      r.seed = derive_seed(cfg.seed, (static_cast<std::uint64_t>(n) << 32) | t);
      recs.push_back(std::move(r));
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= recs.size()) return;
      try {
        detail::run_trial(cfg, policy, recs[i]);
      } catch (const std::exception& e) {
        recs[i].error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1U, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return recs;
}

// ---------------------------------------------------------------------------
// Reporting

inline std::string csv_schema(bool timings) {
  std::string s =
      "# method:str,n:int,trial:int,seed:u64,bits:int,build_success:0/1,"
      "recovered:0/1,gso_profile_pass:0/1/empty,babai_gap_pass:0/1/empty,"
      "spurious_count:int/empty,oracle_checked:int,oracle_mismatches:int,"
      "l1_margins:bits;...,error:str";
  if (timings) s += ",reduce_ms:float,build_ms:float,query_us:float";
  return s + "\n";
}

inline std::string csv_header(bool timings) {
  std::string s =
      "method,n,trial,seed,bits,build_success,recovered,gso_profile_pass,"
      "babai_gap_pass,spurious_count,oracle_checked,oracle_mismatches,"
      "l1_margins,error";
  if (timings) s += ",reduce_ms,build_ms,query_us";
  return s + "\n";
}

namespace detail {

inline std::string opt_bool(const std::optional<bool>& b) {
  return b ? (*b ? "1" : "0") : "";
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_csv(const std::vector<TrialRecord>& recs, bool timings) {
  std::ostringstream os;
  os << csv_schema(timings) << csv_header(timings);
  for (const auto& r : recs) {
    os << method_name(r.method) << ',' << r.n << ',' << r.trial << ','
       << r.seed << ',' << r.bits << ',' << r.build_success << ','
       << r.recovered << ',' << detail::opt_bool(r.gso_profile_pass) << ','
       << detail::opt_bool(r.babai_gap_pass) << ','
       << (r.spurious_count ? std::to_string(*r.spurious_count) : "") << ','
       << r.oracle_checked << ',' << r.oracle_mismatches << ',';
    for (std::size_t i = 0; i < r.l1_margins.size(); ++i)
      os << (i ? ";" : "") << r.l1_margins[i];
    os << ',' << detail::csv_quote(r.error);
    if (timings) {
      os << std::fixed << std::setprecision(3) << ',' << r.reduce_ms << ','
         << r.build_ms << ',' << r.query_us << std::defaultfloat;
    }
    os << '\n';
  }
  return os.str();
}

struct Percentiles {
  double p50 = 0, p90 = 0, max = 0;
};

inline Percentiles percentiles(std::vector<double> xs) {
  Percentiles p;
  if (xs.empty()) return p;
  std::sort(xs.begin(), xs.end());
  auto at = [&xs](double q) {
    const auto idx = static_cast<std::size_t>(q * static_cast<double>(xs.size() - 1) + 0.5);
    return xs[std::min(idx, xs.size() - 1)];
  };
  p.p50 = at(0.5);
  p.p90 = at(0.9);
  p.max = xs.back();
  return p;
}

struct Aggregate {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t errors = 0;
  double build_success_rate = 0;
  double recovery_rate = 0;
  std::optional<double> gso_profile_rate;
  std::optional<double> babai_gap_rate;
  std::optional<double> mean_spurious;
  std::size_t oracle_checked = 0;
  std::size_t oracle_mismatches = 0;
  Percentiles reduce_ms, build_ms, query_us;
};

inline std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& recs) {
  std::map<std::size_t, std::vector<const TrialRecord*>> by_n;
  for (const auto& r : recs) by_n[r.n].push_back(&r);
  std::vector<Aggregate> out;
  for (const auto& [n, rs] : by_n) {
    Aggregate a;
    a.n = n;
    a.trials = rs.size();
    std::size_t built = 0, rec = 0, gso_n = 0, gso_ok = 0, gap_n = 0, gap_ok = 0,
                sp_n = 0, sp_sum = 0;
    std::vector<double> red, bld, qry;
    for (const TrialRecord* r : rs) {
      a.errors += !r->error.empty();
      built += r->build_success;
      rec += r->recovered;
      if (r->gso_profile_pass) { ++gso_n; gso_ok += *r->gso_profile_pass; }
      if (r->babai_gap_pass) { ++gap_n; gap_ok += *r->babai_gap_pass; }
      if (r->spurious_count) { ++sp_n; sp_sum += *r->spurious_count; }
      a.oracle_checked += r->oracle_checked;
      a.oracle_mismatches += r->oracle_mismatches;
      red.push_back(r->reduce_ms);
      if (r->build_ms > 0) bld.push_back(r->build_ms);
      if (r->query_us > 0) qry.push_back(r->query_us);
    }
    const double t = static_cast<double>(a.trials);
    a.build_success_rate = static_cast<double>(built) / t;
    a.recovery_rate = static_cast<double>(rec) / t;
    if (gso_n) a.gso_profile_rate = static_cast<double>(gso_ok) / static_cast<double>(gso_n);
    if (gap_n) a.babai_gap_rate = static_cast<double>(gap_ok) / static_cast<double>(gap_n);
    if (sp_n) a.mean_spurious = static_cast<double>(sp_sum) / static_cast<double>(sp_n);
    a.reduce_ms = percentiles(red);
    a.build_ms = percentiles(bld);
    a.query_us = percentiles(qry);
    out.push_back(a);
  }
  return out;
}

inline std::string format_summary(Method m, const std::vector<Aggregate>& aggs) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  for (const auto& a : aggs) {
    os << method_name(m) << " n=" << a.n << " trials=" << a.trials
       << " build=" << a.build_success_rate << " recovery=" << a.recovery_rate;
    if (a.gso_profile_rate) os << " gso_profile=" << *a.gso_profile_rate;
    if (a.babai_gap_rate) os << " babai_gap=" << *a.babai_gap_rate;
    if (a.mean_spurious) os << " mean_spurious=" << *a.mean_spurious;
    if (a.oracle_checked)
      os << " oracle=" << a.oracle_mismatches << "/" << a.oracle_checked
         << " mismatches";
    if (a.errors) os << " errors=" << a.errors;
    os << "\n  reduce_ms p50=" << a.reduce_ms.p50 << " p90=" << a.reduce_ms.p90
       << " max=" << a.reduce_ms.max;
    if (m == Method::modular)
      os << "  query_us p50=" << a.query_us.p50 << " p90=" << a.query_us.p90
         << " max=" << a.query_us.max;
    os << "\n";
  }
  return os.str();
}

}  // namespace subsum
