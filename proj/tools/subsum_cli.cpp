// Command-line front end: gen, solve, tester build/query, experiment, verify.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subsum/subsum.hpp"

namespace {

using namespace subsum;

constexpr int kOk = 0;
constexpr int kNone = 1;
constexpr int kUsage = 2;
constexpr int kInvariant = 3;

std::string bits_of(const Indicator& e) {
  std::string s;
  for (int x : e) s += x ? '1' : '0';
  return s;
}

struct ParamOpts {
  std::string delta = "99/100";
  std::string mu = "1/2";

  void attach(CLI::App* app) {
    app->add_option("--delta", delta, "LLL delta as P/Q")->capture_default_str();
    app->add_option("--mu", mu, "size-reduction bound as P/Q")->capture_default_str();
  }
  ReductionParams get() const {
    return ReductionParams(parse_rational(delta), parse_rational(mu));
  }
};

struct PrimeOpts {
  std::optional<unsigned long> bits;
  std::optional<std::string> scale;

  void attach(CLI::App* app) {
    auto* b = app->add_option("--prime-bits", bits,
                              "use the first prime >= 2^(B-1)");
    auto* s = app->add_option("--prime-scale", scale,
                              "constant factor C in the prime size, as P/Q");
    b->excludes(s);
  }
  PrimeSizing get() const {
    PrimeSizing ps;
    ps.bits = bits;
    if (scale) {
      ps.scale = parse_rational(*scale);
      if (ps.scale <= 0) throw UsageError("--prime-scale must be positive");
    }
    return ps;
  }
};

SubsetSumInstance load_instance(const std::string& path) {
  SubsetSumInstance inst = instance_from_json(read_json_file(path));
  const Diagnostics d = verify_instance(inst);
  if (!d.ok()) throw UsageError(path + ": instance fails its invariants (run verify)");
  return inst;
}

Integer pick_target(const std::optional<std::string>& text,
                    const SubsetSumInstance& inst) {
  if (text) return parse_integer(*text);
  if (inst.planted) return inst.planted->T;
  throw UsageError("no --target given and the instance has no planted target");
}

void print_diagnostics(const Diagnostics& d, std::ostream& os) {
  for (const auto& c : d.checks) {
    os << (c.ok ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
}

// ---------------------------------------------------------------------------

struct GenCmd {
  std::size_t n = 0;
  std::string policy = "modular";
  std::uint64_t seed = 0;
  std::optional<std::size_t> plant_weight;
  bool no_plant = false;
  std::string out;
  ParamOpts params;
  PrimeOpts prime;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("gen", "generate a random instance");
    c->add_option("--n", n, "number of weights")->required();
    c->add_option("--policy", policy, "bits:B, modular, classic or truncated")
        ->capture_default_str();
    c->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    auto* w = c->add_option("--plant-weight", plant_weight,
                            "weight of the planted solution (default n/2)");
    c->add_flag("--no-plant", no_plant, "do not plant a solution")->excludes(w);
    c->add_option("--out", out, "output JSON file")->required();
    params.attach(c);
    prime.attach(c);
    c->callback([this] { code = run(); });
  }

  int run() {
    RangePolicy pol = parse_policy(policy, params.get());
    pol.prime_sizing = prime.get();
    std::optional<PlantSpec> plant;
    if (!no_plant) plant = PlantSpec{plant_weight};
    const SubsetSumInstance inst = gen_instance(n, pol, seed, plant);
    write_json_file(out, instance_to_json(inst));
    std::cout << "n=" << inst.n << " bits=" << bit_length(inst.R)
              << " density=" << density_value(inst);
    if (auto p = pol.prime(n)) std::cout << " p_bits=" << bit_length(*p);
    if (inst.planted) std::cout << " T=" << inst.planted->T;
    std::cout << " -> " << out << "\n";
    return kOk;
  }
  int code = kOk;
};

struct SolveCmd {
  std::string method;
  std::string instance;
  std::optional<std::string> target;
  ParamOpts params;
  PrimeOpts prime;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("solve", "solve one target");
    c->add_option("--method", method, "classic, modular, truncated or oracle")
        ->required()
        ->check(CLI::IsMember({"classic", "modular", "truncated", "oracle"}));
    c->add_option("--instance", instance, "instance JSON")->required();
    c->add_option("--target", target, "decimal target (default: planted T)");
    params.attach(c);
    prime.attach(c);
    c->callback([this] { code = run(); });
  }

  int run() {
    const SubsetSumInstance inst = load_instance(instance);
    const Integer t = pick_target(target, inst);
    const ReductionParams rp = params.get();
    std::optional<Indicator> e;
    if (method == "oracle") {
      e = brute_force_oracle(inst.a, t);
    } else if (method == "classic") {
      e = solve_classic(inst.a, t, LoConfig::automatic(inst.n, rp)).solution;
    } else if (method == "truncated") {
      e = solve_truncated(inst.a, t, LoConfig::automatic(inst.n, rp)).solution;
    } else {
      const Integer p = select_prime(inst.n, rp, prime.get());
      const ModularTester tester = build_tester(inst.a, p, rp);
      if (!tester.usable()) {
        std::cerr << "tester certificate failed for p = " << p << "\n";
        return kInvariant;
      }
      e = tester.query(t).witness;
    }
    if (!e) {
      std::cout << "none\n";
      return kNone;
    }
    if (!is_witness(inst.a, *e, t)) {
      std::cerr << "internal error: unverified witness\n";
      return kInvariant;
    }
    std::cout << "solution " << bits_of(*e) << "\n";
    return kOk;
  }
  int code = kOk;
};

struct TesterBuildCmd {
  std::string instance;
  std::string out;
  ParamOpts params;
  PrimeOpts prime;

  void attach(CLI::App* parent) {
    auto* c = parent->add_subcommand("build", "reduce once and store the tester");
    c->add_option("--instance", instance, "instance JSON")->required();
    c->add_option("--out", out, "output tester JSON")->required();
    params.attach(c);
    prime.attach(c);
    c->callback([this] { code = run(); });
  }

  int run() {
    const SubsetSumInstance inst = load_instance(instance);
    const ReductionParams rp = params.get();
    const Integer p = select_prime(inst.n, rp, prime.get());
    const TesterBuild b = build_tester_detailed(inst.a, p, rp);
    write_json_file(out, tester_to_json(b.tester));
    const auto& cert = b.tester.cert();
    std::cout << "p=" << p << " (" << bit_length(p) << " bits)"
              << " swaps=" << b.reduction.stats.swaps << " -> " << out << "\n";
    if (b.tester.usable()) {
      std::cout << "certificate ok\n";
      return kOk;
    }
    for (std::size_t i = 0; i < cert.l1_ok.size(); ++i) {
      if (!cert.l1_ok[i]) {
        std::cerr << "row " << i << ": ||.||_1 = " << cert.l1_norms[i]
                  << " >= p/2\n";
      }
      if (!cert.decode_ok[i]) std::cerr << "row " << i << ": decode failed\n";
    }
    if (!cert.full_rank) std::cerr << "M_p is singular\n";
    std::cerr << "certificate failed; tester written but unusable\n";
    return kNone;
  }
  int code = kOk;
};

struct TesterQueryCmd {
  std::string tester;
  std::vector<std::string> targets;

  void attach(CLI::App* parent) {
    auto* c = parent->add_subcommand("query", "decide targets with a stored tester");
    c->add_option("--tester", tester, "tester JSON")->required();
    c->add_option("--target", targets, "decimal target (repeatable)")
        ->required()
        ->take_all();
    c->callback([this] { code = run(); });
  }

  int run() {
    const ModularTester t = tester_from_record(
        tester_record_from_json(read_json_file(tester)));
    if (!t.usable()) {
      std::cerr << tester << ": certificate does not hold (run verify)\n";
      return kInvariant;
    }
    bool all = true;
    for (const auto& s : targets) {
      const Integer target = parse_integer(s);
      const QueryResult r = t.query(target);
      if (r.accepted()) {
        std::cout << target << " accept " << bits_of(*r.witness) << "\n";
      } else {
        std::cout << target << " reject\n";
        all = false;
      }
    }
    return all ? kOk : kNone;
  }
  int code = kOk;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct ExperimentCmd {
  std::string method;
  std::string n_list;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string checks;
  std::optional<std::string> policy;
  std::optional<std::size_t> plant_weight;
  std::optional<std::string> csv;
  unsigned threads = 1;
  bool timings = false;
  ParamOpts params;
  PrimeOpts prime;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("experiment", "seeded batch of trials");
    c->add_option("--method", method, "classic, modular or truncated")
        ->required()
        ->check(CLI::IsMember({"classic", "modular", "truncated"}));
    c->add_option("--n", n_list, "comma-separated dimensions")->required();
    c->add_option("--trials", trials, "trials per n")->capture_default_str();
    c->add_option("--seed", seed, "base seed")->capture_default_str();
    c->add_option("--checks", checks,
                  "comma list of gso-profile, babai-gap, spurious-count, "
                  "oracle-equivalence");
    c->add_option("--policy", policy, "range policy (default: the method's)");
    c->add_option("--plant-weight", plant_weight, "planted weight (default n/2)");
    c->add_option("--csv", csv, "CSV output file");
    c->add_option("--threads", threads, "worker threads")->capture_default_str();
    c->add_flag("--timings", timings, "include wall times in the CSV");
    params.attach(c);
    prime.attach(c);
    c->callback([this] { code = run(); });
  }

  int run() {
    ExperimentConfig cfg;
    cfg.method = parse_method(method);
    cfg.n_list.clear();
    for (const auto& s : split(n_list, ',')) {
      const Integer v = parse_integer(s);
      if (v < 1 || !v.fits_ulong_p()) throw UsageError("bad dimension '" + s + "'");
      cfg.n_list.push_back(v.get_ui());
    }
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.params = params.get();
    cfg.prime_sizing = prime.get();
    if (policy) cfg.policy = parse_policy(*policy, cfg.params);
    cfg.plant_weight = plant_weight;
    for (const auto& s : split(checks, ',')) cfg.checks.insert(parse_check(s));
    cfg.threads = threads;
    cfg.timings = timings;

    const auto recs = run_experiment(cfg);
    if (csv) write_text_file(*csv, to_csv(recs, cfg.timings));
    std::cout << format_summary(cfg.method, aggregate(recs));
    for (const auto& r : recs) {
      if (!r.error.empty()) {
        std::cerr << "n=" << r.n << " trial=" << r.trial << ": " << r.error << "\n";
      }
    }
    for (const auto& r : recs)
      if (!r.error.empty() || r.oracle_mismatches) return kInvariant;
    return kOk;
  }
  int code = kOk;
};

struct VerifyCmd {
  std::string file;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("verify", "re-check a stored instance or tester");
    c->add_option("--file", file, "instance or tester JSON")->required();
    c->callback([this] { code = run(); });
  }

  int run() {
    const Json j = read_json_file(file);
    Diagnostics d;
    if (j.is_object() && j.contains("format")) {
      std::cout << file << ": tester\n";
      d = verify_tester(tester_record_from_json(j));
    } else {
      std::cout << file << ": instance\n";
      d = verify_instance(instance_from_json(j));
    }
    print_diagnostics(d, std::cout);
    return d.ok() ? kOk : kInvariant;
  }
  int code = kOk;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice subset-sum toolkit"};
  app.require_subcommand(1);
  GenCmd gen;
  SolveCmd solve;
  TesterBuildCmd tbuild;
  TesterQueryCmd tquery;
  ExperimentCmd exp;
  VerifyCmd verify;
  gen.attach(app);
  solve.attach(app);
  auto* tester = app.add_subcommand("tester", "build or query a modular tester");
  tester->require_subcommand(1);
  tbuild.attach(tester);
  tquery.attach(tester);
  exp.attach(app);
  verify.attach(app);

  int code = kOk;
  try {
    app.parse(argc, argv);
    for (int c : {gen.code, solve.code, tbuild.code, tquery.code, exp.code,
                  verify.code})
      if (c != kOk) code = c;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  } catch (const DecodeFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
  return code;
}
