// Command-line front end: inspect group geometry, validate cocycle rule
// files, run the rigidification pipeline, re-verify serialized results, and
// reproduce the two-ended counterexample.
//
// Exit codes: 0 verified, 1 mathematical failure or obstruction (witnesses
// printed), 2 usage or input error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccr/errors.hpp"
#include "ccr/io.hpp"
#include "ccr/rigidity.hpp"

namespace {

using namespace ccr;

std::string config_str(const Configuration& x, CayleyExplorer& ex) {
  std::vector<std::pair<std::uint32_t, int>> items;
  for (const auto& [site, sym] : x.overrides()) items.emplace_back(ex.id_of(site), sym);
  std::sort(items.begin(), items.end());
  std::string out = "default " + x.alphabet().symbol(x.default_symbol()) + "; sites:";
  if (items.empty()) out += " (none)";
  for (const auto& [id, sym] : items) {
    out += " " + ex.word_label(ex.element_at(id)) + ":" + x.alphabet().symbol(sym);
  }
  return out;
}

void print_witness(const ObstructionWitness& w, const LocalCocycle& c) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& H = *c.target();
  std::cout << "obstruction: " << to_string(w.kind) << "\n";
  std::cout << "  x: " << config_str(w.x, ex) << "\n";
  if (w.y) std::cout << "  y: " << config_str(*w.y, ex) << "\n";
  if (w.g1 && w.v1) {
    std::cout << "  candidate " << ex.word_label(*w.g1) << " gives " << H.label(*w.v1) << "\n";
  }
  if (w.g2 && w.v2) {
    std::cout << "  candidate " << ex.word_label(*w.g2) << " gives " << H.label(*w.v2) << "\n";
  }
  if (w.radius >= 0) {
    std::cout << "  no connecting path outside B(" << w.radius << ") within B(" << w.cutoff
              << ")\n";
  }
}

void print_identity_failures(const CocycleReport& report, const LocalCocycle& c,
                             std::size_t limit = 10) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& H = *c.target();
  std::size_t shown = 0;
  for (const CocycleFailure& f : report.failures) {
    if (shown++ == limit) break;
    std::cout << "witness: g=" << ex.word_label(f.g) << " h=" << ex.word_label(f.h)
              << " left=" << H.label(f.left) << " right=" << H.label(f.right) << "\n";
    std::cout << "  window: ";
    bool any = false;
    for (std::size_t i = 0; i < f.window.domain.size(); ++i) {
      if (f.window.values[i] == c.alphabet().zero_index()) continue;
      std::cout << ex.word_label(f.window.domain[i]) << ":"
                << c.alphabet().symbol(f.window.values[i]) << " ";
      any = true;
    }
    std::cout << (any ? "" : "(all 0)") << "\n";
  }
}

struct CommonOpts {
  int max_radius = kDefaultMaxRadius;
  int threads = 1;
};

int run_group_info(const std::string& spec, int r, int r_max, const CommonOpts& common) {
  const GroupPtr G = parse_group(spec);
  CayleyExplorer ex(G, common.max_radius);
  std::cout << "group: " << G->spec() << "\n";
  std::cout << "generators:";
  for (int i = 0; i < G->generator_count(); ++i) {
    std::cout << " " << G->generator_name(i) << "="
              << G->label(G->generators()[static_cast<std::size_t>(i)]);
  }
  std::cout << "\n";
  const int top = r_max > 0 ? r_max : 2 * r + 4;
  std::cout << "sphere sizes r=0.." << top << ":";
  for (int k = 0; k <= top; ++k) {
    const std::size_t size = ex.sphere(k).size();
    std::cout << " " << size;
    if (ex.exhausted() && size == 0) {
      std::cout << " (group exhausted)";
      break;
    }
  }
  std::cout << "\n";
  for (int k = 1; k <= r; ++k) {
    const int cutoff = r_max > 0 ? r_max : 2 * k + 4;
    const EndsReport rep = ex.component_report(k, cutoff);
    std::cout << "r=" << k << ": unbounded components: " << rep.unbounded_components
              << ", bounded: " << rep.bounded_components << ", N(" << k << ")=" << rep.n_of_r;
    if (rep.cutoff_limited) {
      std::cout << " [cutoff-limited at R_max=" << cutoff << "]";
    } else {
      std::cout << " [exact, R_max=" << cutoff << "]";
    }
    std::cout << "\n";
  }
  return 0;
}

int run_verify(const std::string& rules_path, int r_check, int samples, std::uint64_t seed,
               bool exhaustive, const CommonOpts& common) {
  const LocalCocycle c = load_cocycle(rules_path, {common.max_radius, kDefaultLineHorizon});
  std::cout << "rules: " << rules_path << "\n";
  std::cout << "group: " << c.group().spec() << ", target: " << c.target()->spec()
            << ", window: " << c.window_radius() << "\n";
  IdentityCheckOptions opts;
  opts.samples_per_pair = samples;
  opts.seed = seed;
  opts.threads = common.threads;
  if (exhaustive) opts.exhaustive = true;
  const CocycleReport report = check_identity(c, r_check, opts);
  std::cout << "identity check: r_check=" << r_check
            << ", mode=" << (report.exhaustive ? "exhaustive" : "sampled")
            << ", samples-per-pair=" << samples << ", seed=" << seed << "\n";
  std::cout << "checked " << report.checked << " triples, failures: " << report.failure_count
            << "\n";
  if (report.failure_count > 0) {
    print_identity_failures(report, c);
    return 1;
  }
  std::cout << "ok\n";
  return 0;
}

int run_rigidify(const std::string& rules_path, const std::string& output, RigidifyOptions opts,
                 const CommonOpts& common) {
  const LocalCocycle c = load_cocycle(rules_path, {common.max_radius, kDefaultLineHorizon});
  std::cout << "rules: " << rules_path << "\n";
  std::cout << "group: " << c.group().spec() << ", target: " << c.target()->spec()
            << ", window: " << c.window_radius() << "\n";

  IdentityCheckOptions gate;
  gate.samples_per_pair = opts.identity_samples;
  gate.seed = opts.seed;
  gate.threads = opts.threads;
  const CocycleReport identity = check_identity(c, opts.r_check, gate);
  std::cout << "identity gate: r_check=" << opts.r_check << ", checked " << identity.checked
            << ", failures: " << identity.failure_count << "\n";
  if (identity.failure_count > 0) {
    print_identity_failures(identity, c);
    return 1;
  }

  RigidifyOptions run = opts;
  run.r_check = 0;  // gate already ran
  RigidityResult result = rigidify(c, run);
  result.identity = identity;

  std::cout << "seed: " << opts.seed << "\n";
  std::cout << "N values:";
  for (const auto& [r, n] : result.n_values) std::cout << " N(" << r << ")=" << n;
  std::cout << "\n";
  std::cout << "phi entries: " << result.phi_entries.size() << "\n";
  std::cout << "independence sweep: " << result.independence.checked
            << " configurations, failures: " << result.independence.failure_count << "\n";
  std::cout << "transfer table: " << result.b_entries.size() << " entries ("
            << (result.b_complete ? "complete" : "partial") << ")\n";
  std::cout << "locality sweep: " << result.locality.checked
            << " pairs, failures: " << result.locality.failure_count << "\n";
  std::cout << "cohomology sweep: checked " << result.cohomology.checked
            << ", failures: " << result.cohomology.failure_count
            << ", samples=" << result.cohomology.samples << ", seed=" << result.cohomology.seed
            << ", mode=" << (result.cohomology.exhaustive ? "exhaustive" : "sampled") << "\n";
  if (!output.empty()) {
    save_result(result, c, output);
    std::cout << "result written: " << output << "\n";
  }
  if (result.obstruction) {
    print_witness(*result.obstruction, c);
    return 1;
  }
  std::cout << "no obstruction\n";
  return 0;
}

int run_check(const std::string& result_path, const std::string& rules_path, int samples,
              std::uint64_t seed, bool seed_given, int r, const CommonOpts& common) {
  const ResultDocument doc = load_result(result_path);
  const LocalCocycle c = load_cocycle(rules_path, {common.max_radius, kDefaultLineHorizon});
  if (doc.group != c.group().spec() || doc.target != c.target()->spec() ||
      doc.window != c.window_radius()) {
    throw ParseError("result document does not match the rule file (group/target/window)");
  }
  const GroupOracle& H = *c.target();
  CayleyExplorer& ex = c.explorer();

  std::uint64_t mismatches = 0;
  PhiMap phi;
  for (const auto& [word, label] : doc.phi) {
    const Element g = element_from_word_label(ex, word);
    const Element value = compute_phi(c, g);
    if (H.label(value) != label) {
      ++mismatches;
      std::cout << "phi mismatch at " << word << ": stored " << label << ", recomputed "
                << H.label(value) << "\n";
    }
    phi.emplace(g, value);
  }
  std::cout << "phi entries checked: " << doc.phi.size() << ", mismatches: " << mismatches << "\n";

  TransferFunction tf(c);
  std::uint64_t b_mismatches = 0;
  for (const auto& [names, label] : doc.b) {
    std::string key;
    for (char ch : names) {
      const int idx = c.alphabet().index_of(std::string(1, ch));
      if (idx < 0) throw ParseError(std::string("unknown symbol '") + ch + "' in b table");
      key.push_back(static_cast<char>(idx));
    }
    if (key.size() != tf.domain_sites().size()) {
      throw ParseError("b-table pattern \"" + names + "\" has the wrong number of sites");
    }
    const Element value = tf.value_for_key(key);
    if (H.label(value) != label) {
      ++b_mismatches;
      if (b_mismatches <= 10) {
        std::cout << "b mismatch at " << names << ": stored " << label << ", recomputed "
                  << H.label(value) << "\n";
      }
    }
  }
  std::cout << "b entries checked: " << doc.b.size() << ", mismatches: " << b_mismatches << "\n";

  SweepOptions sweep;
  sweep.samples = samples > 0 ? samples : static_cast<int>(doc.samples);
  sweep.seed = seed_given ? seed : doc.cohomology_seed;
  sweep.threads = common.threads;
  const int radius = r > 0 ? r : doc.cohomology_r;
  const CohomologyReport report = check_cohomology(c, phi, radius, sweep);
  std::cout << "cohomology sweep: checked " << report.checked
            << ", failures: " << report.failure_count << ", samples=" << report.samples
            << ", seed=" << report.seed << ", mode="
            << (report.exhaustive ? "exhaustive" : "sampled") << "\n";
  for (std::size_t i = 0; i < report.failures.size() && i < 10; ++i) {
    const CohomologyFailure& f = report.failures[i];
    std::cout << "witness: g=" << ex.word_label(f.g) << " left=" << H.label(f.left)
              << " right=" << H.label(f.right) << "\n";
  }
  if (mismatches + b_mismatches + report.failure_count > 0) return 1;
  std::cout << "ok\n";
  return 0;
}

int run_demo(const std::string& output, const CommonOpts& common) {
  // One rule on the two-ended integer line: the step weight reads the symbol
  // at the identity site. A valid cocycle, but its transfer value depends on
  // which end the base point escapes through.
  const GroupPtr G = parse_group("Z^1");
  const GroupPtr H = parse_group("Z^1");
  const Alphabet A({"0", "1"}, 0);
  auto explorer = std::make_shared<CayleyExplorer>(G, common.max_radius);
  GeneratorRule rule;
  rule.kind = GeneratorRule::Kind::table;
  rule.table.emplace(std::string(1, '\0'), Element{{0}});
  rule.table.emplace(std::string(1, '\1'), Element{{1}});
  const LocalCocycle c(explorer, H, A, 0, {rule});

  std::cout << "group: Z^1 (two ends), target: Z^1, window: 0\n";
  std::cout << "rule: c(a, x) counts the symbol at the identity site\n";

  const CocycleReport identity = check_identity(c, 3, {});
  std::cout << "identity check: checked " << identity.checked
            << ", failures: " << identity.failure_count << "\n";

  Configuration x = c.zero_configuration();
  x.set(G->identity(), 1);
  const Element right = element_from_word_label(*explorer, "aa");
  const Element left = element_from_word_label(*explorer, "AA");
  const auto pinned = check_independence(c, x, {right, left});
  if (pinned) {
    std::cout << "base-point comparison on x = {1:1}:\n";
    std::cout << "  candidate " << explorer->word_label(*pinned->g1) << " gives "
              << H->label(*pinned->v1) << "\n";
    std::cout << "  candidate " << explorer->word_label(*pinned->g2) << " gives "
              << H->label(*pinned->v2) << "\n";
  }

  RigidifyOptions opts;
  opts.r_check = 0;
  RigidityResult result = rigidify(c, opts);
  result.identity = identity;
  if (!output.empty()) {
    save_result(result, c, output);
    std::cout << "result written: " << output << "\n";
  }
  if (result.obstruction) {
    print_witness(*result.obstruction, c);
    std::cout << "the construction needs one end; the integer line has two\n";
    return 1;
  }
  std::cout << "unexpected: no obstruction found\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous cocycles over full shifts: verification and rigidification"};
  app.require_subcommand(1);
  app.fallthrough(true);

  CommonOpts common;
  app.add_option("--max-radius", common.max_radius, "exploration radius cap")
      ->envname("COCYCLE_MAX_RADIUS")
      ->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads for sweeps (affects wall time only)")
      ->capture_default_str();

  auto* info = app.add_subcommand("group-info", "Cayley geometry, ends estimates, N(r) table");
  std::string info_group;
  int info_r = 3, info_rmax = 0;
  info->add_option("--group", info_group, "group spec, e.g. \"Z^2\", \"F(2)\", \"Z^2 x C(2)\"")
      ->required();
  info->add_option("--r", info_r, "largest cut radius to report")->capture_default_str();
  info->add_option("--rmax", info_rmax, "exploration cutoff (default 2r+4 per row)");

  auto* verify = app.add_subcommand("verify-cocycle", "check the cocycle identity on a rule file");
  std::string verify_rules;
  int verify_r = 3, verify_samples = 10000;
  std::uint64_t verify_seed = 0;
  bool verify_exhaustive = false;
  verify->add_option("--rules", verify_rules, "rule file (.cocycle.json)")->required();
  verify->add_option("--r-check", verify_r, "identity radius")->capture_default_str();
  verify->add_option("--samples", verify_samples, "windows per (g,h) pair")->capture_default_str();
  verify->add_option("--seed", verify_seed, "sampling seed")->capture_default_str();
  verify->add_flag("--exhaustive", verify_exhaustive, "force exhaustive windows");

  auto* rig = app.add_subcommand("rigidify", "recover phi and the transfer table, with sweeps");
  std::string rig_rules, rig_output;
  RigidifyOptions rig_opts;
  rig->add_option("--rules", rig_rules, "rule file (.cocycle.json)")->required();
  rig->add_option("--output", rig_output, "write a result document (.result.json)");
  rig->add_option("--r-phi", rig_opts.r_phi, "phi table radius")->capture_default_str();
  rig->add_option("--r-check", rig_opts.r_check, "identity gate radius")->capture_default_str();
  rig->add_option("--identity-samples", rig_opts.identity_samples, "gate windows per pair")
      ->capture_default_str();
  rig->add_option("--r", rig_opts.cohomology_r, "cohomology sweep radius")->capture_default_str();
  rig->add_option("--samples", rig_opts.cohomology_samples, "cohomology sweep samples")
      ->capture_default_str();
  rig->add_option("--independence", rig_opts.independence_configs,
                  "random configurations for the base-point sweep")
      ->capture_default_str();
  rig->add_option("--locality", rig_opts.locality_pairs, "pairs for the locality sweep")
      ->capture_default_str();
  rig->add_option("--seed", rig_opts.seed, "sweep seed")->capture_default_str();
  bool rig_exhaustive = false;
  rig->add_flag("--exhaustive", rig_exhaustive, "force exhaustive cohomology windows");

  auto* check = app.add_subcommand("check-cohomology",
                                   "re-verify a result document against its rule file");
  std::string check_result, check_rules;
  int check_samples = 0, check_r = 0;
  std::uint64_t check_seed = 0;
  check->add_option("--result", check_result, "result document (.result.json)")->required();
  check->add_option("--rules", check_rules, "rule file (.cocycle.json)")->required();
  check->add_option("--samples", check_samples, "sweep samples (default: from the document)");
  auto* seed_opt = check->add_option("--seed", check_seed, "sweep seed (default: from the document)");
  check->add_option("--r", check_r, "sweep radius (default: from the document)");

  auto* demo = app.add_subcommand("demo-counterexample",
                                  "reproduce the two-ended obstruction on the integer line");
  std::string demo_output;
  demo->add_option("--output", demo_output, "write the result document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) return run_group_info(info_group, info_r, info_rmax, common);
    if (*verify) {
      return run_verify(verify_rules, verify_r, verify_samples, verify_seed, verify_exhaustive,
                        common);
    }
    if (*rig) {
      rig_opts.threads = common.threads;
      if (rig_exhaustive) rig_opts.exhaustive = true;
      return run_rigidify(rig_rules, rig_output, rig_opts, common);
    }
    if (*check) {
      return run_check(check_result, check_rules, check_samples, check_seed, seed_opt->count() > 0,
                       check_r, common);
    }
    if (*demo) return run_demo(demo_output, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
