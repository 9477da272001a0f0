#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <sys/wait.h>

#include <json.hpp>

#include "ccr/errors.hpp"
#include "ccr/io.hpp"
#include "support.hpp"

using namespace ccr;
using test::elem;

namespace {

const std::string kFixtures = CCR_FIXTURES_DIR;
const std::string kScratch = CCR_BUILD_DIR;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CCR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) {
    result.out.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.code = WEXITSTATUS(status);
  return result;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("group spec grammar") {
  CHECK(parse_group("Z^2")->generator_count() == 4);
  CHECK(parse_group("Z^1")->spec() == "Z^1");
  CHECK(parse_group("F(2)")->generator_count() == 4);
  CHECK(parse_group("S(3)")->generator_count() == 2);
  const GroupPtr prod = parse_group("Z^2 x C(2)");
  CHECK(prod->generator_count() == 6);
  CHECK(prod->spec() == "Z^2 x C(2)");
  CHECK(prod->pair_count() == 3);

  CHECK_THROWS_AS(parse_group("Z"), ParseError);
  CHECK_THROWS_AS(parse_group("Q(2)"), ParseError);
  CHECK_THROWS_AS(parse_group("Z^2 x "), ParseError);
  CHECK_THROWS_AS(parse_group("Z^"), ParseError);
  try {
    parse_group("Z^2 x Q(1)");
  } catch (const ParseError& e) {
    CHECK(contains(e.what(), "position 6"));
  }
}

TEST_CASE("word labels resolve") {
  CayleyExplorer ex(make_lattice_group(2));
  CHECK(element_from_word_label(ex, "1") == ex.group().identity());
  CHECK(element_from_word_label(ex, "aab") == elem({2, 1}));
  CHECK_THROWS_AS(element_from_word_label(ex, "xq"), ParseError);
}

TEST_CASE("shipped fixtures regenerate byte-for-byte") {
  // The twisted fixture is make_twisted over rho=0 with b0(0)=2, b0(1)=-1
  // and phi0 = (1),(3); keep the file pinned to the constructor output.
  auto ex = std::make_shared<CayleyExplorer>(make_lattice_group(2));
  const GroupPtr H = make_lattice_group(1);
  std::unordered_map<std::string, Element> b0;
  b0.emplace(std::string(1, '\0'), Element{{2}});
  b0.emplace(std::string(1, '\1'), Element{{-1}});
  const Alphabet A({"0", "1"}, 0);
  const LocalCocycle c = make_twisted(ex, H, A, {Element{{1}}, Element{{3}}}, b0, 0);
  CHECK(serialize_cocycle(c) == read_file(kFixtures + "/twisted_z2_z.cocycle.json"));
}

TEST_CASE("rule documents round-trip") {
  for (const std::string name :
       {"hom_z2_s3", "twisted_z2_z", "counterexample_z", "counterexample_z_weighted"}) {
    CAPTURE(name);
    const std::string path = kFixtures + "/" + name + ".cocycle.json";
    const LocalCocycle c = load_cocycle(path);
    CHECK(serialize_cocycle(c) == read_file(path));
    // Serialization is deterministic.
    CHECK(serialize_cocycle(c) == serialize_cocycle(c));
  }
}

TEST_CASE("the weighted form agrees with its table twin") {
  const LocalCocycle table = load_cocycle(kFixtures + "/counterexample_z.cocycle.json");
  const LocalCocycle weighted = load_cocycle(kFixtures + "/counterexample_z_weighted.cocycle.json");
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration x = test::random_config(table, 4, rng.next());
    Configuration y = weighted.zero_configuration();
    for (const auto& [site, sym] : x.overrides()) y.set(site, sym);
    for (int g = -4; g <= 4; ++g) {
      CHECK(table.evaluate(elem({g}), x) == weighted.evaluate(elem({g}), y));
    }
  }
}

TEST_CASE("malformed documents are rejected with precise errors") {
  const std::string text = read_file(kFixtures + "/twisted_z2_z.cocycle.json");
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(text);

  SUBCASE("unknown version") {
    doc["format"] = "cocycle-rules/9";
    CHECK_THROWS_WITH_AS(parse_cocycle(doc.dump()),
                         doctest::Contains("unsupported document format"), ParseError);
  }
  SUBCASE("missing table entry names the first missing pattern") {
    doc["rules"]["a"]["table"].erase("00010");
    try {
      parse_cocycle(doc.dump());
      FAIL("expected a completeness error");
    } catch (const PreconditionError& e) {
      CHECK(contains(e.what(), "00010"));
    }
  }
  SUBCASE("unresolvable target label") {
    doc["rules"]["a"]["table"]["00000"] = "bogus";
    CHECK_THROWS_WITH_AS(parse_cocycle(doc.dump()), doctest::Contains("cannot resolve label"),
                         ParseError);
  }
  SUBCASE("missing generator rule") {
    doc["rules"].erase("b");
    CHECK_THROWS_WITH_AS(parse_cocycle(doc.dump()), doctest::Contains("missing rule"), ParseError);
  }
  SUBCASE("unknown rule key") {
    doc["rules"]["q"] = doc["rules"]["a"];
    CHECK_THROWS_AS(parse_cocycle(doc.dump()), ParseError);
  }
  SUBCASE("bad window pattern length") {
    auto table = doc["rules"]["a"]["table"];
    doc["rules"]["a"]["table"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.items()) doc["rules"]["a"]["table"][k + "0"] = v;
    CHECK_THROWS_AS(parse_cocycle(doc.dump()), ParseError);
  }
}

TEST_CASE("result documents round-trip and stay byte-stable") {
  const LocalCocycle c = load_cocycle(kFixtures + "/twisted_z2_z.cocycle.json");
  RigidifyOptions opts;
  opts.identity_samples = 40;
  opts.cohomology_samples = 200;
  opts.independence_configs = 4;
  opts.locality_pairs = 10;
  opts.seed = 5;
  const RigidityResult result = rigidify(c, opts);
  const std::string text = serialize_result(result, c);
  CHECK(text == serialize_result(result, c));

  const ResultDocument doc = parse_result(text);
  CHECK(doc.group == "Z^2");
  CHECK(doc.target == "Z^1");
  CHECK(doc.window == 1);
  CHECK(doc.seed == 5);
  CHECK(doc.samples == 200);
  CHECK(doc.phi.size() == result.phi_entries.size());
  CHECK(doc.b.size() == result.b_entries.size());
  CHECK_FALSE(doc.had_obstruction);
  CHECK(doc.n_values.at("1") == 1);
}

TEST_CASE("cli: group-info") {
  const CliResult z1 = run_cli("group-info --group Z^1 --r 2");
  CHECK(z1.code == 0);
  CHECK(contains(z1.out, "unbounded components: 2"));
  CHECK(contains(z1.out, "N(2)=2"));

  const CliResult z2 = run_cli("group-info --group Z^2 --r 3");
  CHECK(z2.code == 0);
  CHECK(contains(z2.out, "unbounded components: 1"));
  CHECK(contains(z2.out, "N(3)=3"));

  const CliResult f2 = run_cli("group-info --group \"F(2)\" --r 1");
  CHECK(f2.code == 0);
  CHECK(contains(f2.out, "unbounded components: 4"));

  CHECK(run_cli("group-info --group Q(7)").code == 2);
}

TEST_CASE("cli: verify-cocycle exit codes") {
  const std::string hom = kFixtures + "/hom_z2_s3.cocycle.json";
  const CliResult ok = run_cli("verify-cocycle --rules " + hom + " --samples 100");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "failures: 0"));

  const CliResult bad =
      run_cli("verify-cocycle --rules " + kFixtures + "/twisted_z2_z_corrupt.cocycle.json" +
              " --samples 100");
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "witness"));

  CHECK(run_cli("verify-cocycle --rules /nonexistent.cocycle.json").code == 2);
}

TEST_CASE("cli: rigidify and check-cohomology") {
  const std::string rules = kFixtures + "/twisted_z2_z.cocycle.json";
  const std::string out_path = kScratch + "/cli_twisted.result.json";
  const std::string flags =
      " --identity-samples 50 --samples 300 --independence 4 --locality 10 --seed 3";
  const CliResult rig =
      run_cli("rigidify --rules " + rules + " --output " + out_path + flags);
  CHECK(rig.code == 0);
  CHECK(contains(rig.out, "no obstruction"));

  const CliResult check = run_cli("check-cohomology --result " + out_path + " --rules " + rules);
  CHECK(check.code == 0);
  CHECK(contains(check.out, "mismatches: 0"));
  CHECK(contains(check.out, "ok"));

  // Hand-editing one transfer entry must be caught.
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(read_file(out_path));
  auto it = doc["b"].begin();
  ++it;
  it.value() = "(99)";
  const std::string tampered = kScratch + "/cli_tampered.result.json";
  write_file(tampered, doc.dump(2) + "\n");
  const CliResult caught = run_cli("check-cohomology --result " + tampered + " --rules " + rules);
  CHECK(caught.code == 1);
  CHECK(contains(caught.out, "b mismatch"));

  // Seeded reruns are byte-identical, including the result file.
  const std::string out2 = kScratch + "/cli_twisted2.result.json";
  const CliResult rig2 = run_cli("rigidify --rules " + rules + " --output " + out2 + flags);
  CHECK(rig2.out == rig.out.substr(0, rig.out.find("result written")) +
                        "result written: " + out2 + "\nno obstruction\n");
  CHECK(read_file(out_path) == read_file(out2));
}

TEST_CASE("cli: counterexample paths") {
  const CliResult rig = run_cli("rigidify --rules " + kFixtures +
                                "/counterexample_z.cocycle.json --samples 200 --locality 10");
  CHECK(rig.code == 1);
  CHECK(contains(rig.out, "obstruction: independence-failure"));

  const CliResult demo = run_cli("demo-counterexample");
  CHECK(demo.code == 1);
  CHECK(contains(demo.out, "candidate aa gives (-1)"));
  CHECK(contains(demo.out, "candidate AA gives (0)"));
  CHECK(contains(demo.out, "obstruction: independence-failure"));

  const CliResult weighted = run_cli("verify-cocycle --rules " + kFixtures +
                                     "/counterexample_z_weighted.cocycle.json");
  CHECK(weighted.code == 0);
}

TEST_CASE("cli: determinism of repeated runs") {
  const CliResult a = run_cli("group-info --group \"Z^2 x C(2)\" --r 2");
  const CliResult b = run_cli("group-info --group \"Z^2 x C(2)\" --r 2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const std::string verify_cmd = "verify-cocycle --rules " + kFixtures +
                                 "/twisted_z2_z.cocycle.json --samples 150 --seed 9";
  CHECK(run_cli(verify_cmd).out == run_cli(verify_cmd).out);
}
