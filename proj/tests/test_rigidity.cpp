#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccr/errors.hpp"
#include "ccr/rigidity.hpp"
#include "support.hpp"

using namespace ccr;
using test::elem;

namespace {

const Alphabet kBinary({"0", "1"}, 0);

LocalCocycle integer_site_counter() {
  auto explorer = std::make_shared<CayleyExplorer>(make_lattice_group(1));
  GeneratorRule rule;
  rule.kind = GeneratorRule::Kind::table;
  rule.table.emplace(std::string(1, '\0'), Element{{0}});
  rule.table.emplace(std::string(1, '\1'), Element{{1}});
  return LocalCocycle(explorer, make_lattice_group(1), kBinary, 0, {rule});
}

RigidifyOptions fast_options() {
  RigidifyOptions opts;
  opts.identity_samples = 60;
  opts.cohomology_samples = 300;
  opts.independence_configs = 6;
  opts.locality_pairs = 20;
  return opts;
}

}  // namespace

TEST_CASE("phi at the identity and for homomorphism rules") {
  const auto s12 = *make_symmetric_group(3)->parse_label("(1 2)");
  auto explorer = std::make_shared<CayleyExplorer>(make_lattice_group(2));
  const LocalCocycle hom =
      make_hom_cocycle(explorer, make_symmetric_group(3), kBinary, {s12, s12});
  CHECK(compute_phi(hom, explorer->group().identity()) == hom.target()->identity());
  // phi equals the generator-word product, exhaustively on B(4).
  const GroupOracle& H = *hom.target();
  for (const Element& g : explorer->ball(4)) {
    Element expected = H.identity();
    for (int slot : explorer->geodesic_word(g)) {
      const int pair = explorer->group().pair_rank(slot);
      Element factor = pair == 0 ? s12 : s12;
      if (!explorer->group().is_positive_generator(slot)) factor = H.inverse(factor);
      expected = H.multiply(expected, factor);
    }
    CHECK(compute_phi(hom, g) == expected);
  }
}

TEST_CASE("recovered phi is the transfer-conjugated input") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const test::TwistedFixture fx =
        test::make_twisted_fixture(make_lattice_group(2), make_symmetric_group(3), 0, seed);
    const LocalCocycle c = test::build_twisted(fx);
    const LocalCocycle hom = make_hom_cocycle(fx.explorer, fx.target, fx.alphabet, fx.phi0);
    const GroupOracle& H = *c.target();
    for (const Element& g : fx.explorer->ball(3)) {
      const Element expected =
          H.multiply(fx.h0, H.multiply(hom.evaluate(g, hom.zero_configuration()),
                                       H.inverse(fx.h0)));
      CHECK(compute_phi(c, g) == expected);
    }
  }
}

TEST_CASE("phi is a homomorphism for valid rules") {
  const test::TwistedFixture fx =
      test::make_twisted_fixture(make_lattice_group(2), make_symmetric_group(3), 0, 5);
  const HomReport report = check_phi_homomorphism(test::build_twisted(fx), 3);
  CHECK(report.checked == 25 * 25);
  CHECK(report.failures.empty());
}

TEST_CASE("base point selection") {
  const test::TwistedFixture fx =
      test::make_twisted_fixture(make_lattice_group(2), make_lattice_group(1), 0, 9);
  const LocalCocycle c = test::build_twisted(fx);  // window radius 1
  const Configuration zero = c.zero_configuration();
  // N(0 + 1) = 1 on the plane, so the base point is the first norm-2 element.
  CHECK(choose_gx(c, zero) == elem({2, 0}));

  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Configuration x = test::random_config(c, 2, rng.next());
    const int floor_norm =
        n_of(c.explorer(), support_norm(x, c.explorer()) + c.window_radius());
    CHECK(c.explorer().word_norm(choose_gx(c, x)) > floor_norm);
  }

  const LocalCocycle line = integer_site_counter();
  CHECK(choose_gx(line, line.zero_configuration()) == elem({1}));
}

TEST_CASE("transfer values recover the twist data") {
  const Element one{{1}};
  for (std::uint64_t seed : {4ull, 8ull}) {
    const test::TwistedFixture fx =
        test::make_twisted_fixture(make_lattice_group(2), make_symmetric_group(3), 0, seed);
    const LocalCocycle c = test::build_twisted(fx);
    const GroupOracle& H = *c.target();
    CHECK(compute_b(c, c.zero_configuration()) == H.identity());

    const std::vector<Element> inner = fx.explorer->ball(fx.rho);
    Rng rng(seed);
    for (int trial = 0; trial < 15; ++trial) {
      const Configuration x = test::random_config(c, 3, rng.next());
      const Element expected =
          H.multiply(fx.b0.at(restriction(x, inner).key()), H.inverse(fx.h0));
      CHECK(compute_b(c, x) == expected);
    }
  }

  // Homomorphism rules have trivial transfer everywhere.
  const auto u = one;
  auto explorer = std::make_shared<CayleyExplorer>(make_lattice_group(2));
  const LocalCocycle hom = make_hom_cocycle(explorer, make_lattice_group(1), kBinary, {u, u});
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const Configuration x = test::random_config(hom, 3, rng.next());
    CHECK(compute_b(hom, x) == hom.target()->identity());
  }
}

TEST_CASE("base-point independence holds on the plane and fails on the line") {
  SUBCASE("plane") {
    const test::TwistedFixture fx =
        test::make_twisted_fixture(make_lattice_group(2), make_symmetric_group(3), 0, 6);
    const LocalCocycle c = test::build_twisted(fx);
    CayleyExplorer& ex = c.explorer();
    Configuration x = c.zero_configuration();
    x.set(elem({1, 0}), 1);
    const int n = n_of(ex, support_norm(x, ex) + c.window_radius());
    std::vector<Element> candidates;
    for (const Element& g : ex.sphere(n + 1)) candidates.push_back(g);
    for (const Element& g : ex.sphere(n + 2)) candidates.push_back(g);
    REQUIRE(candidates.size() >= 10);
    CHECK_FALSE(check_independence(c, x, candidates).has_value());
    CHECK_FALSE(check_independence(c, x, {candidates.front()}).has_value());
    CHECK_THROWS_AS(check_independence(c, x, {ex.group().identity()}), PreconditionError);
  }

  SUBCASE("line, with the pinned base points") {
    const LocalCocycle c = integer_site_counter();
    Configuration x = c.zero_configuration();
    x.set(elem({0}), 1);
    const auto witness = check_independence(c, x, {elem({2}), elem({-2})});
    REQUIRE(witness.has_value());
    CHECK(witness->kind == ObstructionKind::independence_failure);
    CHECK(*witness->v1 == Element{{-1}});  // from +2: the step weights see the site
    CHECK(*witness->v2 == Element{{0}});   // from -2: they never do
    CHECK(replay_witness(c, *witness));
  }
}

TEST_CASE("transfer locality holds on the plane and fails on the line") {
  SUBCASE("plane") {
    const test::TwistedFixture fx =
        test::make_twisted_fixture(make_lattice_group(2), make_symmetric_group(3), 0, 14);
    const LocalCocycle c = test::build_twisted(fx);
    CayleyExplorer& ex = c.explorer();
    const int shell = 3 * c.window_radius();
    Rng rng(140);
    for (int trial = 0; trial < 25; ++trial) {
      Configuration x = test::random_config(c, shell + 2, rng.next());
      Configuration y = x;
      for (const Element& site : ex.sphere(shell + 1)) {
        y.set(site, static_cast<int>(rng.below(2)));
      }
      CHECK_FALSE(check_locality(c, x, y).has_value());
    }
    const Configuration x = test::random_config(c, 2, 555);
    CHECK_FALSE(check_locality(c, x, x).has_value());
    Configuration inside = x;
    inside.set(ex.group().identity(), 1 - x.at(ex.group().identity()));
    CHECK_THROWS_AS(check_locality(c, x, inside), PreconditionError);
  }

  SUBCASE("line") {
    const LocalCocycle c = integer_site_counter();
    const Configuration x = c.zero_configuration();
    Configuration y = x;
    y.set(elem({-5}), 1);  // the canonical base point escapes right; it reads the left tail
    const auto witness = check_locality(c, x, y);
    REQUIRE(witness.has_value());
    CHECK(witness->kind == ObstructionKind::locality_failure);
    CHECK(replay_witness(c, *witness));
  }
}

TEST_CASE("avoiding paths exist on the plane, not on the line") {
  const test::TwistedFixture fx =
      test::make_twisted_fixture(make_lattice_group(2), make_lattice_group(1), 0, 2);
  const LocalCocycle plane = test::build_twisted(fx);
  Configuration x = plane.zero_configuration();
  x.set(elem({1, 0}), 1);
  CHECK_FALSE(check_avoiding_path(plane, x, elem({3, 0}), elem({-3, 0}), 12).has_value());

  const LocalCocycle line = integer_site_counter();
  Configuration z = line.zero_configuration();
  z.set(elem({0}), 1);
  const auto witness = check_avoiding_path(line, z, elem({2}), elem({-2}), 12);
  REQUIRE(witness.has_value());
  CHECK(witness->kind == ObstructionKind::no_avoiding_path);
  CHECK(witness->radius == support_norm(z, line.explorer()) + line.window_radius());
  CHECK(replay_witness(line, *witness));
}

TEST_CASE("the extension table is exact where it is enumerable") {
  // Window 1 rules on the integer line: the table over B(3) is 128 entries.
  const test::TwistedFixture fx =
      test::make_twisted_fixture(make_lattice_group(1), make_symmetric_group(3), 0, 12);
  const LocalCocycle c = test::build_twisted(fx);
  const GroupOracle& H = *c.target();
  const auto table = build_b_table(c);
  CHECK(table.size() == 128);
  const std::vector<Element> inner = fx.explorer->ball(fx.rho);
  CHECK(table.at(std::string(7, '\0')) == H.identity());
  for (const auto& [key, value] : table) {
    // Entry = b0 at the inner restriction, conjugated by the zero-pattern value.
    const std::string inner_key = key.substr(0, inner.size());
    CHECK(value == H.multiply(fx.b0.at(inner_key), H.inverse(fx.h0)));
  }

  TransferFunction tf(c);
  Configuration far = c.zero_configuration();
  far.set(elem({9}), 1);
  CHECK(tf.value(far) == H.identity());  // restriction to B(3) is all zero
  CHECK(tf.observed().size() == 1);
}

TEST_CASE("the cohomology equation verifies against fresh transfer values") {
  const test::TwistedFixture fx =
      test::make_twisted_fixture(make_lattice_group(2), make_symmetric_group(3), 0, 20);
  const LocalCocycle c = test::build_twisted(fx);
  const PhiMap phi = build_phi_table(c, 3);
  SweepOptions opts;
  opts.samples = 400;
  opts.seed = 99;
  const CohomologyReport report = check_cohomology(c, phi, 3, opts);
  CHECK(report.checked == 400 * 25);
  CHECK(report.failure_count == 0);

  SweepOptions threaded = opts;
  threaded.threads = 3;
  const CohomologyReport again = check_cohomology(c, phi, 3, threaded);
  CHECK(again.checked == report.checked);
  CHECK(again.failure_count == 0);
}

TEST_CASE("the cohomology sweep rejects the line rule") {
  const LocalCocycle c = integer_site_counter();
  const PhiMap phi = build_phi_table(c, 4);
  SweepOptions opts;
  opts.samples = 200;
  const CohomologyReport report = check_cohomology(c, phi, 4, opts);
  CHECK(report.failure_count > 0);
}

TEST_CASE("splicing halves of the plane along the canonical line") {
  CayleyExplorer ex(make_lattice_group(2), 32);
  const GroupPtr G = ex.group_ptr();
  const GroupPath line = ex.biinfinite_segment(4);
  Configuration x = Configuration::zeros(G, kBinary);
  x.set(elem({2, 0}), 1);  // on the positive half's neighborhood
  Configuration y = Configuration::zeros(G, kBinary);
  y.set(elem({0, 2}), 1);  // on the negative half's neighborhood
  const Configuration z = splice_configurations(ex, line, 1, x, y);
  CHECK(z.at(elem({2, 0})) == 1);
  CHECK(z.at(elem({0, 2})) == 1);
  CHECK(z.at(elem({-3, -3})) == 0);

  // Disagreement on the overlap (near the center) is a contract violation.
  Configuration x2 = x;
  x2.set(ex.group().identity(), 1);
  CHECK_THROWS_AS(splice_configurations(ex, line, 1, x2, y), PreconditionError);
}

TEST_CASE("rigidify on twisted plane rules: no obstruction, exact recovery") {
  const test::TwistedFixture fx =
      test::make_twisted_fixture(make_lattice_group(2), make_symmetric_group(3), 0, 33);
  const LocalCocycle c = test::build_twisted(fx);
  const LocalCocycle hom = make_hom_cocycle(fx.explorer, fx.target, fx.alphabet, fx.phi0);
  const RigidityResult result = rigidify(c, fast_options());
  CHECK(result.ok());
  CHECK(result.identity.valid());
  CHECK(result.cohomology.failure_count == 0);
  CHECK(result.independence.failure_count == 0);
  CHECK(result.locality.failure_count == 0);
  const GroupOracle& H = *c.target();
  for (const auto& [g, value] : result.phi_entries) {
    CHECK(value == H.multiply(fx.h0, H.multiply(hom.evaluate(g, hom.zero_configuration()),
                                                H.inverse(fx.h0))));
  }
  CHECK(result.b_entries.at(std::string(result.b_entries.begin()->first.size(), '\0')) ==
        H.identity());
  CHECK(result.n_values.at(1) == 1);
}

TEST_CASE("rigidify on homomorphism rules: constant transfer table") {
  auto explorer = std::make_shared<CayleyExplorer>(make_lattice_group(2));
  const GroupPtr H = make_symmetric_group(3);
  const auto s12 = *H->parse_label("(1 2)");
  const LocalCocycle hom = make_hom_cocycle(explorer, H, kBinary, {s12, s12});
  const RigidityResult result = rigidify(hom, fast_options());
  CHECK(result.ok());
  CHECK(result.b_complete);  // window 0: two patterns
  for (const auto& [key, value] : result.b_entries) {
    CHECK(value == H->identity());
  }
  for (const auto& [g, value] : result.phi_entries) {
    CHECK(value == compute_phi(hom, g));
  }
}

TEST_CASE("rigidify on the line rule emits a replayable independence witness") {
  const LocalCocycle c = integer_site_counter();
  const RigidityResult result = rigidify(c, fast_options());
  REQUIRE(result.obstruction.has_value());
  CHECK(result.obstruction->kind == ObstructionKind::independence_failure);
  CHECK(replay_witness(c, *result.obstruction));
  CHECK(result.cohomology.failure_count > 0);
  // phi is trivial here: every step weight vanishes on the zero configuration.
  for (const auto& [g, value] : result.phi_entries) {
    CHECK(value == c.target()->identity());
  }
}

TEST_CASE("rigidify is deterministic for a fixed seed") {
  const test::TwistedFixture fx =
      test::make_twisted_fixture(make_lattice_group(2), make_lattice_group(1), 0, 44);
  const LocalCocycle c = test::build_twisted(fx);
  RigidifyOptions opts = fast_options();
  opts.seed = 7;
  const RigidityResult a = rigidify(c, opts);
  opts.threads = 3;
  const RigidityResult b = rigidify(c, opts);
  CHECK(a.ok() == b.ok());
  CHECK(a.cohomology.checked == b.cohomology.checked);
  CHECK(a.b_entries == b.b_entries);
  CHECK(a.phi_entries == b.phi_entries);
}
