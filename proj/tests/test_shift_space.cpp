#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccr/errors.hpp"
#include "ccr/shift.hpp"
#include "support.hpp"

using namespace ccr;
using test::elem;

namespace {

const Alphabet kBinary({"0", "1"}, 0);

Configuration single_site(GroupPtr G, Element site, int symbol) {
  Configuration x = Configuration::zeros(G, kBinary);
  x.set(std::move(site), symbol);
  return x;
}

}  // namespace

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet({}, 0), PreconditionError);
  CHECK_THROWS_AS(Alphabet({"0", "0"}, 0), PreconditionError);
  CHECK_THROWS_AS(Alphabet({"0", "1"}, 2), PreconditionError);
  const Alphabet a({"x", "y", "z"}, 1);
  CHECK(a.index_of("z") == 2);
  CHECK(a.index_of("w") == -1);
  CHECK(a.single_char_names());
}

TEST_CASE("shift relocates overrides") {
  const GroupPtr Z = make_lattice_group(1);
  const Configuration x = single_site(Z, elem({0}), 1);
  const Configuration y = shift(elem({1}), x);
  CHECK(y.at(elem({1})) == 1);
  CHECK(y.at(elem({0})) == 0);
  CHECK(y.overrides().size() == 1);
  CHECK(shift(Z->identity(), x) == x);
}

TEST_CASE("shift is an action") {
  const GroupPtr G = make_lattice_group(2);
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Configuration x = Configuration::zeros(G, kBinary);
    for (int i = 0; i < 4; ++i) {
      x.set(elem({static_cast<int>(rng.below(9)) - 4, static_cast<int>(rng.below(9)) - 4}), 1);
    }
    const Element g = elem({static_cast<int>(rng.below(5)) - 2, static_cast<int>(rng.below(5)) - 2});
    const Element h = elem({static_cast<int>(rng.below(5)) - 2, static_cast<int>(rng.below(5)) - 2});
    CHECK(shift(g, shift(h, x)) == shift(G->multiply(g, h), x));
  }
}

TEST_CASE("the all-zero configuration is a fixed point") {
  const GroupPtr G = make_lattice_group(2);
  CayleyExplorer ex(G);
  const Configuration zero = Configuration::zeros(G, kBinary);
  for (const Element& g : ex.ball(4)) {
    CHECK(shift(g, zero) == zero);
  }
}

TEST_CASE("support norm") {
  const GroupPtr G = make_lattice_group(2);
  CayleyExplorer ex(G);
  CHECK(support_norm(Configuration::zeros(G, kBinary), ex) == 0);
  CHECK(support_norm(single_site(G, elem({3, -4}), 1), ex) == 7);

  Configuration bad(G, kBinary, 1);
  CHECK_THROWS_AS(support_norm(bad, ex), PreconditionError);

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Configuration x = Configuration::zeros(G, kBinary);
    for (int i = 0; i < 3; ++i) {
      x.set(elem({static_cast<int>(rng.below(7)) - 3, static_cast<int>(rng.below(7)) - 3}), 1);
    }
    const Element g = elem({static_cast<int>(rng.below(7)) - 3, static_cast<int>(rng.below(7)) - 3});
    CHECK(support_norm(shift(g, x), ex) <= ex.word_norm(g) + support_norm(x, ex));
  }
}

TEST_CASE("truncation") {
  const GroupPtr G = make_lattice_group(2);
  CayleyExplorer ex(G);
  const Configuration zero = Configuration::zeros(G, kBinary);
  CHECK(truncate(zero, 3, ex) == zero);

  Configuration x = single_site(G, elem({1, 0}), 1);
  CHECK(truncate(x, 2, ex) == x);

  x.set(elem({4, 4}), 1);
  const Configuration cut = truncate(x, 3, ex);
  CHECK(support_norm(cut, ex) <= 3);
  for (const Element& g : ex.ball(3)) CHECK(cut.at(g) == x.at(g));
  CHECK(cut.at(elem({4, 4})) == 0);

  // Non-zero default: truncation totalizes with 0 outside the ball.
  Configuration ones(G, kBinary, 1);
  const Configuration cut1 = truncate(ones, 1, ex);
  CHECK(cut1.default_symbol() == 0);
  for (const Element& g : ex.ball(1)) CHECK(cut1.at(g) == 1);
  CHECK(cut1.at(elem({2, 0})) == 0);
  CHECK(support_norm(cut1, ex) == 1);
}

TEST_CASE("restriction and totalization") {
  const GroupPtr G = make_lattice_group(2);
  CayleyExplorer ex(G);
  const Configuration zero = Configuration::zeros(G, kBinary);
  const Pattern p = restriction(zero, ex.ball(1));
  CHECK(p.domain.size() == 5);
  for (int v : p.values) CHECK(v == 0);

  Configuration x = single_site(G, elem({1, 1}), 1);
  x.set(elem({0, -1}), 1);
  const Pattern q = restriction(x, ex.ball(2));
  const Configuration back = totalize(G, kBinary, q, 0);
  for (const Element& g : ex.ball(2)) CHECK(back.at(g) == x.at(g));
  CHECK(back == truncate(x, 2, ex));

  // Restrictions are what feeds the locality hypothesis: configurations
  // agreeing on a ball produce byte-identical patterns.
  Configuration y = x;
  y.set(elem({5, 5}), 1);
  CHECK(restriction(x, ex.ball(2)).key() == restriction(y, ex.ball(2)).key());
}

TEST_CASE("canonical form never stores the default") {
  const GroupPtr G = make_lattice_group(1);
  Configuration x = Configuration::zeros(G, kBinary);
  x.set(elem({3}), 1);
  x.set(elem({3}), 0);
  CHECK(x.overrides().empty());
  CHECK(x == Configuration::zeros(G, kBinary));
}

TEST_CASE("pattern enumeration") {
  const GroupPtr G = make_lattice_group(2);
  CayleyExplorer ex(G);
  const auto patterns = enumerate_patterns(kBinary, ex.ball(1), 1 << 16);
  CHECK(patterns.size() == 32);
  for (int v : patterns.front().values) CHECK(v == 0);
  // Keys are distinct and in lexicographic order.
  for (std::size_t i = 1; i < patterns.size(); ++i) {
    CHECK(patterns[i - 1].key() < patterns[i].key());
  }

  const Alphabet unary({"0"}, 0);
  CHECK(enumerate_patterns(unary, ex.ball(2), 1 << 16).size() == 1);

  CHECK_THROWS_AS(enumerate_patterns(kBinary, ex.ball(3), 100), EnumerationCapError);
}
