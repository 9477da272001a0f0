#ifndef CCR_TESTS_SUPPORT_HPP
#define CCR_TESTS_SUPPORT_HPP

#include <map>
#include <memory>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccr/cocycle.hpp"
#include "ccr/explorer.hpp"
#include "ccr/group.hpp"
#include "ccr/rng.hpp"
#include "ccr/shift.hpp"

namespace ccr::test {

inline Element elem(std::vector<std::int32_t> data) { return Element{std::move(data)}; }

// Independent word-norm oracle: plain queue BFS, no caches, no tie-breaks.
inline std::unordered_map<Element, int, ElementHash> brute_norms(const GroupOracle& G,
                                                                 int radius) {
  std::unordered_map<Element, int, ElementHash> norms;
  std::queue<Element> queue;
  norms.emplace(G.identity(), 0);
  queue.push(G.identity());
  while (!queue.empty()) {
    const Element g = queue.front();
    queue.pop();
    const int n = norms.at(g);
    if (n == radius) continue;
    for (const Element& s : G.generators()) {
      Element h = G.multiply(g, s);
      if (norms.emplace(h, n + 1).second) queue.push(std::move(h));
    }
  }
  return norms;
}

// Lexicographically smallest generator word of the given length reaching g,
// by exhaustive enumeration.
inline std::optional<std::vector<int>> brute_lex_min_word(const GroupOracle& G, const Element& g,
                                                          int length) {
  std::vector<int> word;
  std::optional<std::vector<int>> best;
  const auto recurse = [&](auto&& self, const Element& at) -> void {
    if (best) return;  // depth-first in lex order: first hit is minimal
    if (static_cast<int>(word.size()) == length) {
      if (at == g) best = word;
      return;
    }
    for (int i = 0; i < G.generator_count(); ++i) {
      word.push_back(i);
      self(self, G.multiply(at, G.generators()[static_cast<std::size_t>(i)]));
      word.pop_back();
      if (best) return;
    }
  };
  recurse(recurse, G.identity());
  return best;
}

// Seeded commuting pair in H (powers of one element always commute is not
// assumed; rejection-sample instead).
inline std::pair<Element, Element> random_commuting_pair(CayleyExplorer& h_explorer,
                                                         std::uint64_t seed, int radius = 3) {
  const GroupOracle& H = h_explorer.group();
  const std::vector<Element> pool = h_explorer.ball(radius);
  Rng rng(seed);
  for (;;) {
    const Element& p = pool[rng.below(static_cast<std::uint32_t>(pool.size()))];
    const Element& q = pool[rng.below(static_cast<std::uint32_t>(pool.size()))];
    if (H.multiply(p, q) == H.multiply(q, p)) return {p, q};
  }
}

struct TwistedFixture {
  std::shared_ptr<CayleyExplorer> explorer;
  GroupPtr target;
  Alphabet alphabet{{"0", "1"}, 0};
  std::vector<Element> phi0;
  std::unordered_map<std::string, Element> b0;
  int rho = 0;
  Element h0;  // b0 at the all-zero inner pattern
};

// Seeded random transfer table over B(rho) patterns plus commuting phi0 on a
// lattice base group.
inline TwistedFixture make_twisted_fixture(GroupPtr G, GroupPtr H, int rho, std::uint64_t seed,
                                           int max_radius = kDefaultMaxRadius) {
  TwistedFixture fx;
  fx.explorer = std::make_shared<CayleyExplorer>(std::move(G), max_radius);
  fx.target = std::move(H);
  fx.rho = rho;
  CayleyExplorer h_explorer(fx.target, 16);
  const auto [p, q] = random_commuting_pair(h_explorer, mix_seed(seed, 17));
  const int pairs = fx.explorer->group().pair_count();
  for (int i = 0; i < pairs; ++i) fx.phi0.push_back(i % 2 == 0 ? p : q);

  const std::vector<Element> inner = fx.explorer->ball(rho);
  const std::vector<Element> pool = h_explorer.ball(3);
  Rng rng(mix_seed(seed, 23));
  enumerate_patterns(fx.alphabet, inner, 1ull << 16, [&](const Pattern& pat) {
    fx.b0.emplace(pat.key(), pool[rng.below(static_cast<std::uint32_t>(pool.size()))]);
  });
  fx.h0 = fx.b0.at(std::string(inner.size(), '\0'));
  return fx;
}

inline LocalCocycle build_twisted(const TwistedFixture& fx) {
  return make_twisted(fx.explorer, fx.target, fx.alphabet, fx.phi0, fx.b0, fx.rho);
}

// Seeded configuration with default 0 and support inside B(radius).
inline Configuration random_config(const LocalCocycle& c, int radius, std::uint64_t seed) {
  Configuration x = c.zero_configuration();
  Rng rng(seed);
  for (const Element& site : c.explorer().ball(radius)) {
    x.set(site, static_cast<int>(rng.below(static_cast<std::uint32_t>(c.alphabet().size()))));
  }
  return x;
}

}  // namespace ccr::test

#endif  // CCR_TESTS_SUPPORT_HPP
