#ifndef CCR_COCYCLE_HPP
#define CCR_COCYCLE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccr/explorer.hpp"
#include "ccr/shift.hpp"

namespace ccr {

// Rule for one positive generator: a total map from window patterns to
// target-group elements, either tabulated or in closed form.
struct GeneratorRule {
  enum class Kind { table, site_sum };

  Kind kind = Kind::table;
  // key: Pattern::key() over the canonical window site order.
  std::unordered_map<std::string, Element> table;
  // site_sum: value = prod over window sites of weight[site]^(symbol index),
  // multiplied in canonical site order.
  std::vector<Element> weights;
};

// Continuous cocycle presented by per-positive-generator local rules with a
// uniform window radius L. Values on inverse generators follow from
// c(s^-1, x) = c(s, s^-1 x)^-1, and on arbitrary group elements by
// telescoping along the canonical geodesic word. Immutable once built.
class LocalCocycle {
 public:
  LocalCocycle(std::shared_ptr<CayleyExplorer> explorer, GroupPtr target, Alphabet alphabet,
               int window_radius, std::vector<GeneratorRule> rules);

  CayleyExplorer& explorer() const { return *explorer_; }
  const std::shared_ptr<CayleyExplorer>& explorer_ptr() const { return explorer_; }
  const GroupOracle& group() const { return explorer_->group(); }
  const GroupPtr& target() const { return target_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int window_radius() const { return window_radius_; }
  // B(L) in canonical BFS order; the domain of every rule pattern.
  const std::vector<Element>& window_sites() const { return window_sites_; }
  const GeneratorRule& rule(int pair) const { return rules_.at(static_cast<std::size_t>(pair)); }
  int pair_count() const { return static_cast<int>(rules_.size()); }

  Element rule_value(int pair, const std::string& key) const;

  // Telescoped value along the canonical geodesic word of g.
  Element evaluate(const Element& g, const Configuration& x) const;
  // Same telescope along an arbitrary generator word (word order: g equals
  // the product of the slots' generators left to right).
  Element evaluate_along_word(const std::vector<int>& word, const Configuration& x) const;
  // The (positive pair, window pattern) lookups performed while evaluating;
  // useful for tracing a failure back to a table entry.
  std::vector<std::pair<int, Pattern>> evaluation_windows(const Element& g,
                                                          const Configuration& x) const;

  Configuration zero_configuration() const;

 private:
  std::shared_ptr<CayleyExplorer> explorer_;
  GroupPtr target_;
  Alphabet alphabet_;
  int window_radius_;
  std::vector<Element> window_sites_;
  std::vector<GeneratorRule> rules_;
};

struct CocycleFailure {
  Element g, h;
  Pattern window;  // the sampled configuration on the dependence window
  Element left, right;
};

struct CocycleReport {
  std::uint64_t checked = 0;        // (g, h, x) triples
  std::uint64_t failure_count = 0;  // total, even past the stored cap
  std::vector<CocycleFailure> failures;
  bool exhaustive = false;
  std::uint64_t seed = 0;

  bool valid() const { return failure_count == 0; }
};

struct IdentityCheckOptions {
  int samples_per_pair = 1000;
  std::uint64_t seed = 0;
  std::optional<bool> exhaustive;  // unset: auto when window count <= cap
  std::uint64_t cap = 1ull << 16;
  std::size_t max_stored_failures = 25;
  bool stop_on_first = false;
  int threads = 1;
};

// Verifies c(g h, x) = c(g, h x) c(h, x) for all g, h in B(r_check) against
// exhaustive or seeded-random values of x on the dependence window
// B(2 r_check + L).
CocycleReport check_identity(const LocalCocycle& c, int r_check,
                             const IdentityCheckOptions& opts = {});

// Constant rules c(s, x) = phi0[pair of s]; window radius 0.
LocalCocycle make_hom_cocycle(std::shared_ptr<CayleyExplorer> explorer, GroupPtr target,
                              const Alphabet& alphabet, const std::vector<Element>& phi0);

// Twist of phi0 by a local transfer table b0 over B(rho) patterns:
// c(s, x) = b0((s x)|B(rho)) phi0(s) b0(x|B(rho))^-1, tabulated over B(rho+1).
LocalCocycle make_twisted(std::shared_ptr<CayleyExplorer> explorer, GroupPtr target,
                          const Alphabet& alphabet, const std::vector<Element>& phi0,
                          const std::unordered_map<std::string, Element>& b0, int rho);

// Whether c(path_end^-1, .) c(path_start^-1, .)^-1 takes the same value on x
// and y; callers must supply x, y agreeing on the L-neighborhood of the path.
bool dependence_window_check(const LocalCocycle& c, const GroupPath& path, const Configuration& x,
                             const Configuration& y);

}  // namespace ccr

#endif  // CCR_COCYCLE_HPP
