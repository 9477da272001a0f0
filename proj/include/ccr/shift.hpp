#ifndef CCR_SHIFT_HPP
#define CCR_SHIFT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccr/element.hpp"
#include "ccr/explorer.hpp"
#include "ccr/group.hpp"

namespace ccr {

// Finite symbol set with a designated symbol 0.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> symbols, int zero_index = 0);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(int i) const { return symbols_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  int zero_index() const { return zero_index_; }
  // Index of a symbol name, -1 when unknown.
  int index_of(const std::string& name) const;
  bool single_char_names() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
  int zero_index_;
};

// A totalized map G -> A: a default symbol plus finitely many overrides.
// Canonical form: no override ever equals the default. Value semantics;
// treat as immutable once shared.
class Configuration {
 public:
  Configuration(GroupPtr group, Alphabet alphabet, int default_symbol);
  static Configuration zeros(GroupPtr group, const Alphabet& alphabet);

  const GroupPtr& group() const { return group_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int default_symbol() const { return default_symbol_; }
  int at(const Element& site) const;
  void set(const Element& site, int symbol);
  const std::unordered_map<Element, int, ElementHash>& overrides() const { return overrides_; }
  bool in_zero_class() const { return default_symbol_ == alphabet_.zero_index(); }

  bool operator==(const Configuration& other) const;

 private:
  GroupPtr group_;
  Alphabet alphabet_;
  int default_symbol_;
  std::unordered_map<Element, int, ElementHash> overrides_;
};

// Values of a configuration on an explicit finite site list.
struct Pattern {
  std::vector<Element> domain;
  std::vector<int> values;

  // Symbol indices packed as bytes; stable table key given a fixed domain.
  std::string key() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

// (g x)(h) = x(g^-1 h): overrides relocate to g * support.
Configuration shift(const Element& g, const Configuration& x);

// max |g| over the support, 0 for empty support. The default symbol must be 0.
int support_norm(const Configuration& x, CayleyExplorer& explorer);

// Agrees with x on B(r, identity) and is 0 outside.
Configuration truncate(const Configuration& x, int r, CayleyExplorer& explorer);

Pattern restriction(const Configuration& x, std::vector<Element> domain);

// Configuration equal to p on its domain and default elsewhere.
Configuration totalize(GroupPtr group, const Alphabet& alphabet, const Pattern& p,
                       int default_symbol);

// All |A|^|domain| patterns in lexicographic symbol-index order (first site
// most significant). Throws EnumerationCapError past the cap.
void enumerate_patterns(const Alphabet& alphabet, const std::vector<Element>& domain,
                        std::uint64_t cap, const std::function<void(const Pattern&)>& fn);
std::vector<Pattern> enumerate_patterns(const Alphabet& alphabet,
                                        const std::vector<Element>& domain, std::uint64_t cap);

// |A|^|domain| clamped; nullopt when it overflows std::uint64_t.
std::optional<std::uint64_t> pattern_count(const Alphabet& alphabet, std::size_t domain_size);

}  // namespace ccr

#endif  // CCR_SHIFT_HPP
