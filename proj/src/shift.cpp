#include "ccr/shift.hpp"

#include <algorithm>

#include "ccr/errors.hpp"

namespace ccr {

Alphabet::Alphabet(std::vector<std::string> symbols, int zero_index)
    : symbols_(std::move(symbols)), zero_index_(zero_index) {
  if (symbols_.empty()) throw PreconditionError("alphabet must be nonempty");
  if (symbols_.size() > 255) throw PreconditionError("alphabet too large");
  if (zero_index_ < 0 || zero_index_ >= size()) {
    throw PreconditionError("zero symbol index out of range");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    for (std::size_t j = i + 1; j < symbols_.size(); ++j) {
      if (symbols_[i] == symbols_[j]) {
        throw PreconditionError("duplicate symbol name: " + symbols_[i]);
      }
    }
  }
}

int Alphabet::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (symbols_[static_cast<std::size_t>(i)] == name) return i;
  }
  return -1;
}

bool Alphabet::single_char_names() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

Configuration::Configuration(GroupPtr group, Alphabet alphabet, int default_symbol)
    : group_(std::move(group)), alphabet_(std::move(alphabet)), default_symbol_(default_symbol) {
  if (!group_) throw PreconditionError("null group");
  if (default_symbol_ < 0 || default_symbol_ >= alphabet_.size()) {
    throw PreconditionError("default symbol out of range");
  }
}

Configuration Configuration::zeros(GroupPtr group, const Alphabet& alphabet) {
  return Configuration(std::move(group), alphabet, alphabet.zero_index());
}

int Configuration::at(const Element& site) const {
  const auto it = overrides_.find(site);
  return it == overrides_.end() ? default_symbol_ : it->second;
}

void Configuration::set(const Element& site, int symbol) {
  if (symbol < 0 || symbol >= alphabet_.size()) throw PreconditionError("symbol out of range");
  if (symbol == default_symbol_) {
    overrides_.erase(site);
  } else {
    overrides_[site] = symbol;
  }
}

bool Configuration::operator==(const Configuration& other) const {
  return group_->spec() == other.group_->spec() && alphabet_ == other.alphabet_ &&
         default_symbol_ == other.default_symbol_ && overrides_ == other.overrides_;
}

std::string Pattern::key() const {
  std::string k;
  k.reserve(values.size());
  for (int v : values) k.push_back(static_cast<char>(static_cast<unsigned char>(v)));
  return k;
}

Configuration shift(const Element& g, const Configuration& x) {
  Configuration out(x.group(), x.alphabet(), x.default_symbol());
  const GroupOracle& G = *x.group();
  for (const auto& [site, sym] : x.overrides()) {
    out.set(G.multiply(g, site), sym);
  }
  return out;
}

int support_norm(const Configuration& x, CayleyExplorer& explorer) {
  if (!x.in_zero_class()) {
    throw PreconditionError("support norm requires default symbol 0");
  }
  int n = 0;
  for (const auto& [site, sym] : x.overrides()) {
    (void)sym;
    n = std::max(n, explorer.word_norm(site));
  }
  return n;
}

Configuration truncate(const Configuration& x, int r, CayleyExplorer& explorer) {
  Configuration out = Configuration::zeros(x.group(), x.alphabet());
  const int zero = x.alphabet().zero_index();
  if (x.default_symbol() == zero) {
    for (const auto& [site, sym] : x.overrides()) {
      if (explorer.word_norm(site) <= r) out.set(site, sym);
    }
  } else {
    // Non-zero default: every site of B(r) matters.
    for (const Element& site : explorer.ball(r)) {
      out.set(site, x.at(site));
    }
  }
  return out;
}

Pattern restriction(const Configuration& x, std::vector<Element> domain) {
  Pattern p;
  p.values.reserve(domain.size());
  for (const Element& site : domain) p.values.push_back(x.at(site));
  p.domain = std::move(domain);
  return p;
}

Configuration totalize(GroupPtr group, const Alphabet& alphabet, const Pattern& p,
                       int default_symbol) {
  Configuration out(std::move(group), alphabet, default_symbol);
  for (std::size_t i = 0; i < p.domain.size(); ++i) {
    out.set(p.domain[i], p.values[i]);
  }
  return out;
}

std::optional<std::uint64_t> pattern_count(const Alphabet& alphabet, std::size_t domain_size) {
  std::uint64_t count = 1;
  const auto a = static_cast<std::uint64_t>(alphabet.size());
  for (std::size_t i = 0; i < domain_size; ++i) {
    if (count > UINT64_MAX / a) return std::nullopt;
    count *= a;
  }
  return count;
}

void enumerate_patterns(const Alphabet& alphabet, const std::vector<Element>& domain,
                        std::uint64_t cap, const std::function<void(const Pattern&)>& fn) {
  const auto count = pattern_count(alphabet, domain.size());
  if (!count || *count > cap) {
    throw EnumerationCapError("pattern enumeration over " + std::to_string(domain.size()) +
                              " sites exceeds cap " + std::to_string(cap));
  }
  Pattern p;
  p.domain = domain;
  p.values.assign(domain.size(), 0);
  for (;;) {
    fn(p);
    // Odometer, last site fastest.
    std::size_t i = domain.size();
    while (i > 0) {
      --i;
      if (++p.values[i] < alphabet.size()) break;
      p.values[i] = 0;
      if (i == 0) return;
    }
    if (domain.empty()) return;
  }
}

std::vector<Pattern> enumerate_patterns(const Alphabet& alphabet,
                                        const std::vector<Element>& domain, std::uint64_t cap) {
  std::vector<Pattern> out;
  enumerate_patterns(alphabet, domain, cap, [&](const Pattern& p) { out.push_back(p); });
  return out;
}

}  // namespace ccr
