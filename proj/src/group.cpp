#include "ccr/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "ccr/errors.hpp"

namespace ccr {

std::string GroupOracle::generator_name(int i) const {
  const int rank = pair_rank(i);
  const char letter = static_cast<char>('a' + rank);
  if (is_positive_generator(i)) return std::string(1, letter);
  return std::string(1, static_cast<char>(letter - 'a' + 'A'));
}

int GroupOracle::generator_named(const std::string& name) const {
  for (int i = 0; i < generator_count(); ++i) {
    if (generator_name(i) == name) return i;
  }
  return -1;
}

void GroupOracle::set_generators(std::vector<Element> gens) {
  generators_ = std::move(gens);
  const int n = static_cast<int>(generators_.size());
  inverse_slot_.assign(static_cast<std::size_t>(n), -1);
  pair_rank_.assign(static_cast<std::size_t>(n), -1);
  is_positive_.assign(static_cast<std::size_t>(n), false);
  positive_slots_.clear();

  for (int i = 0; i < n; ++i) {
    if (inverse_slot_[static_cast<std::size_t>(i)] >= 0) continue;
    const Element inv = inverse(generators_[static_cast<std::size_t>(i)]);
    // Prefer a distinct partner slot so duplicated involutive entries (for
    // example C(2)'s two declared directions) pair with each other.
    int partner = -1;
    for (int j = i + 1; j < n; ++j) {
      if (inverse_slot_[static_cast<std::size_t>(j)] < 0 &&
          generators_[static_cast<std::size_t>(j)] == inv) {
        partner = j;
        break;
      }
    }
    if (partner < 0 && generators_[static_cast<std::size_t>(i)] == inv) partner = i;
    if (partner < 0) {
      throw PreconditionError("generator list is not symmetric: missing inverse of generator " +
                              std::to_string(i));
    }
    const int rank = static_cast<int>(positive_slots_.size());
    inverse_slot_[static_cast<std::size_t>(i)] = partner;
    inverse_slot_[static_cast<std::size_t>(partner)] = i;
    pair_rank_[static_cast<std::size_t>(i)] = rank;
    pair_rank_[static_cast<std::size_t>(partner)] = rank;
    is_positive_[static_cast<std::size_t>(i)] = true;
    positive_slots_.push_back(i);
  }
  if (positive_slots_.size() > 26) {
    throw PreconditionError("at most 26 generator pairs are supported");
  }
}

namespace {

std::optional<std::int32_t> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (...) {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  if (v < INT32_MIN || v > INT32_MAX) return std::nullopt;
  return static_cast<std::int32_t>(v);
}

class LatticeGroup final : public GroupOracle {
 public:
  explicit LatticeGroup(int dim) : dim_(dim) {
    std::vector<Element> gens;
    for (int sign : {+1, -1}) {
      for (int i = 0; i < dim_; ++i) {
        Element e;
        e.data.assign(static_cast<std::size_t>(dim_), 0);
        e.data[static_cast<std::size_t>(i)] = sign;
        gens.push_back(std::move(e));
      }
    }
    set_generators(std::move(gens));
  }

  std::string spec() const override { return "Z^" + std::to_string(dim_); }

  Element identity() const override {
    Element e;
    e.data.assign(static_cast<std::size_t>(dim_), 0);
    return e;
  }

  void multiply_into(Element& out, const Element& a, const Element& b) const override {
    out.data.resize(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      out.data[static_cast<std::size_t>(i)] =
          a.data[static_cast<std::size_t>(i)] + b.data[static_cast<std::size_t>(i)];
    }
  }

  void inverse_into(Element& out, const Element& a) const override {
    out.data.resize(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      out.data[static_cast<std::size_t>(i)] = -a.data[static_cast<std::size_t>(i)];
    }
  }

  std::string label(const Element& e) const override {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
      if (i) s += ",";
      s += std::to_string(e.data[static_cast<std::size_t>(i)]);
    }
    s += ")";
    return s;
  }

  std::optional<Element> parse_label(const std::string& text) const override {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
    Element e;
    std::string body = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      const std::string part = body.substr(start, comma == std::string::npos ? comma : comma - start);
      const auto v = parse_int(part);
      if (!v) return std::nullopt;
      e.data.push_back(*v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!valid(e)) return std::nullopt;
    return e;
  }

  bool valid(const Element& e) const override {
    return e.data.size() == static_cast<std::size_t>(dim_);
  }

  std::uint64_t order() const override { return 0; }

 private:
  int dim_;
};

class FreeGroup final : public GroupOracle {
 public:
  explicit FreeGroup(int rank) : rank_(rank) {
    std::vector<Element> gens;
    for (int i = 0; i < rank_; ++i) gens.push_back(letter(i + 1));
    for (int i = 0; i < rank_; ++i) gens.push_back(letter(-(i + 1)));
    set_generators(std::move(gens));
  }

  std::string spec() const override { return "F(" + std::to_string(rank_) + ")"; }

  Element identity() const override { return Element{}; }

  void multiply_into(Element& out, const Element& a, const Element& b) const override {
    Element tmp;
    tmp.data.reserve(a.data.size() + b.data.size());
    tmp.data = a.data;
    for (std::int32_t v : b.data) {
      if (!tmp.data.empty() && tmp.data.back() == -v) {
        tmp.data.pop_back();
      } else {
        tmp.data.push_back(v);
      }
    }
    out = std::move(tmp);
  }

  void inverse_into(Element& out, const Element& a) const override {
    Element tmp;
    tmp.data.reserve(a.data.size());
    for (auto it = a.data.rbegin(); it != a.data.rend(); ++it) tmp.data.push_back(-*it);
    out = std::move(tmp);
  }

  std::string label(const Element& e) const override {
    if (e.data.empty()) return "e";
    std::string s;
    for (std::int32_t v : e.data) {
      s += v > 0 ? static_cast<char>('a' + v - 1) : static_cast<char>('A' - v - 1);
    }
    return s;
  }

  std::optional<Element> parse_label(const std::string& text) const override {
    if (text == "e") return identity();
    Element e;
    for (char ch : text) {
      if (ch >= 'a' && ch <= 'z') {
        e.data.push_back(ch - 'a' + 1);
      } else if (ch >= 'A' && ch <= 'Z') {
        e.data.push_back(-(ch - 'A' + 1));
      } else {
        return std::nullopt;
      }
    }
    if (!valid(e)) return std::nullopt;
    return e;
  }

  bool valid(const Element& e) const override {
    for (std::size_t i = 0; i < e.data.size(); ++i) {
      const std::int32_t v = e.data[i];
      if (v == 0 || v > rank_ || v < -rank_) return false;
      if (i > 0 && e.data[i - 1] == -v) return false;  // not reduced
    }
    return true;
  }

  std::uint64_t order() const override { return 0; }

 private:
  static Element letter(int code) {
    Element e;
    e.data.push_back(code);
    return e;
  }

  int rank_;
};

class CyclicGroup final : public GroupOracle {
 public:
  explicit CyclicGroup(int modulus) : modulus_(modulus) {
    Element plus;
    plus.data.push_back(1 % modulus_);
    Element minus;
    minus.data.push_back((modulus_ - 1) % modulus_);
    set_generators({plus, minus});
  }

  std::string spec() const override { return "C(" + std::to_string(modulus_) + ")"; }

  Element identity() const override {
    Element e;
    e.data.push_back(0);
    return e;
  }

  void multiply_into(Element& out, const Element& a, const Element& b) const override {
    const std::int32_t v = (a.data[0] + b.data[0]) % modulus_;
    out.data.assign(1, v);
  }

  void inverse_into(Element& out, const Element& a) const override {
    const std::int32_t v = (modulus_ - a.data[0]) % modulus_;
    out.data.assign(1, v);
  }

  std::string label(const Element& e) const override { return std::to_string(e.data[0]); }

  std::optional<Element> parse_label(const std::string& text) const override {
    const auto v = parse_int(text);
    if (!v) return std::nullopt;
    Element e;
    e.data.push_back(*v);
    if (!valid(e)) return std::nullopt;
    return e;
  }

  bool valid(const Element& e) const override {
    return e.data.size() == 1 && e.data[0] >= 0 && e.data[0] < modulus_;
  }

  std::uint64_t order() const override { return static_cast<std::uint64_t>(modulus_); }

 private:
  int modulus_;
};

class SymmetricGroup final : public GroupOracle {
 public:
  explicit SymmetricGroup(int degree) : degree_(degree) {
    std::vector<Element> gens;
    for (int i = 0; i + 1 < degree_; ++i) {
      Element e = identity();
      std::swap(e.data[static_cast<std::size_t>(i)], e.data[static_cast<std::size_t>(i + 1)]);
      gens.push_back(std::move(e));
    }
    set_generators(std::move(gens));
  }

  std::string spec() const override { return "S(" + std::to_string(degree_) + ")"; }

  Element identity() const override {
    Element e;
    e.data.resize(static_cast<std::size_t>(degree_));
    std::iota(e.data.begin(), e.data.end(), 0);
    return e;
  }

  void multiply_into(Element& out, const Element& a, const Element& b) const override {
    std::array<std::int32_t, 64> tmp{};
    for (int i = 0; i < degree_; ++i) {
      tmp[static_cast<std::size_t>(i)] =
          a.data[static_cast<std::size_t>(b.data[static_cast<std::size_t>(i)])];
    }
    out.data.assign(tmp.begin(), tmp.begin() + degree_);
  }

  void inverse_into(Element& out, const Element& a) const override {
    std::array<std::int32_t, 64> tmp{};
    for (int i = 0; i < degree_; ++i) {
      tmp[static_cast<std::size_t>(a.data[static_cast<std::size_t>(i)])] = i;
    }
    out.data.assign(tmp.begin(), tmp.begin() + degree_);
  }

  std::string label(const Element& e) const override {
    std::string s;
    std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
    for (int start = 0; start < degree_; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      std::vector<int> cycle;
      int cur = start;
      while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = true;
        cycle.push_back(cur);
        cur = e.data[static_cast<std::size_t>(cur)];
      }
      if (cycle.size() < 2) continue;
      s += "(";
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (k) s += " ";
        s += std::to_string(cycle[k] + 1);
      }
      s += ")";
    }
    return s.empty() ? "e" : s;
  }

  std::optional<Element> parse_label(const std::string& text) const override {
    if (text == "e") return identity();
    Element e = identity();
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] != '(') return std::nullopt;
      const std::size_t close = text.find(')', pos);
      if (close == std::string::npos) return std::nullopt;
      std::vector<int> cycle;
      std::size_t start = pos + 1;
      while (start < close) {
        std::size_t sp = text.find(' ', start);
        if (sp == std::string::npos || sp > close) sp = close;
        const auto v = parse_int(text.substr(start, sp - start));
        if (!v || *v < 1 || *v > degree_) return std::nullopt;
        cycle.push_back(*v - 1);
        start = sp + 1;
      }
      if (cycle.size() < 2) return std::nullopt;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int from = cycle[k];
        if (e.data[static_cast<std::size_t>(from)] != from) return std::nullopt;  // overlap
        for (std::size_t j = k + 1; j < cycle.size(); ++j) {
          if (cycle[j] == from) return std::nullopt;
        }
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        e.data[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
      }
      pos = close + 1;
    }
    if (!valid(e)) return std::nullopt;
    return e;
  }

  bool valid(const Element& e) const override {
    if (e.data.size() != static_cast<std::size_t>(degree_)) return false;
    std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
    for (std::int32_t v : e.data) {
      if (v < 0 || v >= degree_ || seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
  }

  std::uint64_t order() const override {
    std::uint64_t f = 1;
    for (int i = 2; i <= degree_; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  }

 private:
  int degree_;
};

class ProductGroup final : public GroupOracle {
 public:
  explicit ProductGroup(std::vector<GroupPtr> factors) : factors_(std::move(factors)) {
    std::vector<Element> gens;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      for (const Element& g : factors_[f]->generators()) {
        std::vector<Element> parts;
        for (std::size_t k = 0; k < factors_.size(); ++k) {
          parts.push_back(k == f ? g : factors_[k]->identity());
        }
        gens.push_back(join(parts));
      }
    }
    set_generators(std::move(gens));
  }

  std::string spec() const override {
    std::string s;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      if (f) s += " x ";
      s += factors_[f]->spec();
    }
    return s;
  }

  Element identity() const override {
    std::vector<Element> parts;
    for (const auto& f : factors_) parts.push_back(f->identity());
    return join(parts);
  }

  void multiply_into(Element& out, const Element& a, const Element& b) const override {
    std::vector<Element> pa = split(a), pb = split(b), parts(factors_.size());
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      factors_[f]->multiply_into(parts[f], pa[f], pb[f]);
    }
    out = join(parts);
  }

  void inverse_into(Element& out, const Element& a) const override {
    std::vector<Element> pa = split(a), parts(factors_.size());
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      factors_[f]->inverse_into(parts[f], pa[f]);
    }
    out = join(parts);
  }

  std::string label(const Element& e) const override {
    const std::vector<Element> parts = split(e);
    std::string s = "(";
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      if (f) s += ", ";
      s += factors_[f]->label(parts[f]);
    }
    s += ")";
    return s;
  }

  std::optional<Element> parse_label(const std::string& text) const override {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
    const std::string body = text.substr(1, text.size() - 2);
    // Split at depth-0 ", " boundaries; factor labels may nest parentheses.
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') --depth;
      if (depth == 0 && body[i] == ',' && i + 1 < body.size() && body[i + 1] == ' ') {
        parts.push_back(body.substr(start, i - start));
        start = i + 2;
        ++i;
      }
    }
    parts.push_back(body.substr(start));
    if (parts.size() != factors_.size()) return std::nullopt;
    std::vector<Element> elems;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const auto e = factors_[f]->parse_label(parts[f]);
      if (!e) return std::nullopt;
      elems.push_back(*e);
    }
    return join(elems);
  }

  bool valid(const Element& e) const override {
    std::size_t pos = 0;
    for (const auto& factor : factors_) {
      if (pos >= e.data.size()) return false;
      const std::int32_t len = e.data[pos];
      if (len < 0 || pos + 1 + static_cast<std::size_t>(len) > e.data.size()) return false;
      Element part;
      part.data.assign(e.data.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                       e.data.begin() + static_cast<std::ptrdiff_t>(pos) + 1 + len);
      if (!factor->valid(part)) return false;
      pos += 1 + static_cast<std::size_t>(len);
    }
    return pos == e.data.size();
  }

  std::uint64_t order() const override {
    std::uint64_t n = 1;
    for (const auto& f : factors_) {
      const std::uint64_t o = f->order();
      if (o == 0) return 0;
      n *= o;
    }
    return n;
  }

 private:
  static Element join(const std::vector<Element>& parts) {
    Element e;
    std::size_t total = parts.size();
    for (const auto& p : parts) total += p.data.size();
    e.data.reserve(total);
    for (const auto& p : parts) {
      e.data.push_back(static_cast<std::int32_t>(p.data.size()));
      e.data.insert(e.data.end(), p.data.begin(), p.data.end());
    }
    return e;
  }

  std::vector<Element> split(const Element& e) const {
    std::vector<Element> parts(factors_.size());
    std::size_t pos = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const std::size_t len = static_cast<std::size_t>(e.data[pos]);
      parts[f].data.assign(e.data.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                           e.data.begin() + static_cast<std::ptrdiff_t>(pos + 1 + len));
      pos += 1 + len;
    }
    return parts;
  }

  std::vector<GroupPtr> factors_;
};

}  // namespace

GroupPtr make_lattice_group(int dim) {
  if (dim < 1 || dim > 8) throw ParseError("lattice dimension must be in [1, 8]");
  return std::make_shared<LatticeGroup>(dim);
}

GroupPtr make_free_group(int rank) {
  if (rank < 1 || rank > 13) throw ParseError("free rank must be in [1, 13]");
  return std::make_shared<FreeGroup>(rank);
}

GroupPtr make_cyclic_group(int modulus) {
  if (modulus < 1) throw ParseError("cyclic modulus must be positive");
  return std::make_shared<CyclicGroup>(modulus);
}

GroupPtr make_symmetric_group(int degree) {
  if (degree < 1 || degree > 8) throw ParseError("symmetric degree must be in [1, 8]");
  return std::make_shared<SymmetricGroup>(degree);
}

GroupPtr make_product_group(std::vector<GroupPtr> factors) {
  if (factors.empty()) throw ParseError("product needs at least one factor");
  if (factors.size() == 1) return factors.front();
  return std::make_shared<ProductGroup>(std::move(factors));
}

}  // namespace ccr
