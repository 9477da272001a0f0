#ifndef CCR_GROUP_HPP
#define CCR_GROUP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccr/element.hpp"

namespace ccr {

// Abstract finitely generated group presented through an element oracle:
// identity, multiplication, inversion, canonical labels, and a finite
// symmetric generating list. Generator order is part of the group's
// declaration and determines every canonical choice downstream (BFS order,
// geodesic words, site orders).
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  // Canonical spec string, e.g. "Z^2", "F(2)", "Z^2 x C(2)".
  virtual std::string spec() const = 0;
  virtual Element identity() const = 0;
  // Aliasing-safe: out may be the same object as a or b.
  virtual void multiply_into(Element& out, const Element& a, const Element& b) const = 0;
  virtual void inverse_into(Element& out, const Element& a) const = 0;
  virtual std::string label(const Element& e) const = 0;
  // Inverse of label(); nullopt on malformed input.
  virtual std::optional<Element> parse_label(const std::string& text) const = 0;
  // True iff the payload is a canonical encoding of a group element.
  virtual bool valid(const Element& e) const = 0;
  // Number of elements, 0 when infinite.
  virtual std::uint64_t order() const = 0;

  Element multiply(const Element& a, const Element& b) const {
    Element out;
    multiply_into(out, a, b);
    return out;
  }
  Element inverse(const Element& a) const {
    Element out;
    inverse_into(out, a);
    return out;
  }

  const std::vector<Element>& generators() const { return generators_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }

  // Index of the generator slot inverse to slot i (equal to i for involutions).
  int inverse_generator(int i) const { return inverse_slot_[static_cast<std::size_t>(i)]; }
  // One chosen representative slot per {s, s^-1} pair, in declaration order.
  const std::vector<int>& positive_generators() const { return positive_slots_; }
  bool is_positive_generator(int i) const { return is_positive_[static_cast<std::size_t>(i)]; }
  // Rank of the pair that slot i belongs to.
  int pair_rank(int i) const { return pair_rank_[static_cast<std::size_t>(i)]; }
  int pair_count() const { return static_cast<int>(positive_slots_.size()); }

  // Pair k is named by letter 'a'+k; the inverse slot uses the uppercase form.
  std::string generator_name(int i) const;
  // Slot for a generator name, or -1 when unknown.
  int generator_named(const std::string& name) const;

 protected:
  // Validates symmetry (every generator's inverse is listed) and computes the
  // pairing. Throws PreconditionError otherwise.
  void set_generators(std::vector<Element> gens);

 private:
  std::vector<Element> generators_;
  std::vector<int> inverse_slot_;
  std::vector<int> positive_slots_;
  std::vector<int> pair_rank_;
  std::vector<bool> is_positive_;
};

using GroupPtr = std::shared_ptr<const GroupOracle>;

// Registry groups. Element payloads:
//   lattice    - d signed coordinates, label "(3,-4)"
//   free       - reduced word of nonzero letter codes +-(i+1), label "abA", identity "e"
//   cyclic     - one residue in [0, n), label "3"
//   symmetric  - the image table of a permutation of {0..n-1}, label "(1 2)(3 4)", identity "e"
//   product    - factor payloads concatenated, each preceded by its length
GroupPtr make_lattice_group(int dim);
GroupPtr make_free_group(int rank);
GroupPtr make_cyclic_group(int modulus);
GroupPtr make_symmetric_group(int degree);
GroupPtr make_product_group(std::vector<GroupPtr> factors);

}  // namespace ccr

#endif  // CCR_GROUP_HPP
