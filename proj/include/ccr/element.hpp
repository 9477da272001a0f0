#ifndef CCR_ELEMENT_HPP
#define CCR_ELEMENT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ccr {

// Opaque group element handle. The owning GroupOracle defines the payload
// encoding and keeps it canonical, so bytewise equality and hashing agree
// with group equality.
struct Element {
  std::vector<std::int32_t> data;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int32_t v : e.data) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace ccr

#endif  // CCR_ELEMENT_HPP
