#ifndef CCR_EXPLORER_HPP
#define CCR_EXPLORER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ccr/element.hpp"
#include "ccr/group.hpp"

namespace ccr {

// A walk over an integer interval {lo .. lo+size-1}; geodesic when every pair
// of vertices is at word distance equal to its index distance.
struct GroupPath {
  int lo = 0;
  std::vector<Element> vertices;

  int hi() const { return lo + static_cast<int>(vertices.size()) - 1; }
  int length() const { return static_cast<int>(vertices.size()) - 1; }
  const Element& at(int index) const {
    return vertices.at(static_cast<std::size_t>(index - lo));
  }
};

struct IntersectionCheck {
  bool ok = false;
  std::optional<Element> witness;  // first element outside the 3L ball
};

struct EndsReport {
  int cut_radius = 0;
  int exploration_cutoff = 0;  // R_max
  int unbounded_components = 0;
  int bounded_components = 0;
  std::vector<Element> bounded_elements;  // all elements of bounded components, BFS order
  int n_of_r = 0;
  // True when some component was classified unbounded because it reached the
  // cutoff sphere; such classifications are exact only up to the cutoff.
  bool cutoff_limited = false;
};

inline constexpr int kDefaultMaxRadius = 64;
inline constexpr int kDefaultLineHorizon = 12;

// Memoized breadth-first geometry over a GroupOracle: word norms, balls and
// spheres, canonical geodesic words, neighborhoods, complement components.
//
// Element ids are BFS discovery order: norm ascending, parent id then
// generator index as tie-break. The geodesic word read off the parent chain
// is the lexicographically minimal geodesic word under the declared
// generator order.
//
// Thread contract: construction and cache-warming calls (ensure_radius, any
// query that has to extend the frontier) are single-threaded. After warming
// to a radius, queries whose reach stays at or below it do not mutate state
// and may run concurrently.
class CayleyExplorer {
 public:
  explicit CayleyExplorer(GroupPtr group, int max_radius = kDefaultMaxRadius,
                          int line_horizon = kDefaultLineHorizon);

  const GroupOracle& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int max_radius() const { return max_radius_; }
  int line_horizon() const { return line_horizon_; }

  // Explores until all elements of norm <= r are known. Throws
  // RadiusExceededError when r exceeds the configured maximum.
  void ensure_radius(int r);
  int explored_radius() const { return static_cast<int>(layer_end_.size()) - 1; }
  // True when BFS closed (finite group fully enumerated).
  bool exhausted() const { return exhausted_; }

  std::uint32_t id_of(const Element& g);  // explores until found
  std::optional<std::uint32_t> known_id(const Element& g) const;
  const Element& element_at(std::uint32_t id) const { return elements_[id]; }
  int norm_at(std::uint32_t id) const { return norms_[id]; }
  std::size_t known_count() const { return elements_.size(); }

  int word_norm(const Element& g);
  int distance(const Element& a, const Element& b);
  // Exact distance when it is <= bound, nullopt otherwise. Explores only to
  // about bound/2 by meeting spheres in the middle.
  std::optional<int> distance_within(const Element& a, const Element& b, int bound);

  // Ids [0, ball_end(r)) are exactly the elements of norm <= r.
  std::uint32_t ball_end(int r);
  std::uint32_t sphere_begin(int r);
  std::vector<Element> ball(int r);
  std::vector<Element> sphere(int r);

  // Lexicographically minimal geodesic word for g, as generator slots;
  // g equals the product of the slots' generators in word order.
  std::vector<int> geodesic_word(const Element& g);
  // Word rendered with pair letters, "1" for the identity.
  std::string word_label(const Element& g);
  // Geodesic from identity to g on {0..|g|} realizing the canonical word.
  GroupPath geodesic_segment(const Element& g);

  // Segment {-n..n} of one fixed biinfinite geodesic through the identity:
  // the lexicographically minimal branch, level by level, among segments that
  // extend to the construction horizon. Results for different n are
  // restrictions of each other. Throws InfeasibleError when no such segment
  // exists (finite groups) and RadiusExceededError when n exceeds the horizon.
  GroupPath biinfinite_segment(int n);

  // Exhaustive geodesic-law check (all index pairs).
  bool is_geodesic(const GroupPath& path);

  // {g : d(g, t) <= L for some t in T}, in BFS id order.
  std::vector<Element> l_neighborhood(const std::vector<Element>& T, int L);

  // Whether the L-neighborhoods of the two halves of gamma (split at index 0)
  // intersect only inside B(3L, gamma(0)).
  IntersectionCheck half_geodesic_intersection(const GroupPath& gamma, int L);

  // Partitions the elements of norm r through R_max into components of the
  // induced Cayley graph; a component is classified unbounded iff it reaches
  // norm R_max.
  EndsReport component_report(int r, int R_max);

  // A path from `from` to `to` whose vertices all have norm > r, searching
  // inside B(R_max); nullopt when no such path exists within the cutoff.
  std::optional<GroupPath> path_avoiding_ball(const Element& from, const Element& to, int r,
                                              int R_max);

  Element multiply(const Element& a, const Element& b) const { return group_->multiply(a, b); }
  Element inverse(const Element& a) const { return group_->inverse(a); }

 private:
  void explore_layer();
  bool line_dfs(const Element& neg, const Element& pos, int level);

  GroupPtr group_;
  int max_radius_;
  int line_horizon_;

  std::vector<Element> elements_;
  std::vector<std::int32_t> norms_;
  std::vector<std::int32_t> parent_gen_;
  std::vector<std::uint32_t> parent_id_;
  std::unordered_map<Element, std::uint32_t, ElementHash> index_;
  std::vector<std::uint32_t> layer_end_;  // layer_end_[r] = #elements of norm <= r
  bool exhausted_ = false;

  // Biinfinite geodesic spine: levels 0..line_horizon_, computed on demand.
  std::vector<Element> line_pos_, line_neg_;
  std::unordered_set<std::uint64_t> line_dead_;
  bool line_built_ = false;
};

}  // namespace ccr

#endif  // CCR_EXPLORER_HPP
