#include "ccr/explorer.hpp"

#include <algorithm>
#include <queue>

#include "ccr/errors.hpp"

namespace ccr {

CayleyExplorer::CayleyExplorer(GroupPtr group, int max_radius, int line_horizon)
    : group_(std::move(group)), max_radius_(max_radius), line_horizon_(line_horizon) {
  if (!group_) throw PreconditionError("null group oracle");
  if (max_radius_ < 0) throw PreconditionError("max radius must be nonnegative");
  Element id = group_->identity();
  index_.emplace(id, 0);
  elements_.push_back(std::move(id));
  norms_.push_back(0);
  parent_gen_.push_back(-1);
  parent_id_.push_back(0);
  layer_end_.push_back(1);
}

void CayleyExplorer::explore_layer() {
  const int r = explored_radius();
  if (exhausted_) return;
  if (r >= max_radius_) {
    throw RadiusExceededError("exploration radius cap " + std::to_string(max_radius_) +
                              " reached on " + group_->spec());
  }
  const std::uint32_t begin = r == 0 ? 0 : layer_end_[static_cast<std::size_t>(r - 1)];
  const std::uint32_t end = layer_end_[static_cast<std::size_t>(r)];
  Element next;
  for (std::uint32_t u = begin; u < end; ++u) {
    for (int i = 0; i < group_->generator_count(); ++i) {
      group_->multiply_into(next, elements_[u], group_->generators()[static_cast<std::size_t>(i)]);
      if (index_.contains(next)) continue;
      index_.emplace(next, static_cast<std::uint32_t>(elements_.size()));
      elements_.push_back(next);
      norms_.push_back(r + 1);
      parent_gen_.push_back(i);
      parent_id_.push_back(u);
    }
  }
  if (elements_.size() == static_cast<std::size_t>(end)) {
    exhausted_ = true;
  } else {
    layer_end_.push_back(static_cast<std::uint32_t>(elements_.size()));
  }
}

void CayleyExplorer::ensure_radius(int r) {
  if (r > max_radius_ && !exhausted_) {
    if (group_->order() == 0) {
      throw RadiusExceededError("requested radius " + std::to_string(r) + " exceeds cap " +
                                std::to_string(max_radius_));
    }
    // Finite groups close their BFS; run it out.
    while (!exhausted_) explore_layer();
    return;
  }
  while (!exhausted_ && explored_radius() < r) explore_layer();
}

std::optional<std::uint32_t> CayleyExplorer::known_id(const Element& g) const {
  const auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t CayleyExplorer::id_of(const Element& g) {
  for (;;) {
    if (auto id = known_id(g)) return *id;
    if (exhausted_) {
      throw PreconditionError("payload does not encode a group element: " + group_->label(g));
    }
    explore_layer();
  }
}

int CayleyExplorer::word_norm(const Element& g) { return norms_[id_of(g)]; }

int CayleyExplorer::distance(const Element& a, const Element& b) {
  return word_norm(group_->multiply(group_->inverse(a), b));
}

std::optional<int> CayleyExplorer::distance_within(const Element& a, const Element& b, int bound) {
  const Element w = group_->multiply(group_->inverse(a), b);
  if (auto id = known_id(w)) {
    const int n = norms_[*id];
    return n <= bound ? std::optional<int>(n) : std::nullopt;
  }
  if (exhausted_) {
    throw PreconditionError("payload does not encode a group element: " + group_->label(w));
  }
  Element u;
  for (int m = 1; m <= bound; ++m) {
    const int i = (m + 1) / 2;
    const int j = m - i;
    ensure_radius(i);
    if (exhausted_) {
      // Everything is enumerated; fall back to the exact norm.
      if (auto id = known_id(w)) {
        const int n = norms_[*id];
        return n <= bound ? std::optional<int>(n) : std::nullopt;
      }
      throw PreconditionError("payload does not encode a group element: " + group_->label(w));
    }
    const std::uint32_t begin = sphere_begin(j);
    const std::uint32_t end = ball_end(j);
    for (std::uint32_t v = begin; v < end; ++v) {
      group_->multiply_into(u, w, elements_[v]);
      const auto it = index_.find(u);
      if (it != index_.end() && norms_[it->second] == i) return m;
    }
  }
  return std::nullopt;
}

std::uint32_t CayleyExplorer::ball_end(int r) {
  if (r < 0) return 0;
  ensure_radius(r);
  const int top = explored_radius();
  return layer_end_[static_cast<std::size_t>(std::min(r, top))];
}

std::uint32_t CayleyExplorer::sphere_begin(int r) {
  if (r <= 0) return 0;
  return ball_end(r - 1);
}

std::vector<Element> CayleyExplorer::ball(int r) {
  const std::uint32_t end = ball_end(r);
  return {elements_.begin(), elements_.begin() + end};
}

std::vector<Element> CayleyExplorer::sphere(int r) {
  const std::uint32_t begin = sphere_begin(r);
  const std::uint32_t end = ball_end(r);
  return {elements_.begin() + begin, elements_.begin() + end};
}

std::vector<int> CayleyExplorer::geodesic_word(const Element& g) {
  std::uint32_t id = id_of(g);
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(norms_[id]));
  while (parent_gen_[id] >= 0) {
    word.push_back(parent_gen_[id]);
    id = parent_id_[id];
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::string CayleyExplorer::word_label(const Element& g) {
  const std::vector<int> word = geodesic_word(g);
  if (word.empty()) return "1";
  std::string s;
  for (int i : word) s += group_->generator_name(i);
  return s;
}

GroupPath CayleyExplorer::geodesic_segment(const Element& g) {
  const std::vector<int> word = geodesic_word(g);
  GroupPath path;
  path.lo = 0;
  path.vertices.reserve(word.size() + 1);
  path.vertices.push_back(group_->identity());
  for (int i : word) {
    path.vertices.push_back(
        group_->multiply(path.vertices.back(), group_->generators()[static_cast<std::size_t>(i)]));
  }
  return path;
}

bool CayleyExplorer::line_dfs(const Element& neg, const Element& pos, int level) {
  if (level >= line_horizon_) return true;
  const std::uint64_t key = (static_cast<std::uint64_t>(level) << 56) |
                            (static_cast<std::uint64_t>(id_of(neg)) << 28) |
                            static_cast<std::uint64_t>(id_of(pos));
  if (line_dead_.contains(key)) return false;
  for (int i = 0; i < group_->generator_count(); ++i) {
    const Element v = group_->multiply(pos, group_->generators()[static_cast<std::size_t>(i)]);
    const auto d1 = distance_within(neg, v, 2 * level + 1);
    if (!d1 || *d1 != 2 * level + 1) continue;
    for (int j = 0; j < group_->generator_count(); ++j) {
      const Element w = group_->multiply(neg, group_->generators()[static_cast<std::size_t>(j)]);
      const auto d2 = distance_within(w, v, 2 * level + 2);
      if (!d2 || *d2 != 2 * level + 2) continue;
      if (line_dfs(w, v, level + 1)) {
        line_pos_[static_cast<std::size_t>(level + 1)] = v;
        line_neg_[static_cast<std::size_t>(level + 1)] = w;
        return true;
      }
    }
  }
  line_dead_.insert(key);
  return false;
}

GroupPath CayleyExplorer::biinfinite_segment(int n) {
  if (n < 0) throw PreconditionError("segment half-length must be nonnegative");
  if (n > line_horizon_) {
    throw RadiusExceededError("segment half-length " + std::to_string(n) +
                              " exceeds construction horizon " + std::to_string(line_horizon_));
  }
  if (!line_built_) {
    line_pos_.assign(static_cast<std::size_t>(line_horizon_) + 1, group_->identity());
    line_neg_.assign(static_cast<std::size_t>(line_horizon_) + 1, group_->identity());
    if (!line_dfs(group_->identity(), group_->identity(), 0)) {
      throw InfeasibleError("no geodesic of span " + std::to_string(2 * line_horizon_) +
                            " through the identity within the horizon on " + group_->spec());
    }
    line_built_ = true;
  }
  GroupPath path;
  path.lo = -n;
  path.vertices.reserve(static_cast<std::size_t>(2 * n + 1));
  for (int k = n; k >= 1; --k) path.vertices.push_back(line_neg_[static_cast<std::size_t>(k)]);
  for (int k = 0; k <= n; ++k) path.vertices.push_back(line_pos_[static_cast<std::size_t>(k)]);
  return path;
}

bool CayleyExplorer::is_geodesic(GroupPath const& path) {
  const int lo = path.lo, hi = path.hi();
  for (int j = lo; j <= hi; ++j) {
    for (int k = j + 1; k <= hi; ++k) {
      const auto d = distance_within(path.at(j), path.at(k), k - j);
      if (!d || *d != k - j) return false;
    }
  }
  return true;
}

std::vector<Element> CayleyExplorer::l_neighborhood(const std::vector<Element>& T, int L) {
  if (L < 0) throw PreconditionError("neighborhood margin must be nonnegative");
  int max_norm = 0;
  for (const Element& t : T) max_norm = std::max(max_norm, word_norm(t));
  ensure_radius(std::min(max_norm + L, max_radius_));
  if (!exhausted_ && max_norm + L > max_radius_) {
    throw RadiusExceededError("neighborhood reaches past the exploration cap");
  }
  const std::uint32_t lim = ball_end(L);
  std::unordered_set<std::uint32_t> ids;
  Element v;
  for (const Element& t : T) {
    for (std::uint32_t u = 0; u < lim; ++u) {
      group_->multiply_into(v, t, elements_[u]);
      ids.insert(id_of(v));
    }
  }
  std::vector<std::uint32_t> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Element> out;
  out.reserve(sorted.size());
  for (std::uint32_t id : sorted) out.push_back(elements_[id]);
  return out;
}

IntersectionCheck CayleyExplorer::half_geodesic_intersection(const GroupPath& gamma, int L) {
  if (gamma.lo > 0 || gamma.hi() < 0) {
    throw PreconditionError("path must contain index 0");
  }
  std::vector<Element> right, left;
  for (int k = 0; k <= gamma.hi(); ++k) right.push_back(gamma.at(k));
  for (int k = gamma.lo; k <= 0; ++k) left.push_back(gamma.at(k));
  const std::vector<Element> nr = l_neighborhood(right, L);
  const std::vector<Element> nl = l_neighborhood(left, L);
  std::unordered_set<Element, ElementHash> left_set(nl.begin(), nl.end());
  const Element& center = gamma.at(0);
  IntersectionCheck result;
  result.ok = true;
  for (const Element& g : nr) {
    if (!left_set.contains(g)) continue;
    const auto d = distance_within(center, g, 3 * L);
    if (!d) {
      result.ok = false;
      result.witness = g;
      return result;
    }
  }
  return result;
}

EndsReport CayleyExplorer::component_report(int r, int R_max) {
  if (R_max < r) throw PreconditionError("cutoff must be at least the cut radius");
  ensure_radius(R_max);
  EndsReport report;
  report.cut_radius = r;
  report.exploration_cutoff = R_max;

  const std::uint32_t n = ball_end(R_max);
  const std::uint32_t inner = ball_end(r - 1);
  std::vector<std::int32_t> comp(n, -1);
  std::vector<std::uint32_t> stack;
  Element v;
  int max_bounded_norm = 0;
  for (std::uint32_t start = inner; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const std::int32_t c = static_cast<std::int32_t>(start);
    comp[start] = c;
    stack.assign(1, start);
    std::vector<std::uint32_t> members;
    bool touches_cutoff = false;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      if (norms_[u] == R_max) touches_cutoff = true;
      for (int i = 0; i < group_->generator_count(); ++i) {
        group_->multiply_into(v, elements_[u], group_->generators()[static_cast<std::size_t>(i)]);
        const auto it = index_.find(v);
        if (it == index_.end()) continue;
        const std::uint32_t w = it->second;
        if (w < inner || w >= n || comp[w] >= 0) continue;
        comp[w] = c;
        stack.push_back(w);
      }
    }
    if (touches_cutoff) {
      ++report.unbounded_components;
      report.cutoff_limited = true;
    } else {
      ++report.bounded_components;
      std::sort(members.begin(), members.end());
      for (std::uint32_t u : members) {
        report.bounded_elements.push_back(elements_[u]);
        max_bounded_norm = std::max(max_bounded_norm, static_cast<int>(norms_[u]));
      }
    }
  }
  report.n_of_r = std::max(r, max_bounded_norm);
  return report;
}

std::optional<GroupPath> CayleyExplorer::path_avoiding_ball(const Element& from, const Element& to,
                                                            int r, int R_max) {
  const int nf = word_norm(from);
  const int nt = word_norm(to);
  if (nf <= r || nt <= r) {
    throw PreconditionError("both endpoints must lie outside the avoided ball");
  }
  if (nf > R_max || nt > R_max) {
    throw RadiusExceededError("endpoint outside the search cutoff");
  }
  ensure_radius(R_max);
  const std::uint32_t n = ball_end(R_max);
  const std::uint32_t inner = ball_end(r);
  const std::uint32_t src = id_of(from);
  const std::uint32_t dst = id_of(to);

  std::vector<std::int32_t> prev(n, -2);
  std::queue<std::uint32_t> queue;
  prev[src] = -1;
  queue.push(src);
  Element v;
  while (!queue.empty() && prev[dst] == -2) {
    const std::uint32_t u = queue.front();
    queue.pop();
    for (int i = 0; i < group_->generator_count(); ++i) {
      group_->multiply_into(v, elements_[u], group_->generators()[static_cast<std::size_t>(i)]);
      const auto it = index_.find(v);
      if (it == index_.end()) continue;
      const std::uint32_t w = it->second;
      if (w < inner || w >= n || prev[w] != -2) continue;
      prev[w] = static_cast<std::int32_t>(u);
      queue.push(w);
    }
  }
  if (prev[dst] == -2) return std::nullopt;
  std::vector<Element> chain;
  for (std::int32_t cur = static_cast<std::int32_t>(dst); cur >= 0;
       cur = prev[static_cast<std::size_t>(cur)]) {
    chain.push_back(elements_[static_cast<std::size_t>(cur)]);
  }
  std::reverse(chain.begin(), chain.end());
  GroupPath path;
  path.lo = 0;
  path.vertices = std::move(chain);
  return path;
}

}  // namespace ccr
