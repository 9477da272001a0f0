#ifndef CCR_RIGIDITY_HPP
#define CCR_RIGIDITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ccr/cocycle.hpp"

namespace ccr {

using PhiMap = std::unordered_map<Element, Element, ElementHash>;

// phi(g) = c(g, zero configuration).
Element compute_phi(const LocalCocycle& c, const Element& g);
// phi on B(r_phi), keyed by group element.
PhiMap build_phi_table(const LocalCocycle& c, int r_phi);

struct HomFailure {
  Element g, h, left, right;
};
struct HomReport {
  std::uint64_t checked = 0;
  std::vector<HomFailure> failures;
};
// Verifies phi(g h) = phi(g) phi(h) for all g, h in B(r), exhaustively.
HomReport check_phi_homomorphism(const LocalCocycle& c, int r);

// N(r): the largest norm among elements outside every cutoff-unbounded
// component of the complement of B(r), never below r. Cutoff defaults to
// 2r + 4.
int n_of(CayleyExplorer& explorer, int r, int r_max = -1);

// The canonical base point for the transfer value of x: the first BFS
// element of the sphere of radius N(|support(x)| + L) + 1.
Element choose_gx(const LocalCocycle& c, const Configuration& x);

// b(x) = c(g_x, x)^-1 phi(g_x). Requires default symbol 0.
Element compute_b(const LocalCocycle& c, const Configuration& x);

enum class ObstructionKind { independence_failure, locality_failure, no_avoiding_path };
const char* to_string(ObstructionKind kind);

// Concrete data showing a construction step failing; expected exactly for
// groups whose ball complements split into several unbounded components.
struct ObstructionWitness {
  ObstructionWitness(ObstructionKind kind_, Configuration x_) : kind(kind_), x(std::move(x_)) {}

  ObstructionKind kind;
  Configuration x;
  std::optional<Configuration> y;  // locality partner
  std::optional<Element> g1, g2;   // the two conflicting base-point choices
  std::optional<Element> v1, v2;   // their transfer values
  int radius = -1;                 // no_avoiding_path: the separating ball radius
  int cutoff = -1;                 // no_avoiding_path: search cutoff used
};

// All candidates must have norm > N(|support(x)| + L); the b-value read from
// each must agree. Returns the first disagreeing pair otherwise.
std::optional<ObstructionWitness> check_independence(const LocalCocycle& c, const Configuration& x,
                                                     const std::vector<Element>& candidates);

// x, y with default 0 agreeing on B(3L) must have equal b.
std::optional<ObstructionWitness> check_locality(const LocalCocycle& c, const Configuration& x,
                                                 const Configuration& y);

// Whether g1^-1 and g2^-1 connect outside B(|support(x)| + L) within B(R_max).
std::optional<ObstructionWitness> check_avoiding_path(const LocalCocycle& c,
                                                      const Configuration& x, const Element& g1,
                                                      const Element& g2, int r_max);

// Re-runs the named check on the witness data; true when the failure
// reproduces.
bool replay_witness(const LocalCocycle& c, const ObstructionWitness& w);

// The continuous extension of b: value determined by x|B(3L), memoized per
// pattern.
class TransferFunction {
 public:
  explicit TransferFunction(const LocalCocycle& c);

  const std::vector<Element>& domain_sites() const { return sites_; }
  Element value(const Configuration& x);
  Element value_for_key(const std::string& key);
  const std::map<std::string, Element>& observed() const { return memo_; }

 private:
  const LocalCocycle& c_;
  std::vector<Element> sites_;  // B(3L), canonical order
  std::map<std::string, Element> memo_;
};

// Full table of the extension over all B(3L) patterns; throws
// EnumerationCapError when |A|^|B(3L)| exceeds the cap.
std::map<std::string, Element> build_b_table(const LocalCocycle& c, std::uint64_t cap = 1ull << 16);

struct CohomologyFailure {
  Element g;
  Pattern window;  // the truncated configuration on B(|g| + 3L)
  Element left, right;
};

struct CohomologyReport {
  std::uint64_t checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<CohomologyFailure> failures;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;

  bool valid() const { return failure_count == 0; }
};

struct SweepOptions {
  int samples = 10000;
  std::uint64_t seed = 0;
  std::optional<bool> exhaustive;  // unset: auto when the window count fits the cap
  std::uint64_t cap = 1ull << 16;
  std::size_t max_stored_failures = 25;
  int threads = 1;
};

// Verifies c(g, x) = b(g x) phi(g) b(x)^-1 for all g in B(r) against sampled
// or exhaustive x (arbitrary default), truncating x to B(|g| + 3L) first; b
// is read through restriction to B(3L). Missing phi entries are computed.
CohomologyReport check_cohomology(const LocalCocycle& c, const PhiMap& phi, int r,
                                  const SweepOptions& opts = {});

// z = x on the L-neighborhood of the nonnegative half of the line, y on the
// nonpositive half, 0 elsewhere; x and y must agree on the overlap.
Configuration splice_configurations(CayleyExplorer& explorer, const GroupPath& line, int L,
                                    const Configuration& x, const Configuration& y);

struct RigidifyOptions {
  int r_phi = 4;
  int r_check = 3;          // identity gate radius; 0 skips the gate
  int identity_samples = 200;
  int cohomology_r = 4;
  int cohomology_samples = 10000;
  int independence_configs = 20;
  int independence_candidates = 24;  // cap over the two candidate spheres
  int locality_pairs = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t cap = 1ull << 16;
  std::optional<bool> exhaustive;
  std::size_t max_stored_failures = 25;
};

struct SweepSummary {
  std::uint64_t checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<ObstructionWitness> failures;
};

struct RigidityResult {
  int window_radius = 0;
  std::uint64_t seed = 0;   // invocation seed
  int cohomology_r = 4;
  int r_phi = 4;
  // (g, phi(g)) on B(max(r_phi, cohomology_r)), canonical BFS order.
  std::vector<std::pair<Element, Element>> phi_entries;
  // Extension values by B(3L)-pattern key: the full table when it fits the
  // cap (b_complete), otherwise the entries the sweeps touched.
  std::map<std::string, Element> b_entries;
  bool b_complete = false;
  std::map<int, int> n_values;
  CocycleReport identity;
  SweepSummary independence;
  SweepSummary locality;
  CohomologyReport cohomology;
  std::optional<ObstructionWitness> obstruction;

  bool ok() const { return !obstruction.has_value(); }
};

// Full pipeline: N values, phi table, base-point independence sweep, transfer
// table, locality sweep, cohomology sweep. Every sweep runs; the obstruction
// is the first witness found, in pipeline order.
RigidityResult rigidify(const LocalCocycle& c, const RigidifyOptions& opts = {});

}  // namespace ccr

#endif  // CCR_RIGIDITY_HPP
