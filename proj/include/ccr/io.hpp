#ifndef CCR_IO_HPP
#define CCR_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccr/cocycle.hpp"
#include "ccr/rigidity.hpp"

namespace ccr {

// Grammar: atom = "Z^"d | "F("k")" | "C("n")" | "S("n")";
// product = atom (" x " atom)*. Generator order follows declaration order.
GroupPtr parse_group(const std::string& spec);

struct LoadOptions {
  int max_radius = kDefaultMaxRadius;
  int line_horizon = kDefaultLineHorizon;
};

// Rule documents (.cocycle.json). Alphabet symbol names must be single
// characters; table keys are symbol strings over the canonical window site
// order; rule keys and site keys use generator pair letters and canonical
// word labels; target elements appear by canonical label.
LocalCocycle parse_cocycle(const std::string& text, const LoadOptions& opts = {});
LocalCocycle load_cocycle(const std::string& path, const LoadOptions& opts = {});
std::string serialize_cocycle(const LocalCocycle& c);
void save_cocycle(const LocalCocycle& c, const std::string& path);

// Result documents (.result.json).
std::string serialize_result(const RigidityResult& result, const LocalCocycle& c);
void save_result(const RigidityResult& result, const LocalCocycle& c, const std::string& path);

// The parts of a result document a re-check needs; element values stay as
// labels and are compared by label.
struct ResultDocument {
  std::string group, target;
  std::vector<std::string> symbols;
  std::string zero;
  int window = 0;
  std::uint64_t seed = 0;
  std::uint64_t cohomology_seed = 0;  // the sweep's own seed, for exact replay
  std::uint64_t samples = 0;
  int cohomology_r = 4;
  bool b_complete = false;
  bool had_obstruction = false;
  std::vector<std::pair<std::string, std::string>> phi;  // word label -> target label
  std::vector<std::pair<std::string, std::string>> b;    // pattern -> target label
  std::map<std::string, int> n_values;
};

ResultDocument parse_result(const std::string& text);
ResultDocument load_result(const std::string& path);

// "1" or a string of generator pair letters -> group element.
Element element_from_word_label(CayleyExplorer& explorer, const std::string& label);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace ccr

#endif  // CCR_IO_HPP
