#include "ccr/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccr/errors.hpp"

namespace ccr {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kRulesFormat = "cocycle-rules/1";
constexpr const char* kResultFormat = "cocycle-result/1";

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

GroupPtr parse_atom(const std::string& atom, std::size_t position) {
  const auto fail = [&](const std::string& why) -> GroupPtr {
    throw ParseError("bad group atom \"" + atom + "\" at position " + std::to_string(position) +
                     ": " + why);
  };
  const auto numeric_suffix = [&](std::size_t from, std::size_t to) -> int {
    const std::string digits = atom.substr(from, to - from);
    if (digits.empty()) fail("missing number");
    for (char ch : digits) {
      if (ch < '0' || ch > '9') fail("malformed number");
    }
    try {
      return std::stoi(digits);
    } catch (...) {
      fail("number out of range");
    }
    return 0;
  };
  if (atom.rfind("Z^", 0) == 0) {
    return make_lattice_group(numeric_suffix(2, atom.size()));
  }
  if (atom.size() >= 4 && atom[1] == '(' && atom.back() == ')') {
    const int n = numeric_suffix(2, atom.size() - 1);
    switch (atom[0]) {
      case 'F':
        return make_free_group(n);
      case 'C':
        return make_cyclic_group(n);
      case 'S':
        return make_symmetric_group(n);
      default:
        break;
    }
  }
  fail("expected Z^d, F(k), C(n), or S(n)");
  return nullptr;
}

Element parse_target_label(const GroupOracle& H, const std::string& text,
                           const std::string& where) {
  const auto e = H.parse_label(text);
  if (!e) {
    throw ParseError("cannot resolve label \"" + text + "\" in " + H.spec() + " (" + where + ")");
  }
  return *e;
}

Alphabet parse_alphabet(const Json& doc) {
  if (!doc.contains("alphabet")) throw ParseError("missing alphabet");
  const Json& a = doc.at("alphabet");
  std::vector<std::string> symbols = a.at("symbols").get<std::vector<std::string>>();
  const std::string zero = a.at("zero").get<std::string>();
  for (const std::string& s : symbols) {
    if (s.size() != 1) {
      throw ParseError("alphabet symbol names must be single characters, got \"" + s + "\"");
    }
  }
  int zero_index = -1;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == zero) zero_index = static_cast<int>(i);
  }
  if (zero_index < 0) throw ParseError("zero symbol \"" + zero + "\" is not in the alphabet");
  return Alphabet(std::move(symbols), zero_index);
}

std::string pattern_to_names(const Alphabet& A, const std::string& key) {
  std::string out;
  for (char ch : key) out += A.symbol(static_cast<unsigned char>(ch));
  return out;
}

std::string names_to_pattern(const Alphabet& A, const std::string& names,
                             std::size_t expected_sites) {
  if (names.size() != expected_sites) {
    throw ParseError("pattern \"" + names + "\" should cover " + std::to_string(expected_sites) +
                     " sites");
  }
  std::string key;
  key.reserve(names.size());
  for (char ch : names) {
    const int idx = A.index_of(std::string(1, ch));
    if (idx < 0) throw ParseError(std::string("unknown symbol '") + ch + "' in pattern");
    key.push_back(static_cast<char>(idx));
  }
  return key;
}

Json config_to_json(const Configuration& x, CayleyExplorer& ex) {
  Json sites = Json::object();
  std::vector<std::pair<std::uint32_t, int>> items;
  for (const auto& [site, sym] : x.overrides()) {
    items.emplace_back(ex.id_of(site), sym);
  }
  std::sort(items.begin(), items.end());
  for (const auto& [id, sym] : items) {
    sites[ex.word_label(ex.element_at(id))] = x.alphabet().symbol(sym);
  }
  Json out;
  out["default"] = x.alphabet().symbol(x.default_symbol());
  out["sites"] = std::move(sites);
  return out;
}

Json witness_to_json(const ObstructionWitness& w, const LocalCocycle& c) {
  CayleyExplorer& ex = c.explorer();
  Json out;
  out["kind"] = to_string(w.kind);
  out["x"] = config_to_json(w.x, ex);
  if (w.y) out["y"] = config_to_json(*w.y, ex);
  if (w.g1) out["g1"] = ex.word_label(*w.g1);
  if (w.g2) out["g2"] = ex.word_label(*w.g2);
  if (w.v1) out["v1"] = c.target()->label(*w.v1);
  if (w.v2) out["v2"] = c.target()->label(*w.v2);
  if (w.radius >= 0) out["radius"] = w.radius;
  if (w.cutoff >= 0) out["cutoff"] = w.cutoff;
  return out;
}

}  // namespace

GroupPtr parse_group(const std::string& spec) {
  std::vector<GroupPtr> factors;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = spec.find(" x ", start);
    const std::string atom =
        trim(spec.substr(start, sep == std::string::npos ? sep : sep - start));
    if (atom.empty()) {
      throw ParseError("empty group atom at position " + std::to_string(start));
    }
    factors.push_back(parse_atom(atom, start));
    if (sep == std::string::npos) break;
    start = sep + 3;
  }
  return make_product_group(std::move(factors));
}

Element element_from_word_label(CayleyExplorer& explorer, const std::string& label) {
  const GroupOracle& G = explorer.group();
  Element g = G.identity();
  if (label == "1") return g;
  for (char ch : label) {
    const int slot = G.generator_named(std::string(1, ch));
    if (slot < 0) {
      throw ParseError(std::string("unknown generator letter '") + ch + "' in word \"" + label +
                       "\"");
    }
    g = G.multiply(g, G.generators()[static_cast<std::size_t>(slot)]);
  }
  return g;
}

LocalCocycle parse_cocycle(const std::string& text, const LoadOptions& opts) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.contains("format") || doc.at("format").get<std::string>() != kRulesFormat) {
    throw ParseError(std::string("unsupported document format; expected ") + kRulesFormat);
  }
  const GroupPtr G = parse_group(doc.at("group").get<std::string>());
  const GroupPtr H = parse_group(doc.at("target").get<std::string>());
  const Alphabet A = parse_alphabet(doc);
  const int L = doc.at("window").get<int>();
  if (L < 0) throw ParseError("window radius must be nonnegative");

  auto explorer = std::make_shared<CayleyExplorer>(G, opts.max_radius, opts.line_horizon);
  const std::vector<Element> window = explorer->ball(L);

  const Json& rules_json = doc.at("rules");
  std::vector<GeneratorRule> rules(static_cast<std::size_t>(G->pair_count()));
  std::vector<bool> seen(rules.size(), false);
  for (const auto& [name, body] : rules_json.items()) {
    const int slot = G->generator_named(name);
    if (slot < 0 || !G->is_positive_generator(slot)) {
      throw ParseError("rule key \"" + name + "\" is not a positive generator letter");
    }
    const int pair = G->pair_rank(slot);
    seen[static_cast<std::size_t>(pair)] = true;
    GeneratorRule& rule = rules[static_cast<std::size_t>(pair)];
    if (body.contains("table")) {
      rule.kind = GeneratorRule::Kind::table;
      for (const auto& [pattern, value] : body.at("table").items()) {
        rule.table.emplace(names_to_pattern(A, pattern, window.size()),
                           parse_target_label(*H, value.get<std::string>(),
                                              "table entry for " + name));
      }
    } else if (body.contains("form")) {
      if (body.at("form").get<std::string>() != "weighted-site-sum") {
        throw ParseError("unknown rule form \"" + body.at("form").get<std::string>() + "\"");
      }
      rule.kind = GeneratorRule::Kind::site_sum;
      const Json& weights = body.at("weights");
      rule.weights.reserve(window.size());
      for (const Element& site : window) {
        const std::string site_label = explorer->word_label(site);
        if (!weights.contains(site_label)) {
          throw ParseError("weighted-site-sum rule for " + name + " is missing site \"" +
                           site_label + "\"");
        }
        rule.weights.push_back(parse_target_label(*H, weights.at(site_label).get<std::string>(),
                                                  "weight at " + site_label));
      }
    } else {
      throw ParseError("rule for " + name + " needs either \"table\" or \"form\"");
    }
  }
  for (std::size_t p = 0; p < rules.size(); ++p) {
    if (!seen[p]) {
      const int slot = G->positive_generators()[p];
      throw ParseError("missing rule for generator pair \"" + G->generator_name(slot) + "\"");
    }
  }
  return LocalCocycle(std::move(explorer), H, A, L, std::move(rules));
}

LocalCocycle load_cocycle(const std::string& path, const LoadOptions& opts) {
  return parse_cocycle(read_file(path), opts);
}

std::string serialize_cocycle(const LocalCocycle& c) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& G = ex.group();
  const GroupOracle& H = *c.target();
  const Alphabet& A = c.alphabet();
  if (!A.single_char_names()) {
    throw PreconditionError("documents need single-character symbol names");
  }
  Json doc;
  doc["format"] = kRulesFormat;
  doc["group"] = G.spec();
  doc["target"] = H.spec();
  doc["alphabet"] = {{"symbols", A.symbols()}, {"zero", A.symbol(A.zero_index())}};
  doc["window"] = c.window_radius();
  Json rules = Json::object();
  for (int p = 0; p < c.pair_count(); ++p) {
    const int slot = G.positive_generators()[static_cast<std::size_t>(p)];
    const GeneratorRule& rule = c.rule(p);
    Json body;
    if (rule.kind == GeneratorRule::Kind::table) {
      Json table = Json::object();
      enumerate_patterns(A, c.window_sites(), 1ull << 16, [&](const Pattern& q) {
        const std::string key = q.key();
        table[pattern_to_names(A, key)] = H.label(rule.table.at(key));
      });
      body["table"] = std::move(table);
    } else {
      body["form"] = "weighted-site-sum";
      Json weights = Json::object();
      for (std::size_t i = 0; i < c.window_sites().size(); ++i) {
        weights[ex.word_label(c.window_sites()[i])] = H.label(rule.weights[i]);
      }
      body["weights"] = std::move(weights);
    }
    rules[G.generator_name(slot)] = std::move(body);
  }
  doc["rules"] = std::move(rules);
  return doc.dump(2) + "\n";
}

void save_cocycle(const LocalCocycle& c, const std::string& path) {
  write_file(path, serialize_cocycle(c));
}

std::string serialize_result(const RigidityResult& result, const LocalCocycle& c) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& H = *c.target();
  const Alphabet& A = c.alphabet();
  Json doc;
  doc["format"] = kResultFormat;
  doc["group"] = ex.group().spec();
  doc["target"] = H.spec();
  doc["alphabet"] = {{"symbols", A.symbols()}, {"zero", A.symbol(A.zero_index())}};
  doc["window"] = result.window_radius;
  Json n_values = Json::object();
  for (const auto& [r, n] : result.n_values) n_values[std::to_string(r)] = n;
  doc["n_values"] = std::move(n_values);
  Json phi = Json::object();
  for (const auto& [g, value] : result.phi_entries) {
    phi[ex.word_label(g)] = H.label(value);
  }
  doc["phi"] = std::move(phi);
  doc["b_complete"] = result.b_complete;
  Json b = Json::object();
  for (const auto& [key, value] : result.b_entries) {
    b[pattern_to_names(A, key)] = H.label(value);
  }
  doc["b"] = std::move(b);

  Json report;
  report["seed"] = result.seed;
  report["r_phi"] = result.r_phi;
  report["cohomology_r"] = result.cohomology_r;
  report["identity"] = {{"checked", result.identity.checked},
                        {"failures", result.identity.failure_count},
                        {"exhaustive", result.identity.exhaustive}};
  report["independence"] = {{"checked", result.independence.checked},
                            {"failures", result.independence.failure_count}};
  report["locality"] = {{"checked", result.locality.checked},
                        {"failures", result.locality.failure_count}};
  report["cohomology"] = {{"checked", result.cohomology.checked},
                          {"failures", result.cohomology.failure_count},
                          {"samples", result.cohomology.samples},
                          {"exhaustive", result.cohomology.exhaustive},
                          {"seed", result.cohomology.seed}};
  report["obstruction"] =
      result.obstruction ? witness_to_json(*result.obstruction, c) : Json(nullptr);
  doc["report"] = std::move(report);
  return doc.dump(2) + "\n";
}

void save_result(const RigidityResult& result, const LocalCocycle& c, const std::string& path) {
  write_file(path, serialize_result(result, c));
}

ResultDocument parse_result(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.contains("format") || doc.at("format").get<std::string>() != kResultFormat) {
    throw ParseError(std::string("unsupported document format; expected ") + kResultFormat);
  }
  ResultDocument out;
  out.group = doc.at("group").get<std::string>();
  out.target = doc.at("target").get<std::string>();
  out.symbols = doc.at("alphabet").at("symbols").get<std::vector<std::string>>();
  out.zero = doc.at("alphabet").at("zero").get<std::string>();
  out.window = doc.at("window").get<int>();
  out.b_complete = doc.at("b_complete").get<bool>();
  for (const auto& [key, value] : doc.at("phi").items()) {
    out.phi.emplace_back(key, value.get<std::string>());
  }
  for (const auto& [key, value] : doc.at("b").items()) {
    out.b.emplace_back(key, value.get<std::string>());
  }
  for (const auto& [key, value] : doc.at("n_values").items()) {
    out.n_values.emplace(key, value.get<int>());
  }
  const Json& report = doc.at("report");
  out.seed = report.at("seed").get<std::uint64_t>();
  out.cohomology_r = report.at("cohomology_r").get<int>();
  out.samples = report.at("cohomology").at("samples").get<std::uint64_t>();
  out.cohomology_seed = report.at("cohomology").at("seed").get<std::uint64_t>();
  out.had_obstruction = !report.at("obstruction").is_null();
  return out;
}

ResultDocument load_result(const std::string& path) { return parse_result(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
}

}  // namespace ccr
