#include "ccr/cocycle.hpp"

#include <algorithm>
#include <future>
#include <unordered_set>

#include "ccr/errors.hpp"
#include "ccr/rng.hpp"
#include "sweep_kernel.hpp"

namespace ccr {

namespace {

constexpr std::uint64_t kTableCap = 1ull << 16;

}  // namespace

LocalCocycle::LocalCocycle(std::shared_ptr<CayleyExplorer> explorer, GroupPtr target,
                           Alphabet alphabet, int window_radius, std::vector<GeneratorRule> rules)
    : explorer_(std::move(explorer)),
      target_(std::move(target)),
      alphabet_(std::move(alphabet)),
      window_radius_(window_radius),
      rules_(std::move(rules)) {
  if (!explorer_ || !target_) throw PreconditionError("null explorer or target group");
  if (window_radius_ < 0) throw PreconditionError("window radius must be nonnegative");
  window_sites_ = explorer_->ball(window_radius_);
  const int pairs = explorer_->group().pair_count();
  if (static_cast<int>(rules_.size()) != pairs) {
    throw PreconditionError("expected one rule per positive generator (" + std::to_string(pairs) +
                            "), got " + std::to_string(rules_.size()));
  }
  for (std::size_t p = 0; p < rules_.size(); ++p) {
    GeneratorRule& rule = rules_[p];
    if (rule.kind == GeneratorRule::Kind::site_sum) {
      if (rule.weights.size() != window_sites_.size()) {
        throw PreconditionError("weighted-site-sum rule needs one weight per window site");
      }
      for (const Element& w : rule.weights) {
        if (!target_->valid(w)) throw PreconditionError("weight is not a target group element");
      }
      continue;
    }
    const auto count = pattern_count(alphabet_, window_sites_.size());
    if (!count || *count > kTableCap) {
      throw EnumerationCapError("rule table over " + std::to_string(window_sites_.size()) +
                                " sites is too large; use a closed-form rule");
    }
    if (rule.table.size() != *count) {
      // Name a missing pattern for the error message.
      std::string missing;
      enumerate_patterns(alphabet_, window_sites_, kTableCap, [&](const Pattern& q) {
        if (missing.empty() && !rule.table.contains(q.key())) missing = q.key();
      });
      std::string printable;
      for (char ch : missing) {
        printable += alphabet_.symbol(static_cast<unsigned char>(ch));
      }
      throw PreconditionError("rule table for generator pair " + std::to_string(p) +
                              " is incomplete; first missing pattern: " + printable);
    }
    for (const auto& [key, value] : rule.table) {
      if (!target_->valid(value)) {
        throw PreconditionError("table value is not a target group element");
      }
    }
  }
}

Element LocalCocycle::rule_value(int pair, const std::string& key) const {
  Element out, tmp;
  internal::rule_value_into(*this, pair, key, out, tmp);
  return out;
}

Configuration LocalCocycle::zero_configuration() const {
  return Configuration::zeros(explorer_->group_ptr(), alphabet_);
}

namespace {

// One telescope factor: the rule lookup for generator slot `slot` applied to
// the configuration translated by `base`, i.e. the pattern h -> x(base h).
void window_key(const LocalCocycle& c, const Element& base, const Configuration& x,
                std::string& key) {
  const GroupOracle& G = c.explorer().group();
  key.clear();
  Element site;
  for (const Element& h : c.window_sites()) {
    G.multiply_into(site, base, h);
    key.push_back(static_cast<char>(x.at(site)));
  }
}

Element evaluate_word(const LocalCocycle& c, const std::vector<int>& word, const Configuration& x,
                      std::vector<std::pair<int, Pattern>>* trace) {
  const GroupOracle& G = c.explorer().group();
  const GroupOracle& H = *c.target();
  std::vector<Element> prefix;
  prefix.reserve(word.size() + 1);
  prefix.push_back(G.identity());
  for (int i : word) {
    prefix.push_back(G.multiply(prefix.back(), G.generators()[static_cast<std::size_t>(i)]));
  }
  const Element g_inv = G.inverse(prefix.back());

  Element acc = H.identity();
  Element val, tmp;
  std::string key;
  for (std::size_t k = word.size(); k >= 1; --k) {
    const int slot = word[k - 1];
    const int pair = G.pair_rank(slot);
    const bool inverted = !G.is_positive_generator(slot);
    const Element base = G.multiply(g_inv, inverted ? prefix[k - 1] : prefix[k]);
    window_key(c, base, x, key);
    internal::rule_value_into(c, pair, key, val, tmp);
    if (trace) {
      Pattern q;
      q.domain = c.window_sites();
      for (char ch : key) q.values.push_back(static_cast<unsigned char>(ch));
      trace->emplace_back(pair, std::move(q));
    }
    if (inverted) {
      H.inverse_into(tmp, val);
      H.multiply_into(acc, tmp, acc);
    } else {
      H.multiply_into(acc, val, acc);
    }
  }
  return acc;
}

}  // namespace

Element LocalCocycle::evaluate(const Element& g, const Configuration& x) const {
  return evaluate_word(*this, explorer_->geodesic_word(g), x, nullptr);
}

Element LocalCocycle::evaluate_along_word(const std::vector<int>& word,
                                          const Configuration& x) const {
  return evaluate_word(*this, word, x, nullptr);
}

std::vector<std::pair<int, Pattern>> LocalCocycle::evaluation_windows(
    const Element& g, const Configuration& x) const {
  std::vector<std::pair<int, Pattern>> trace;
  evaluate_word(*this, explorer_->geodesic_word(g), x, &trace);
  return trace;
}

namespace {

struct PairTask {
  Element g, h;
  internal::EvalPlan plan_gh;   // c(gh, x)
  internal::EvalPlan plan_g_h;  // c(g, h x)
  internal::EvalPlan plan_h;    // c(h, x)
};

}  // namespace

CocycleReport check_identity(const LocalCocycle& c, int r_check, const IdentityCheckOptions& opts) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& G = ex.group();
  const Alphabet& A = c.alphabet();
  const int L = c.window_radius();
  const int window_radius = 2 * r_check + L;
  ex.ensure_radius(window_radius);

  const std::uint32_t window = ex.ball_end(window_radius);
  const auto window_count = pattern_count(A, window);
  bool exhaustive = opts.exhaustive ? *opts.exhaustive : (window_count && *window_count <= opts.cap);
  if (exhaustive && (!window_count || *window_count > opts.cap)) {
    throw EnumerationCapError("exhaustive identity check needs " +
                              std::to_string(window) + " sites enumerated past the cap");
  }

  // Plans per (g, h) pair; translation by h is baked into the plan sites.
  const std::vector<Element> ball = ex.ball(r_check);
  std::vector<PairTask> tasks;
  tasks.reserve(ball.size() * ball.size());
  for (const Element& g : ball) {
    for (const Element& h : ball) {
      PairTask task;
      task.g = g;
      task.h = h;
      task.plan_gh = internal::build_plan(c, G.multiply(g, h), G.identity());
      task.plan_g_h = internal::build_plan(c, g, h);
      task.plan_h = internal::build_plan(c, h, G.identity());
      tasks.push_back(std::move(task));
    }
  }

  CocycleReport report;
  report.seed = opts.seed;
  report.exhaustive = exhaustive;
  const std::uint64_t per_pair = exhaustive ? *window_count
                                            : static_cast<std::uint64_t>(opts.samples_per_pair);
  const std::uint8_t zero = static_cast<std::uint8_t>(A.zero_index());
  const auto symbols = static_cast<std::uint32_t>(A.size());

  auto run_range = [&](std::size_t begin, std::size_t end, CocycleReport& local) {
    internal::Scratch s;
    Element lhs, mid, rhs;
    std::vector<std::uint8_t> vals(window, zero);
    const internal::DenseView x{vals.data(), vals.size(), zero};
    for (std::size_t t = begin; t < end; ++t) {
      const PairTask& task = tasks[t];
      for (std::uint64_t n = 0; n < per_pair; ++n) {
        if (exhaustive) {
          std::uint64_t code = n;
          for (std::uint32_t i = window; i-- > 0;) {
            vals[i] = static_cast<std::uint8_t>(code % symbols);
            code /= symbols;
          }
        } else {
          Rng rng(mix_seed(mix_seed(opts.seed, t), n));
          for (std::uint32_t i = 0; i < window; ++i) {
            vals[i] = static_cast<std::uint8_t>(rng.below(symbols));
          }
        }
        internal::eval_plan(c, task.plan_gh, x, s);
        lhs = s.acc;
        internal::eval_plan(c, task.plan_g_h, x, s);
        mid = s.acc;
        internal::eval_plan(c, task.plan_h, x, s);
        c.target()->multiply_into(rhs, mid, s.acc);
        ++local.checked;
        if (lhs == rhs) continue;
        ++local.failure_count;
        if (local.failures.size() < opts.max_stored_failures) {
          CocycleFailure f;
          f.g = task.g;
          f.h = task.h;
          f.window.domain = ex.ball(window_radius);
          f.window.values.assign(vals.begin(), vals.end());
          f.left = lhs;
          f.right = rhs;
          local.failures.push_back(std::move(f));
        }
        if (opts.stop_on_first) return;
      }
    }
  };

  const int threads = std::max(1, opts.threads);
  if (threads == 1 || opts.stop_on_first || tasks.size() < 2) {
    run_range(0, tasks.size(), report);
  } else {
    const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(threads) * 4,
                                                     tasks.size());
    std::vector<CocycleReport> parts(chunks);
    std::vector<std::future<void>> jobs;
    for (std::size_t k = 0; k < chunks; ++k) {
      const std::size_t begin = tasks.size() * k / chunks;
      const std::size_t end = tasks.size() * (k + 1) / chunks;
      jobs.push_back(std::async(std::launch::async,
                                [&run_range, &parts, k, begin, end] { run_range(begin, end, parts[k]); }));
    }
    for (auto& j : jobs) j.get();
    for (CocycleReport& part : parts) {
      report.checked += part.checked;
      report.failure_count += part.failure_count;
      for (CocycleFailure& f : part.failures) {
        if (report.failures.size() < opts.max_stored_failures) {
          report.failures.push_back(std::move(f));
        }
      }
    }
  }
  return report;
}

LocalCocycle make_hom_cocycle(std::shared_ptr<CayleyExplorer> explorer, GroupPtr target,
                              const Alphabet& alphabet, const std::vector<Element>& phi0) {
  const int pairs = explorer->group().pair_count();
  if (static_cast<int>(phi0.size()) != pairs) {
    throw PreconditionError("need one target value per positive generator");
  }
  std::vector<GeneratorRule> rules(static_cast<std::size_t>(pairs));
  for (int p = 0; p < pairs; ++p) {
    GeneratorRule& rule = rules[static_cast<std::size_t>(p)];
    rule.kind = GeneratorRule::Kind::table;
    for (int a = 0; a < alphabet.size(); ++a) {
      rule.table.emplace(std::string(1, static_cast<char>(a)), phi0[static_cast<std::size_t>(p)]);
    }
  }
  return LocalCocycle(std::move(explorer), std::move(target), alphabet, 0, std::move(rules));
}

LocalCocycle make_twisted(std::shared_ptr<CayleyExplorer> explorer, GroupPtr target,
                          const Alphabet& alphabet, const std::vector<Element>& phi0,
                          const std::unordered_map<std::string, Element>& b0, int rho) {
  CayleyExplorer& ex = *explorer;
  const GroupOracle& G = ex.group();
  const GroupOracle& H = *target;
  const int pairs = G.pair_count();
  if (static_cast<int>(phi0.size()) != pairs) {
    throw PreconditionError("need one target value per positive generator");
  }
  if (rho < 0) throw PreconditionError("transfer radius must be nonnegative");
  const int L = rho + 1;
  const std::vector<Element> inner = ex.ball(rho);
  const std::vector<Element> window = ex.ball(L);

  enumerate_patterns(alphabet, inner, kTableCap, [&](const Pattern& q) {
    if (!b0.contains(q.key())) {
      throw PreconditionError("transfer table is missing a pattern over the inner ball");
    }
  });

  // Slot of each window site, to read translated inner-ball values off a
  // window pattern directly.
  std::unordered_map<Element, std::size_t, ElementHash> window_slot;
  for (std::size_t i = 0; i < window.size(); ++i) window_slot.emplace(window[i], i);

  std::vector<GeneratorRule> rules(static_cast<std::size_t>(pairs));
  for (int p = 0; p < pairs; ++p) {
    const Element& s = G.generators()[static_cast<std::size_t>(G.positive_generators()[static_cast<std::size_t>(p)])];
    const Element s_inv = G.inverse(s);
    std::vector<std::size_t> shifted_slot;
    shifted_slot.reserve(inner.size());
    for (const Element& h : inner) {
      shifted_slot.push_back(window_slot.at(G.multiply(s_inv, h)));
    }
    GeneratorRule& rule = rules[static_cast<std::size_t>(p)];
    rule.kind = GeneratorRule::Kind::table;
    std::string shifted_key(inner.size(), '\0');
    enumerate_patterns(alphabet, window, kTableCap, [&](const Pattern& q) {
      const std::string key = q.key();
      for (std::size_t i = 0; i < inner.size(); ++i) {
        shifted_key[i] = key[shifted_slot[i]];
      }
      const Element& left = b0.at(shifted_key);
      const Element& right = b0.at(key.substr(0, inner.size()));
      rule.table.emplace(key,
                         H.multiply(left, H.multiply(phi0[static_cast<std::size_t>(p)],
                                                     H.inverse(right))));
    });
  }
  return LocalCocycle(std::move(explorer), std::move(target), alphabet, L, std::move(rules));
}

bool dependence_window_check(const LocalCocycle& c, const GroupPath& path, const Configuration& x,
                             const Configuration& y) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& G = ex.group();
  const std::vector<Element> hood = ex.l_neighborhood(path.vertices, c.window_radius());
  for (const Element& g : hood) {
    if (x.at(g) != y.at(g)) {
      throw PreconditionError(
          "configurations differ on the window neighborhood of the path (at " + G.label(g) + ")");
    }
  }
  const Element end_inv = G.inverse(path.vertices.back());
  const Element start_inv = G.inverse(path.vertices.front());
  const GroupOracle& H = *c.target();
  const Element vx = H.multiply(c.evaluate(end_inv, x), H.inverse(c.evaluate(start_inv, x)));
  const Element vy = H.multiply(c.evaluate(end_inv, y), H.inverse(c.evaluate(start_inv, y)));
  return vx == vy;
}

}  // namespace ccr
