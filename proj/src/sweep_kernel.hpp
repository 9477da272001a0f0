#ifndef CCR_SRC_SWEEP_KERNEL_HPP
#define CCR_SRC_SWEEP_KERNEL_HPP

// Internal helpers for the sampled/exhaustive sweeps. Configurations are
// flattened to dense symbol arrays indexed by explorer id, and per-element
// evaluation plans pre-resolve every window read to an id, so the inner
// loops do no group arithmetic and no hashing of elements.

#include <cstdint>
#include <string>
#include <vector>

#include "ccr/cocycle.hpp"
#include "ccr/explorer.hpp"

namespace ccr::internal {

// Symbols by explorer id; ids at or past `size` read `dflt`.
struct DenseView {
  const std::uint8_t* vals = nullptr;
  std::size_t size = 0;
  std::uint8_t dflt = 0;

  std::uint8_t get(std::uint32_t id) const { return id < size ? vals[id] : dflt; }
};

struct StepPlan {
  int pair = 0;
  bool inverted = false;
  std::vector<std::uint32_t> sites;  // one id per window slot
};

// Evaluates c(g, shift(t, x)) against a dense x.
struct EvalPlan {
  std::vector<StepPlan> steps;  // evaluation order: rightmost telescope factor first
};

struct Scratch {
  Element acc, tmp, val;
  std::string key;
};

inline EvalPlan build_plan(const LocalCocycle& c, const Element& g, const Element& t) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& G = ex.group();
  const std::vector<int> word = ex.geodesic_word(g);
  std::vector<Element> prefix;  // prefix[k] = product of the first k letters
  prefix.reserve(word.size() + 1);
  prefix.push_back(G.identity());
  for (int i : word) {
    prefix.push_back(G.multiply(prefix.back(), G.generators()[static_cast<std::size_t>(i)]));
  }
  const Element lead = G.multiply(G.inverse(t), G.inverse(g));

  EvalPlan plan;
  plan.steps.reserve(word.size());
  for (std::size_t k = word.size(); k >= 1; --k) {
    const int slot = word[k - 1];
    StepPlan step;
    step.pair = G.pair_rank(slot);
    step.inverted = !G.is_positive_generator(slot);
    const Element base =
        G.multiply(lead, step.inverted ? prefix[k - 1] : prefix[k]);
    step.sites.reserve(c.window_sites().size());
    for (const Element& h : c.window_sites()) {
      step.sites.push_back(ex.id_of(G.multiply(base, h)));
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

inline void rule_value_into(const LocalCocycle& c, int pair, const std::string& key, Element& out,
                            Element& tmp) {
  const GeneratorRule& rule = c.rule(pair);
  if (rule.kind == GeneratorRule::Kind::table) {
    out = rule.table.find(key)->second;
    return;
  }
  const GroupOracle& H = *c.target();
  out = H.identity();
  for (std::size_t m = 0; m < key.size(); ++m) {
    const int reps = static_cast<unsigned char>(key[m]);
    for (int k = 0; k < reps; ++k) {
      H.multiply_into(out, out, rule.weights[m]);
      (void)tmp;
    }
  }
}

// Result lands in s.acc.
inline void eval_plan(const LocalCocycle& c, const EvalPlan& plan, DenseView x, Scratch& s) {
  const GroupOracle& H = *c.target();
  s.acc = H.identity();
  const std::size_t w = c.window_sites().size();
  s.key.resize(w);
  for (const StepPlan& step : plan.steps) {
    for (std::size_t m = 0; m < w; ++m) {
      s.key[m] = static_cast<char>(x.get(step.sites[m]));
    }
    rule_value_into(c, step.pair, s.key, s.val, s.tmp);
    if (step.inverted) {
      H.inverse_into(s.tmp, s.val);
      H.multiply_into(s.acc, s.tmp, s.acc);
    } else {
      H.multiply_into(s.acc, s.val, s.acc);
    }
  }
}

// Dense evaluator for the transfer value of zero-padded patterns on B(3L):
// b(q) = c(g_q, q)^-1 phi(g_q) with g_q the canonical element just past
// N(|support| + L).
struct TransferKernel {
  std::vector<std::uint32_t> domain_norm_end;  // ball_end(s) for s = 0..3L
  std::vector<EvalPlan> plans;                 // per support norm s
  std::vector<Element> phis;                   // phi(g_s)
  std::uint8_t zero = 0;                       // the alphabet's symbol 0

  // q must be dense over the B(3L) prefix with default 0.
  void eval(const LocalCocycle& c, DenseView q, Scratch& s, Element& out) const {
    int support = 0;
    for (std::size_t i = q.size; i-- > 0;) {
      if (q.vals[i] != zero) {
        // ids are sorted by norm, so the last nonzero site has the max norm.
        int lo = 0;
        while (domain_norm_end[static_cast<std::size_t>(lo)] <= i) ++lo;
        support = lo;
        break;
      }
    }
    eval_plan(c, plans[static_cast<std::size_t>(support)], q, s);
    const GroupOracle& H = *c.target();
    H.inverse_into(s.tmp, s.acc);
    H.multiply_into(out, s.tmp, phis[static_cast<std::size_t>(support)]);
  }
};

}  // namespace ccr::internal

#endif  // CCR_SRC_SWEEP_KERNEL_HPP
