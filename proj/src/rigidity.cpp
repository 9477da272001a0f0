#include "ccr/rigidity.hpp"

#include <algorithm>
#include <future>
#include <unordered_set>

#include "ccr/errors.hpp"
#include "ccr/rng.hpp"
#include "sweep_kernel.hpp"

namespace ccr {

Element compute_phi(const LocalCocycle& c, const Element& g) {
  return c.evaluate(g, c.zero_configuration());
}

PhiMap build_phi_table(const LocalCocycle& c, int r_phi) {
  PhiMap phi;
  const Configuration zero = c.zero_configuration();
  for (const Element& g : c.explorer().ball(r_phi)) {
    phi.emplace(g, c.evaluate(g, zero));
  }
  return phi;
}

HomReport check_phi_homomorphism(const LocalCocycle& c, int r) {
  HomReport report;
  const GroupOracle& H = *c.target();
  const std::vector<Element> ball = c.explorer().ball(r);
  PhiMap phi = build_phi_table(c, 2 * r);
  for (const Element& g : ball) {
    for (const Element& h : ball) {
      const Element& left = phi.at(c.explorer().group().multiply(g, h));
      const Element right = H.multiply(phi.at(g), phi.at(h));
      ++report.checked;
      if (left != right) report.failures.push_back({g, h, left, right});
    }
  }
  return report;
}

int n_of(CayleyExplorer& explorer, int r, int r_max) {
  if (r_max < 0) r_max = 2 * r + 4;
  return explorer.component_report(r, r_max).n_of_r;
}

Element choose_gx(const LocalCocycle& c, const Configuration& x) {
  if (!x.in_zero_class()) {
    throw PreconditionError("base-point selection requires default symbol 0");
  }
  CayleyExplorer& ex = c.explorer();
  const int r = support_norm(x, ex) + c.window_radius();
  const int target_norm = n_of(ex, r) + 1;
  const std::uint32_t begin = ex.sphere_begin(target_norm);
  if (begin >= ex.ball_end(target_norm)) {
    throw InfeasibleError("no element of norm " + std::to_string(target_norm) +
                          " in " + ex.group().spec());
  }
  return ex.element_at(begin);
}

Element compute_b(const LocalCocycle& c, const Configuration& x) {
  const Element gx = choose_gx(c, x);
  const GroupOracle& H = *c.target();
  return H.multiply(H.inverse(c.evaluate(gx, x)), compute_phi(c, gx));
}

const char* to_string(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::independence_failure:
      return "independence-failure";
    case ObstructionKind::locality_failure:
      return "locality-failure";
    case ObstructionKind::no_avoiding_path:
      return "no-avoiding-path";
  }
  return "?";
}

std::optional<ObstructionWitness> check_independence(const LocalCocycle& c, const Configuration& x,
                                                     const std::vector<Element>& candidates) {
  if (candidates.empty()) return std::nullopt;
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& H = *c.target();
  const int floor_norm = n_of(ex, support_norm(x, ex) + c.window_radius());
  for (const Element& g : candidates) {
    if (ex.word_norm(g) <= floor_norm) {
      throw PreconditionError("candidate norm must exceed " + std::to_string(floor_norm));
    }
  }
  Element first_value;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Element& g = candidates[i];
    Element value = H.multiply(H.inverse(c.evaluate(g, x)), compute_phi(c, g));
    if (i == 0) {
      first_value = std::move(value);
      continue;
    }
    if (value != first_value) {
      ObstructionWitness w{ObstructionKind::independence_failure, x};
      w.g1 = candidates[0];
      w.g2 = g;
      w.v1 = first_value;
      w.v2 = value;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<ObstructionWitness> check_locality(const LocalCocycle& c, const Configuration& x,
                                                 const Configuration& y) {
  CayleyExplorer& ex = c.explorer();
  for (const Element& g : ex.ball(3 * c.window_radius())) {
    if (x.at(g) != y.at(g)) {
      throw PreconditionError("configurations must agree on the 3L ball");
    }
  }
  const Element bx = compute_b(c, x);
  const Element by = compute_b(c, y);
  if (bx == by) return std::nullopt;
  ObstructionWitness w{ObstructionKind::locality_failure, x};
  w.y = y;
  w.g1 = choose_gx(c, x);
  w.g2 = choose_gx(c, y);
  w.v1 = bx;
  w.v2 = by;
  return w;
}

std::optional<ObstructionWitness> check_avoiding_path(const LocalCocycle& c,
                                                      const Configuration& x, const Element& g1,
                                                      const Element& g2, int r_max) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& G = ex.group();
  const int r = support_norm(x, ex) + c.window_radius();
  const auto path = ex.path_avoiding_ball(G.inverse(g1), G.inverse(g2), r, r_max);
  if (path) return std::nullopt;
  ObstructionWitness w{ObstructionKind::no_avoiding_path, x};
  w.g1 = g1;
  w.g2 = g2;
  w.radius = r;
  w.cutoff = r_max;
  return w;
}

bool replay_witness(const LocalCocycle& c, const ObstructionWitness& w) {
  switch (w.kind) {
    case ObstructionKind::independence_failure:
      return check_independence(c, w.x, {*w.g1, *w.g2}).has_value();
    case ObstructionKind::locality_failure:
      return check_locality(c, w.x, *w.y).has_value();
    case ObstructionKind::no_avoiding_path:
      return check_avoiding_path(c, w.x, *w.g1, *w.g2, w.cutoff).has_value();
  }
  return false;
}

TransferFunction::TransferFunction(const LocalCocycle& c)
    : c_(c), sites_(c.explorer().ball(3 * c.window_radius())) {}

Element TransferFunction::value(const Configuration& x) {
  return value_for_key(restriction(x, sites_).key());
}

Element TransferFunction::value_for_key(const std::string& key) {
  const auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Pattern p;
  p.domain = sites_;
  p.values.reserve(key.size());
  for (char ch : key) p.values.push_back(static_cast<unsigned char>(ch));
  const Configuration padded = totalize(c_.explorer().group_ptr(), c_.alphabet(), p,
                                        c_.alphabet().zero_index());
  Element value = compute_b(c_, padded);
  memo_.emplace(key, value);
  return value;
}

std::map<std::string, Element> build_b_table(const LocalCocycle& c, std::uint64_t cap) {
  TransferFunction tf(c);
  enumerate_patterns(c.alphabet(), tf.domain_sites(), cap,
                     [&](const Pattern& p) { tf.value_for_key(p.key()); });
  return tf.observed();
}

namespace {

// Plans and phi values for the dense transfer evaluation, one entry per
// possible support norm of a B(3L) pattern.
internal::TransferKernel build_transfer_kernel(const LocalCocycle& c,
                                               std::map<int, int>* n_values) {
  CayleyExplorer& ex = c.explorer();
  const int L = c.window_radius();
  internal::TransferKernel kernel;
  kernel.zero = static_cast<std::uint8_t>(c.alphabet().zero_index());
  for (int s = 0; s <= 3 * L; ++s) {
    kernel.domain_norm_end.push_back(ex.ball_end(s));
    const int n = n_of(ex, s + L);
    if (n_values) n_values->emplace(s + L, n);
    const std::uint32_t begin = ex.sphere_begin(n + 1);
    if (begin >= ex.ball_end(n + 1)) {
      throw InfeasibleError("no element of norm " + std::to_string(n + 1) + " in " +
                            ex.group().spec());
    }
    const Element gx = ex.element_at(begin);
    kernel.plans.push_back(internal::build_plan(c, gx, ex.group().identity()));
    kernel.phis.push_back(compute_phi(c, gx));
  }
  return kernel;
}

struct GTask {
  Element g;
  internal::EvalPlan plan;
  Element phi;
  std::vector<std::uint32_t> shifted_sites;  // ids of g^-1 h for h in B(3L)
  std::uint32_t truncation_end = 0;          // ball_end(|g| + 3L)
};

}  // namespace

CohomologyReport check_cohomology(const LocalCocycle& c, const PhiMap& phi, int r,
                                  const SweepOptions& opts) {
  CayleyExplorer& ex = c.explorer();
  const GroupOracle& G = ex.group();
  const GroupOracle& H = *c.target();
  const Alphabet& A = c.alphabet();
  const int L = c.window_radius();

  internal::TransferKernel transfer = build_transfer_kernel(c, nullptr);
  const std::uint32_t b_domain = ex.ball_end(3 * L);
  const std::uint32_t sample_domain = ex.ball_end(r + 3 * L);

  std::vector<GTask> tasks;
  for (const Element& g : ex.ball(r)) {
    GTask task;
    task.g = g;
    task.plan = internal::build_plan(c, g, G.identity());
    const auto it = phi.find(g);
    task.phi = it != phi.end() ? it->second : compute_phi(c, g);
    const Element g_inv = G.inverse(g);
    task.shifted_sites.reserve(b_domain);
    for (std::uint32_t i = 0; i < b_domain; ++i) {
      task.shifted_sites.push_back(ex.id_of(G.multiply(g_inv, ex.element_at(i))));
    }
    task.truncation_end = ex.ball_end(ex.word_norm(g) + 3 * L);
    tasks.push_back(std::move(task));
  }
  // Descending truncation radius, so one zeroing pass per sample serves all g.
  std::stable_sort(tasks.begin(), tasks.end(),
                   [](const GTask& a, const GTask& b) { return a.truncation_end > b.truncation_end; });

  const auto window_count = pattern_count(A, sample_domain);
  const bool exhaustive =
      opts.exhaustive ? *opts.exhaustive : (window_count && *window_count <= opts.cap);
  if (exhaustive && (!window_count || *window_count > opts.cap)) {
    throw EnumerationCapError("exhaustive cohomology sweep exceeds the enumeration cap");
  }
  const std::uint64_t total = exhaustive ? *window_count
                                         : static_cast<std::uint64_t>(opts.samples);
  const std::vector<Element> sample_sites = ex.ball(r + 3 * L);

  CohomologyReport report;
  report.seed = opts.seed;
  report.samples = total;
  report.exhaustive = exhaustive;

  const std::uint8_t zero = static_cast<std::uint8_t>(A.zero_index());
  const auto symbols = static_cast<std::uint32_t>(A.size());

  auto run_range = [&](std::uint64_t begin, std::uint64_t end, CohomologyReport& local) {
    internal::Scratch s;
    Element lhs, b_shift, b_center, rhs;
    std::vector<std::uint8_t> raw(sample_domain, zero);
    std::vector<std::uint8_t> vals(sample_domain, zero);
    std::vector<std::uint8_t> q(b_domain, zero);
    const internal::DenseView x{vals.data(), vals.size(), zero};
    const internal::DenseView qv{q.data(), q.size(), zero};
    for (std::uint64_t n = begin; n < end; ++n) {
      std::uint8_t dflt = zero;
      if (exhaustive) {
        std::uint64_t code = n;
        for (std::uint32_t i = sample_domain; i-- > 0;) {
          raw[i] = static_cast<std::uint8_t>(code % symbols);
          code /= symbols;
        }
      } else {
        Rng rng(mix_seed(opts.seed, n));
        dflt = static_cast<std::uint8_t>(rng.below(symbols));
        for (std::uint32_t i = 0; i < sample_domain; ++i) {
          raw[i] = static_cast<std::uint8_t>(rng.below(symbols));
        }
      }
      (void)dflt;  // the truncation below makes the tail 0 regardless
      std::copy(raw.begin(), raw.end(), vals.begin());
      std::uint32_t cut = sample_domain;
      for (const GTask& task : tasks) {
        while (cut > task.truncation_end) {
          vals[--cut] = zero;
        }
        internal::eval_plan(c, task.plan, x, s);
        lhs = s.acc;
        for (std::uint32_t i = 0; i < b_domain; ++i) {
          q[i] = x.get(task.shifted_sites[i]);
        }
        transfer.eval(c, qv, s, b_shift);
        for (std::uint32_t i = 0; i < b_domain; ++i) {
          q[i] = vals[i];
        }
        transfer.eval(c, qv, s, b_center);
        H.multiply_into(rhs, b_shift, task.phi);
        H.inverse_into(s.tmp, b_center);
        H.multiply_into(rhs, rhs, s.tmp);
        ++local.checked;
        if (lhs == rhs) continue;
        ++local.failure_count;
        if (local.failures.size() < opts.max_stored_failures) {
          CohomologyFailure f;
          f.g = task.g;
          f.window.domain = std::vector<Element>(sample_sites.begin(),
                                                 sample_sites.begin() + task.truncation_end);
          f.window.values.assign(vals.begin(), vals.begin() + task.truncation_end);
          f.left = lhs;
          f.right = rhs;
          local.failures.push_back(std::move(f));
        }
      }
    }
  };

  const int threads = std::max(1, opts.threads);
  if (threads == 1 || total < 64) {
    run_range(0, total, report);
  } else {
    const std::uint64_t chunks = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads) * 8,
                                                         total);
    std::vector<CohomologyReport> parts(static_cast<std::size_t>(chunks));
    std::vector<std::future<void>> jobs;
    for (std::uint64_t k = 0; k < chunks; ++k) {
      const std::uint64_t begin = total * k / chunks;
      const std::uint64_t end = total * (k + 1) / chunks;
      jobs.push_back(std::async(std::launch::async, [&run_range, &parts, k, begin, end] {
        run_range(begin, end, parts[static_cast<std::size_t>(k)]);
      }));
    }
    for (auto& j : jobs) j.get();
    for (CohomologyReport& part : parts) {
      report.checked += part.checked;
      report.failure_count += part.failure_count;
      for (CohomologyFailure& f : part.failures) {
        if (report.failures.size() < opts.max_stored_failures) {
          report.failures.push_back(std::move(f));
        }
      }
    }
  }
  return report;
}

Configuration splice_configurations(CayleyExplorer& explorer, const GroupPath& line, int L,
                                    const Configuration& x, const Configuration& y) {
  if (line.lo > 0 || line.hi() < 0) throw PreconditionError("line must contain index 0");
  std::vector<Element> pos, neg;
  for (int k = 0; k <= line.hi(); ++k) pos.push_back(line.at(k));
  for (int k = line.lo; k <= 0; ++k) neg.push_back(line.at(k));
  const std::vector<Element> hood_pos = explorer.l_neighborhood(pos, L);
  const std::vector<Element> hood_neg = explorer.l_neighborhood(neg, L);
  std::unordered_set<Element, ElementHash> in_pos(hood_pos.begin(), hood_pos.end());
  for (const Element& g : hood_neg) {
    if (in_pos.contains(g) && x.at(g) != y.at(g)) {
      throw PreconditionError("configurations disagree on the half-neighborhood overlap at " +
                              explorer.group().label(g));
    }
  }
  Configuration z = Configuration::zeros(x.group(), x.alphabet());
  for (const Element& g : hood_pos) z.set(g, x.at(g));
  for (const Element& g : hood_neg) {
    if (!in_pos.contains(g)) z.set(g, y.at(g));
  }
  return z;
}

namespace {

Configuration random_zero_default_config(const LocalCocycle& c, int support_radius,
                                         std::uint64_t seed) {
  CayleyExplorer& ex = c.explorer();
  const Alphabet& A = c.alphabet();
  Configuration x = c.zero_configuration();
  Rng rng(seed);
  for (const Element& site : ex.ball(support_radius)) {
    x.set(site, static_cast<int>(rng.below(static_cast<std::uint32_t>(A.size()))));
  }
  return x;
}

std::vector<Element> independence_candidates(const LocalCocycle& c, const Configuration& x,
                                             int cap) {
  CayleyExplorer& ex = c.explorer();
  const int n = n_of(ex, support_norm(x, ex) + c.window_radius());
  std::vector<Element> candidates;
  for (int radius : {n + 1, n + 2}) {
    const std::uint32_t begin = ex.sphere_begin(radius);
    const std::uint32_t end = ex.ball_end(radius);
    const std::uint32_t take =
        std::min<std::uint32_t>(end - begin, static_cast<std::uint32_t>(cap / 2));
    for (std::uint32_t i = begin; i < begin + take; ++i) {
      candidates.push_back(ex.element_at(i));
    }
  }
  return candidates;
}

}  // namespace

RigidityResult rigidify(const LocalCocycle& c, const RigidifyOptions& opts) {
  CayleyExplorer& ex = c.explorer();
  const int L = c.window_radius();
  RigidityResult result;
  result.window_radius = L;
  result.seed = opts.seed;
  result.cohomology_r = opts.cohomology_r;
  result.r_phi = opts.r_phi;

  if (opts.r_check > 0) {
    IdentityCheckOptions gate;
    gate.samples_per_pair = opts.identity_samples;
    gate.seed = opts.seed;
    gate.cap = opts.cap;
    gate.threads = opts.threads;
    gate.max_stored_failures = opts.max_stored_failures;
    result.identity = check_identity(c, opts.r_check, gate);
    if (!result.identity.valid()) {
      throw PreconditionError("cocycle identity fails on B(" + std::to_string(opts.r_check) +
                              "): " + std::to_string(result.identity.failure_count) +
                              " failing triples; run the identity check for witnesses");
    }
  }

  internal::TransferKernel transfer_probe [[maybe_unused]] =
      build_transfer_kernel(c, &result.n_values);

  const int phi_radius = std::max(opts.r_phi, opts.cohomology_r);
  const Configuration zero = c.zero_configuration();
  for (const Element& g : ex.ball(phi_radius)) {
    result.phi_entries.emplace_back(g, c.evaluate(g, zero));
  }
  PhiMap phi(result.phi_entries.begin(), result.phi_entries.end());

  // Base-point independence sweep: directed single-site configurations plus
  // seeded random ones.
  {
    std::vector<Configuration> xs;
    for (const Element& site : ex.ball(1)) {
      for (int a = 0; a < c.alphabet().size(); ++a) {
        if (a == c.alphabet().zero_index()) continue;
        Configuration x = c.zero_configuration();
        x.set(site, a);
        xs.push_back(std::move(x));
      }
    }
    for (int i = 0; i < opts.independence_configs; ++i) {
      xs.push_back(random_zero_default_config(c, std::max(1, 3 * L),
                                              mix_seed(mix_seed(opts.seed, 1), i)));
    }
    for (const Configuration& x : xs) {
      const auto witness =
          check_independence(c, x, independence_candidates(c, x, opts.independence_candidates));
      ++result.independence.checked;
      if (witness) {
        ++result.independence.failure_count;
        if (result.independence.failures.size() < opts.max_stored_failures) {
          result.independence.failures.push_back(*witness);
        }
      }
    }
  }

  // Transfer table: full when enumerable, otherwise whatever the sweeps touch.
  TransferFunction tf(c);
  const auto b_count = pattern_count(c.alphabet(), tf.domain_sites().size());
  result.b_complete = b_count && *b_count <= opts.cap;
  if (result.b_complete) {
    enumerate_patterns(c.alphabet(), tf.domain_sites(), opts.cap,
                       [&](const Pattern& p) { tf.value_for_key(p.key()); });
  } else {
    tf.value(zero);
  }

  // Locality sweep: pairs agreeing on B(3L) with different tails.
  {
    const int shell = 3 * L + 2;
    for (int i = 0; i < opts.locality_pairs; ++i) {
      Configuration x = random_zero_default_config(c, shell, mix_seed(mix_seed(opts.seed, 2), i));
      Configuration y = x;
      Rng rng(mix_seed(mix_seed(opts.seed, 3), i));
      const std::uint32_t begin = ex.sphere_begin(3 * L + 1);
      const std::uint32_t end = ex.ball_end(shell);
      for (std::uint32_t id = begin; id < end; ++id) {
        y.set(ex.element_at(id),
              static_cast<int>(rng.below(static_cast<std::uint32_t>(c.alphabet().size()))));
      }
      const auto witness = check_locality(c, x, y);
      ++result.locality.checked;
      if (witness) {
        ++result.locality.failure_count;
        if (result.locality.failures.size() < opts.max_stored_failures) {
          result.locality.failures.push_back(*witness);
        }
      }
      if (!result.b_complete) {
        tf.value(x);
        tf.value(y);
      }
    }
  }

  {
    SweepOptions sweep;
    sweep.samples = opts.cohomology_samples;
    sweep.seed = mix_seed(opts.seed, 4);
    sweep.exhaustive = opts.exhaustive;
    sweep.cap = opts.cap;
    sweep.max_stored_failures = opts.max_stored_failures;
    sweep.threads = opts.threads;
    result.cohomology = check_cohomology(c, phi, opts.cohomology_r, sweep);
  }

  result.b_entries = tf.observed();

  if (!result.independence.failures.empty()) {
    result.obstruction = result.independence.failures.front();
  } else if (!result.locality.failures.empty()) {
    result.obstruction = result.locality.failures.front();
  } else if (result.cohomology.failure_count > 0 && !result.cohomology.failures.empty()) {
    // Trace the first failing equation back to a locality or independence
    // witness on its truncated configuration.
    const CohomologyFailure& f = result.cohomology.failures.front();
    const Configuration xt = totalize(ex.group_ptr(), c.alphabet(), f.window,
                                      c.alphabet().zero_index());
    const Configuration gxt = shift(f.g, xt);
    for (const Configuration& probe : {xt, gxt}) {
      auto w = check_locality(c, truncate(probe, 3 * L, ex), probe);
      if (w) {
        result.obstruction = *w;
        break;
      }
      w = check_independence(c, probe,
                             independence_candidates(c, probe, opts.independence_candidates));
      if (w) {
        result.obstruction = *w;
        break;
      }
    }
  }
  return result;
}

}  // namespace ccr
