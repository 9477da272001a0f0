#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccr/errors.hpp"
#include "ccr/io.hpp"
#include "ccr/rigidity.hpp"

namespace py = pybind11;
using namespace ccr;

namespace {

// GroupPtr is a pointer-to-const; wrap it in a value class for python.
struct PyGroup {
  GroupPtr ptr;

  const GroupOracle& get() const { return *ptr; }
};

Element element_from_data(const PyGroup& g, const std::vector<std::int32_t>& data) {
  Element e{data};
  if (!g.get().valid(e)) {
    throw PreconditionError("payload is not a canonical element of " + g.get().spec());
  }
  return e;
}

std::unordered_map<std::string, Element> transfer_from_dict(
    const Alphabet& a, const std::map<std::string, Element>& entries) {
  std::unordered_map<std::string, Element> out;
  for (const auto& [names, value] : entries) {
    std::string key;
    for (char ch : names) {
      const int idx = a.index_of(std::string(1, ch));
      if (idx < 0) throw PreconditionError(std::string("unknown symbol '") + ch + "'");
      key.push_back(static_cast<char>(idx));
    }
    out.emplace(key, value);
  }
  return out;
}

std::map<std::string, std::string> table_with_names(const LocalCocycle& c,
                                                    const std::map<std::string, Element>& table) {
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : table) {
    std::string names;
    for (char ch : key) names += c.alphabet().symbol(static_cast<unsigned char>(ch));
    out.emplace(names, c.target()->label(value));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(ccr, m) {
  m.doc() = "continuous cocycles over full shifts: group geometry, verification, rigidity";

  py::register_exception<RadiusExceededError>(m, "RadiusExceededError");
  py::register_exception<EnumerationCapError>(m, "EnumerationCapError");
  py::register_exception<PreconditionError>(m, "PreconditionError");
  py::register_exception<InfeasibleError>(m, "InfeasibleError");
  py::register_exception<ParseError>(m, "ParseErrorCcr");

  py::class_<Element>(m, "Element")
      .def(py::init<>())
      .def_readonly("data", &Element::data)
      .def("__eq__", [](const Element& a, const Element& b) { return a == b; })
      .def("__hash__", [](const Element& e) { return ElementHash{}(e); })
      .def("__repr__", [](const Element& e) {
        std::string s = "Element([";
        for (std::size_t i = 0; i < e.data.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(e.data[i]);
        }
        return s + "])";
      });

  py::class_<PyGroup>(m, "Group")
      .def_property_readonly("spec", [](const PyGroup& g) { return g.get().spec(); })
      .def("identity", [](const PyGroup& g) { return g.get().identity(); })
      .def("multiply", [](const PyGroup& g, const Element& a, const Element& b) {
        return g.get().multiply(a, b);
      })
      .def("inverse", [](const PyGroup& g, const Element& a) { return g.get().inverse(a); })
      .def("label", [](const PyGroup& g, const Element& e) { return g.get().label(e); })
      .def("parse_label", [](const PyGroup& g, const std::string& s) { return g.get().parse_label(s); })
      .def("generators", [](const PyGroup& g) { return g.get().generators(); })
      .def("generator_name", [](const PyGroup& g, int i) { return g.get().generator_name(i); })
      .def("element", &element_from_data, py::arg("data"))
      .def("__repr__", [](const PyGroup& g) { return "Group(\"" + g.get().spec() + "\")"; });

  m.def("parse_group", [](const std::string& spec) { return PyGroup{parse_group(spec)}; });

  py::class_<EndsReport>(m, "EndsReport")
      .def_readonly("cut_radius", &EndsReport::cut_radius)
      .def_readonly("exploration_cutoff", &EndsReport::exploration_cutoff)
      .def_readonly("unbounded_components", &EndsReport::unbounded_components)
      .def_readonly("bounded_components", &EndsReport::bounded_components)
      .def_readonly("n_of_r", &EndsReport::n_of_r)
      .def_readonly("cutoff_limited", &EndsReport::cutoff_limited);

  py::class_<GroupPath>(m, "GroupPath")
      .def_readonly("lo", &GroupPath::lo)
      .def_readonly("vertices", &GroupPath::vertices)
      .def("hi", &GroupPath::hi)
      .def("at", &GroupPath::at);

  py::class_<CayleyExplorer, std::shared_ptr<CayleyExplorer>>(m, "Explorer")
      .def(py::init([](const PyGroup& g, int max_radius, int line_horizon) {
             return std::make_shared<CayleyExplorer>(g.ptr, max_radius, line_horizon);
           }),
           py::arg("group"), py::arg("max_radius") = kDefaultMaxRadius,
           py::arg("line_horizon") = kDefaultLineHorizon)
      .def_property_readonly("group", [](const CayleyExplorer& ex) { return PyGroup{ex.group_ptr()}; })
      .def("word_norm", &CayleyExplorer::word_norm)
      .def("distance", &CayleyExplorer::distance)
      .def("ball", &CayleyExplorer::ball)
      .def("sphere", &CayleyExplorer::sphere)
      .def("geodesic_word", &CayleyExplorer::geodesic_word)
      .def("word_label", &CayleyExplorer::word_label)
      .def("geodesic_segment", &CayleyExplorer::geodesic_segment)
      .def("biinfinite_segment", &CayleyExplorer::biinfinite_segment)
      .def("is_geodesic", &CayleyExplorer::is_geodesic)
      .def("l_neighborhood", &CayleyExplorer::l_neighborhood)
      .def("half_geodesic_intersection",
           [](CayleyExplorer& ex, const GroupPath& p, int L) {
             const auto check = ex.half_geodesic_intersection(p, L);
             return py::make_tuple(check.ok, check.witness);
           })
      .def("component_report", &CayleyExplorer::component_report)
      .def("path_avoiding_ball", &CayleyExplorer::path_avoiding_ball);

  py::class_<Alphabet>(m, "Alphabet")
      .def(py::init<std::vector<std::string>, int>(), py::arg("symbols"), py::arg("zero_index") = 0)
      .def_property_readonly("symbols", &Alphabet::symbols)
      .def_property_readonly("zero_index", &Alphabet::zero_index);

  py::class_<Configuration>(m, "Configuration")
      .def(py::init([](const PyGroup& g, const Alphabet& a, int default_symbol) {
             return Configuration(g.ptr, a, default_symbol);
           }),
           py::arg("group"), py::arg("alphabet"), py::arg("default_symbol"))
      .def_static("zeros",
                  [](const PyGroup& g, const Alphabet& a) { return Configuration::zeros(g.ptr, a); })
      .def("at", &Configuration::at)
      .def("set", &Configuration::set)
      .def_property_readonly("default_symbol", &Configuration::default_symbol)
      .def("__eq__", [](const Configuration& a, const Configuration& b) { return a == b; });

  m.def("shift", [](const Element& g, const Configuration& x) { return shift(g, x); });
  m.def("support_norm",
        [](const Configuration& x, CayleyExplorer& ex) { return support_norm(x, ex); });
  m.def("truncate", [](const Configuration& x, int r, CayleyExplorer& ex) {
    return truncate(x, r, ex);
  });

  py::class_<CocycleReport>(m, "CocycleReport")
      .def_readonly("checked", &CocycleReport::checked)
      .def_readonly("failure_count", &CocycleReport::failure_count)
      .def_readonly("exhaustive", &CocycleReport::exhaustive)
      .def("valid", &CocycleReport::valid);

  py::class_<LocalCocycle>(m, "LocalCocycle")
      .def_property_readonly("window_radius", &LocalCocycle::window_radius)
      .def_property_readonly("group_spec",
                             [](const LocalCocycle& c) { return c.group().spec(); })
      .def_property_readonly("target", [](const LocalCocycle& c) { return PyGroup{c.target()}; })
      .def_property_readonly("alphabet", &LocalCocycle::alphabet)
      .def_property_readonly("explorer", &LocalCocycle::explorer_ptr)
      .def("evaluate", &LocalCocycle::evaluate)
      .def("zero_configuration", &LocalCocycle::zero_configuration);

  m.def(
      "check_identity",
      [](const LocalCocycle& c, int r_check, int samples, std::uint64_t seed, int threads) {
        IdentityCheckOptions opts;
        opts.samples_per_pair = samples;
        opts.seed = seed;
        opts.threads = threads;
        return check_identity(c, r_check, opts);
      },
      py::arg("cocycle"), py::arg("r_check") = 3, py::arg("samples") = 1000, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def("make_hom_cocycle",
        [](const std::shared_ptr<CayleyExplorer>& ex, const PyGroup& target, const Alphabet& a,
           const std::vector<Element>& phi0) { return make_hom_cocycle(ex, target.ptr, a, phi0); });
  m.def("make_twisted",
        [](const std::shared_ptr<CayleyExplorer>& ex, const PyGroup& target, const Alphabet& a,
           const std::vector<Element>& phi0, const std::map<std::string, Element>& b0, int rho) {
          return make_twisted(ex, target.ptr, a, phi0, transfer_from_dict(a, b0), rho);
        });

  m.def("compute_phi", &compute_phi);
  m.def("compute_b", &compute_b);
  m.def("choose_gx", &choose_gx);
  m.def("n_of", &n_of, py::arg("explorer"), py::arg("r"), py::arg("r_max") = -1);

  py::class_<ObstructionWitness>(m, "ObstructionWitness")
      .def_property_readonly("kind",
                             [](const ObstructionWitness& w) { return std::string(to_string(w.kind)); })
      .def_readonly("x", &ObstructionWitness::x)
      .def_readonly("g1", &ObstructionWitness::g1)
      .def_readonly("g2", &ObstructionWitness::g2)
      .def_readonly("v1", &ObstructionWitness::v1)
      .def_readonly("v2", &ObstructionWitness::v2);

  py::class_<CohomologyReport>(m, "CohomologyReport")
      .def_readonly("checked", &CohomologyReport::checked)
      .def_readonly("failure_count", &CohomologyReport::failure_count)
      .def_readonly("samples", &CohomologyReport::samples)
      .def_readonly("seed", &CohomologyReport::seed)
      .def_readonly("exhaustive", &CohomologyReport::exhaustive);

  py::class_<RigidityResult>(m, "RigidityResult")
      .def_readonly("window_radius", &RigidityResult::window_radius)
      .def_readonly("b_complete", &RigidityResult::b_complete)
      .def_readonly("n_values", &RigidityResult::n_values)
      .def_readonly("cohomology", &RigidityResult::cohomology)
      .def_readonly("obstruction", &RigidityResult::obstruction)
      .def("ok", &RigidityResult::ok)
      .def("phi_table",
           [](const RigidityResult& r, const LocalCocycle& c) {
             std::map<std::string, std::string> out;
             for (const auto& [g, v] : r.phi_entries) {
               out.emplace(c.explorer().word_label(g), c.target()->label(v));
             }
             return out;
           })
      .def("b_table", [](const RigidityResult& r, const LocalCocycle& c) {
        return table_with_names(c, r.b_entries);
      });

  m.def(
      "rigidify",
      [](const LocalCocycle& c, int r_phi, int r_check, int identity_samples, int cohomology_r,
         int cohomology_samples, int independence_configs, int locality_pairs, std::uint64_t seed,
         int threads) {
        RigidifyOptions opts;
        opts.r_phi = r_phi;
        opts.r_check = r_check;
        opts.identity_samples = identity_samples;
        opts.cohomology_r = cohomology_r;
        opts.cohomology_samples = cohomology_samples;
        opts.independence_configs = independence_configs;
        opts.locality_pairs = locality_pairs;
        opts.seed = seed;
        opts.threads = threads;
        return rigidify(c, opts);
      },
      py::arg("cocycle"), py::arg("r_phi") = 4, py::arg("r_check") = 3,
      py::arg("identity_samples") = 200, py::arg("cohomology_r") = 4,
      py::arg("cohomology_samples") = 10000, py::arg("independence_configs") = 20,
      py::arg("locality_pairs") = 100, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("build_b_table", [](const LocalCocycle& c, std::uint64_t cap) {
        return table_with_names(c, build_b_table(c, cap));
      },
      py::arg("cocycle"), py::arg("cap") = std::uint64_t{1} << 16);

  m.def("load_cocycle", [](const std::string& path, int max_radius) {
        return load_cocycle(path, {max_radius, kDefaultLineHorizon});
      },
      py::arg("path"), py::arg("max_radius") = kDefaultMaxRadius);
  m.def("parse_cocycle", [](const std::string& text, int max_radius) {
        return parse_cocycle(text, {max_radius, kDefaultLineHorizon});
      },
      py::arg("text"), py::arg("max_radius") = kDefaultMaxRadius);
  m.def("serialize_cocycle", &serialize_cocycle);
  m.def("serialize_result", &serialize_result);
  m.def("save_result", &save_result);
}
