#include "atomslit/acceptance.hpp"
#include "atomslit/errors.hpp"
#include "atomslit/oracle.hpp"
#include "atomslit/report.hpp"
#include "atomslit/scenarios.hpp"
#include "atomslit/transforms.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace atomslit;

namespace {

Pipeline make_pipeline(bool eraser, const std::vector<std::string>& dispersive,
                       const std::optional<std::string>& coincidence) {
  Pipeline p;
  p.eraser = eraser;
  for (const auto& t : dispersive) p.dispersive.insert(parse_freq_tag(t));
  p.coincidence = coincidence;
  return p;
}

py::dict row_dict(const SweepRow& r) {
  py::dict d;
  d["beta"] = r.beta;
  d["visibility_exact"] = r.visibility_exact;
  d["visibility_first_order"] = r.visibility_first_order;
  d["oracle"] = r.oracle;
  d["deviation"] = r.deviation;
  d["post_selection_probability"] = r.post_selection_probability;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Double-slit interference with trapped-atom slits";
  m.attr("__version__") = std::string(version());

  auto physics = py::register_exception<PhysicsDomainError>(m, "PhysicsDomainError", PyExc_ValueError);
  py::register_exception<TruncationError>(m, "TruncationError", physics.ptr());
  py::register_exception<EmptyEnsembleError>(m, "EmptyEnsembleError", physics.ptr());

  py::enum_<Config>(m, "Config")
      .value("A", Config::A)
      .value("B", Config::B)
      .value("C1", Config::C1)
      .value("C2", Config::C2)
      .value("D", Config::D)
      .value("E", Config::E);
  py::enum_<Pulse>(m, "Pulse").value("SHORT", Pulse::Short).value("LONG", Pulse::Long);
  py::enum_<Treatment>(m, "Treatment").value("EXACT", Treatment::Exact).value("FIRST_ORDER", Treatment::FirstOrder);
  py::enum_<FreqTag>(m, "FreqTag")
      .value("ELASTIC", FreqTag::Elastic)
      .value("SHIFTED", FreqTag::Shifted)
      .value("SYM", FreqTag::Sym)
      .value("ANTISYM", FreqTag::Antisym);

  py::class_<ScenarioSpec>(m, "ScenarioSpec")
      .def(py::init([](const std::string& config, const std::string& pulse, cplx beta, cplx alpha, double epsilon,
                       double coupling_g, double evolve_time, std::optional<std::string> treatment,
                       std::size_t nmax) {
             ScenarioSpec s;
             s.config = parse_config(config);
             s.pulse = parse_pulse(pulse);
             s.beta = beta;
             s.alpha = alpha;
             s.epsilon = epsilon;
             s.coupling_g = coupling_g;
             s.evolve_time = evolve_time;
             if (treatment) {
               s.treatment = parse_treatment(*treatment);
             } else if (s.config == Config::E && s.pulse == Pulse::Short) {
               s.treatment = Treatment::FirstOrder;
             }
             s.nmax = nmax;
             return s;
           }),
           py::arg("config") = "A", py::arg("pulse") = "short", py::arg("beta") = cplx{}, py::arg("alpha") = cplx{},
           py::arg("epsilon") = 0.01, py::arg("coupling_g") = 0.0, py::arg("evolve_time") = 0.0,
           py::arg("treatment") = py::none(), py::arg("nmax") = kDefaultTruncation)
      .def_readwrite("config", &ScenarioSpec::config)
      .def_readwrite("pulse", &ScenarioSpec::pulse)
      .def_readwrite("beta", &ScenarioSpec::beta)
      .def_readwrite("alpha", &ScenarioSpec::alpha)
      .def_readwrite("epsilon", &ScenarioSpec::epsilon)
      .def_readwrite("coupling_g", &ScenarioSpec::coupling_g)
      .def_readwrite("evolve_time", &ScenarioSpec::evolve_time)
      .def_readwrite("treatment", &ScenarioSpec::treatment)
      .def_readwrite("nmax", &ScenarioSpec::nmax)
      .def("validate", &ScenarioSpec::validate)
      .def("to_text", &ScenarioSpec::to_text)
      .def_static("from_text", [](const std::string& t) { return ScenarioSpec::from_text(t); })
      .def("__eq__", [](const ScenarioSpec& a, const ScenarioSpec& b) { return a == b; })
      .def("__repr__", [](const ScenarioSpec& s) {
        std::string r = "ScenarioSpec(";
        bool first = true;
        for (const auto& [k, v] : s.to_key_values()) {
          r += (first ? "" : ", ") + k + "=" + v;
          first = false;
        }
        return r + ")";
      });

  py::class_<TwoPathComponent>(m, "TwoPathComponent")
      .def_property_readonly("psi1", [](const TwoPathComponent& c) { return c.psi1().amplitudes(); })
      .def_property_readonly("psi2", [](const TwoPathComponent& c) { return c.psi2().amplitudes(); })
      .def_property_readonly("tag", &TwoPathComponent::tag)
      .def_property_readonly("weight", &TwoPathComponent::weight)
      .def("coherence", &TwoPathComponent::coherence)
      .def("mean_intensity", &TwoPathComponent::mean_intensity);

  py::class_<TwoPathMixture>(m, "TwoPathMixture")
      .def_property_readonly("components", &TwoPathMixture::components)
      .def_property_readonly("mode_dims", [](const TwoPathMixture& x) { return x.space().mode_dims(); })
      .def_property_readonly("labels", [](const TwoPathMixture& x) { return x.space().labels(); })
      .def("__len__", &TwoPathMixture::size)
      .def("mean_intensity", &TwoPathMixture::mean_intensity)
      .def("visibility", [](const TwoPathMixture& x) { return visibility(x); })
      .def("phase_offset", [](const TwoPathMixture& x) { return phase_offset(x); })
      .def("intensity_at", [](const TwoPathMixture& x, double phi) { return intensity_at(x, phi); });

  py::class_<PatternScan>(m, "PatternScan")
      .def_readonly("phis", &PatternScan::phis)
      .def_readonly("intensities", &PatternScan::intensities)
      .def_readonly("visibility", &PatternScan::visibility)
      .def_readonly("phase_offset", &PatternScan::phase_offset)
      .def_readonly("condition", &PatternScan::condition)
      .def_readonly("post_selection_probability", &PatternScan::post_selection_probability)
      .def("sampled_visibility", &PatternScan::sampled_visibility);

  m.def("coherent_state",
        [](cplx beta, std::size_t nmax) {
          auto cs = coherent_state(beta, nmax);
          return py::make_tuple(cs.state.amplitudes(), cs.truncation_residual);
        },
        py::arg("beta"), py::arg("nmax") = kDefaultTruncation,
        "Truncated coherent state amplitudes and the norm lost to truncation.");
  m.def("displacement_operator", &displacement_operator, py::arg("beta"), py::arg("nmax") = kDefaultTruncation);
  m.def("safe_truncation", &safe_truncation, py::arg("beta"), py::arg("floor_dim") = kDefaultTruncation);

  m.def("build", &build, py::arg("spec"), "Two-path mixture for a scenario.");
  m.def("apply_eraser", &apply_eraser);
  m.def("apply_eraser_inverse", &apply_eraser_inverse);
  m.def("evolve_beat", &evolve_beat, py::arg("mixture"), py::arg("g"), py::arg("t"));
  m.def("beat_frequency", &beat_frequency);
  m.def("quarter_beat_time", &quarter_beat_time);
  m.def("apply_dispersive", [](const TwoPathMixture& x, const std::vector<std::string>& tags) {
    std::set<FreqTag> s;
    for (const auto& t : tags) s.insert(parse_freq_tag(t));
    return apply_dispersive(x, s);
  });
  m.def("condition",
        [](const TwoPathMixture& x, const std::string& projector) {
          const auto c = condition(x, named_projector(projector, x.space()));
          return py::make_tuple(c.mixture, c.probability);
        },
        py::arg("mixture"), py::arg("projector"),
        "Coincidence with a named atomic projector; returns (mixture, probability).");
  m.attr("PROJECTORS") = std::vector<std::string>(kProjectorNames.begin(), kProjectorNames.end());

  m.def("pattern",
        [](const ScenarioSpec& spec, bool eraser, const std::vector<std::string>& dispersive,
           std::optional<std::string> coincidence, std::size_t samples) {
          return run_pattern(spec, make_pipeline(eraser, dispersive, coincidence), samples);
        },
        py::arg("spec"), py::arg("eraser") = false, py::arg("dispersive") = std::vector<std::string>{},
        py::arg("coincidence") = py::none(), py::arg("samples") = kDefaultPatternSamples);
  m.def("sweep",
        [](const ScenarioSpec& spec, const std::string& beta_range, bool eraser,
           const std::vector<std::string>& dispersive, std::optional<std::string> coincidence, unsigned threads) {
          const auto rows = run_sweep(spec, make_pipeline(eraser, dispersive, coincidence),
                                      BetaRange::parse(beta_range), threads);
          py::list out;
          for (const auto& r : rows) out.append(row_dict(r));
          return out;
        },
        py::arg("spec"), py::arg("beta_range"), py::arg("eraser") = false,
        py::arg("dispersive") = std::vector<std::string>{}, py::arg("coincidence") = py::none(),
        py::arg("threads") = 0u);
  m.def("whichway",
        [](double beta, double delta, std::size_t nmax) {
          const auto r = run_whichway(beta, delta, nmax);
          return py::module_::import("json").attr("loads")(whichway_json(r).dump());
        },
        py::arg("beta"), py::arg("delta"), py::arg("nmax") = kDefaultTruncation);
  m.def("acceptance",
        [](double tol_scale) {
          const auto results = run_acceptance(tol_scale);
          return py::module_::import("json").attr("loads")(acceptance_json(results, tol_scale).dump());
        },
        py::arg("tol_scale") = 1.0, "Run the reproduction suite; returns the report as a dict.");

  auto o = m.def_submodule("oracle", "Closed-form contrast and which-way results");
  o.def("contrast_B", &oracle::contrast_B);
  o.def("contrast_C", &oracle::contrast_C);
  o.def("contrast_exact", [](const std::string& c, cplx b) { return oracle::contrast_exact(parse_config(c), b); });
  o.def("contrast_first_order",
        [](const std::string& c, cplx b) { return oracle::contrast_first_order(parse_config(c), b); });
  o.def("whichway_probabilities", [](cplx beta, cplx delta) {
    const auto w = oracle::whichway_probabilities(beta, delta);
    py::dict d;
    d["p_plus"] = w.p_plus;
    d["p_minus"] = w.p_minus;
    d["fractional_error"] = w.fractional_error;
    d["detect_prob"] = w.detect_prob;
    return d;
  });
  o.def("tradeoff_curve", [](double beta, const std::vector<double>& errors) {
    py::list out;
    for (const auto& p : oracle::tradeoff_curve(beta, errors)) out.append(py::make_tuple(p.fractional_error, p.delta, p.detect_prob));
    return out;
  });
  o.def("longpulse_contrast",
        [](const std::string& c, cplx b, const std::set<std::string>& flipped) {
          return oracle::longpulse_contrast(parse_config(c), b, flipped);
        },
        py::arg("config"), py::arg("beta"), py::arg("flipped") = std::set<std::string>{});
}
