#include "atomslit/acceptance.hpp"

#include "atomslit/numfmt.hpp"
#include "atomslit/oracle.hpp"
#include "atomslit/report.hpp"
#include "atomslit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace atomslit {

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kTolVisibility = 1e-9;
constexpr double kTolPhase = 1e-9;
constexpr double kTolExactEquality = 1e-12;
constexpr double kTolWhichWay = 1e-8;
constexpr double kTolZExcitation = 1e-8;
constexpr double kTolUnitarity = 1e-8;
constexpr double kTolNormalization = 1e-10;
constexpr double kTolAdditivity = 1e-12;
constexpr double kTolReversibility = 1e-10;
constexpr double kTolConvergence = 1e-10;
constexpr double kQuarticConstant = 5.0;

class Recorder {
 public:
  Recorder(int id, std::string title, double scale) : scale_(scale) {
    result_.id = id;
    result_.title = std::move(title);
  }

  void check(std::string name, double deviation, double tolerance) {
    const double limit = tolerance * scale_;
    const bool ok = scale_ > 0.0 && std::isfinite(deviation) && deviation <= limit;
    result_.checks.push_back({std::move(name), deviation, limit, ok});
  }

  void require(std::string name, bool ok) { check(std::move(name), ok ? 0.0 : 1.0, 0.0); }

  void spec(const ScenarioSpec& s) {
    if (std::find(result_.specs.begin(), result_.specs.end(), s) == result_.specs.end()) result_.specs.push_back(s);
  }

  template <class F>
  CriterionResult run(F&& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      result_.checks.push_back({std::string("exception: ") + e.what(), std::numeric_limits<double>::infinity(),
                                0.0, false});
    }
    return std::move(result_);
  }

 private:
  double scale_;
  CriterionResult result_;
};

std::string tag(const char* what, double x) { return std::string(what) + "=" + format_double(x); }

double phase_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

ScenarioSpec make_spec(Config c, Pulse p, Treatment t, double beta) {
  ScenarioSpec s;
  s.config = c;
  s.pulse = p;
  s.treatment = t;
  s.beta = beta;
  return s;
}

double max_abs_difference(const TwoPathMixture& a, const TwoPathMixture& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& ca = a.components()[k];
    const auto& cb = b.components()[k];
    if (ca.tag() != cb.tag()) return std::numeric_limits<double>::infinity();
    worst = std::max({worst, std::abs(ca.weight() - cb.weight()),
                      (ca.psi1().amplitudes() - cb.psi1().amplitudes()).cwiseAbs().maxCoeff(),
                      (ca.psi2().amplitudes() - cb.psi2().amplitudes()).cwiseAbs().maxCoeff()});
  }
  return worst;
}

const double kBetas[] = {0.05, 0.1, 0.2, 0.3};

CriterionResult criterion_b_short(double scale) {
  return Recorder(1, "config B short pulse: contrast 1-|b|^2 and exp(-|b|^2)", scale).run([](Recorder& r) {
    for (double b : kBetas) {
      const ScenarioSpec first = make_spec(Config::B, Pulse::Short, Treatment::FirstOrder, b);
      const ScenarioSpec exact = make_spec(Config::B, Pulse::Short, Treatment::Exact, b);
      r.spec(first);
      r.spec(exact);
      const double vf = visibility(build(first));
      const double ve = visibility(build(exact));
      r.check(tag("first_order beta", b), std::abs(vf - oracle::contrast_B(b)), kTolVisibility);
      r.check(tag("exact beta", b), std::abs(ve - oracle::contrast_exact(Config::B, b)), kTolVisibility);
      r.check(tag("quartic gap beta", b), std::abs(ve - vf), kQuarticConstant * std::pow(b, 4));
    }
  });
}

CriterionResult criterion_eraser(double scale) {
  return Recorder(2, "eraser on short-pulse B restores full contrast in coincidence", scale).run([](Recorder& r) {
    for (double b : kBetas) {
      const ScenarioSpec spec = make_spec(Config::B, Pulse::Short, Treatment::FirstOrder, b);
      r.spec(spec);
      const TwoPathMixture before = build(spec);
      const TwoPathMixture erased = apply_eraser(before);
      const Conditioned c1 = condition(erased, named_projector("atom1_excited", erased.space()));
      const Conditioned c2 = condition(erased, named_projector("atom2_excited", erased.space()));
      r.check(tag("|1,0> visibility beta", b), std::abs(visibility(c1.mixture) - 1.0), kTolVisibility);
      r.check(tag("|1,0> phase beta", b), phase_distance(phase_offset(c1.mixture), 0.0), kTolPhase);
      r.check(tag("|0,1> visibility beta", b), std::abs(visibility(c2.mixture) - 1.0), kTolVisibility);
      r.check(tag("|0,1> phase beta", b), phase_distance(phase_offset(c2.mixture), kPi), kTolPhase);
      r.check(tag("unconditioned unchanged beta", b), std::abs(visibility(erased) - visibility(before)),
              kTolVisibility);
    }
  });
}

CriterionResult criterion_b_long(double scale) {
  return Recorder(3, "long-pulse B: eraser cannot restore contrast", scale).run([](Recorder& r) {
    for (double b : {0.1, 0.2, 0.3, 0.5}) {
      const ScenarioSpec spec = make_spec(Config::B, Pulse::Long, Treatment::FirstOrder, b);
      r.spec(spec);
      const TwoPathMixture erased = apply_eraser(build(spec));
      for (const char* basis : {"atom1_excited", "atom2_excited", "sym", "antisym"}) {
        const Conditioned c = condition(erased, named_projector(basis, erased.space()));
        r.check(std::string(basis) + " " + tag("beta", b), visibility(c.mixture), kTolVisibility);
      }
    }
  });
}

CriterionResult criterion_c(double scale) {
  return Recorder(4, "config C: contrast 1-2|b|^2, coincidence phases 0/pi, C1 == C2", scale).run([](Recorder& r) {
    for (double b : kBetas) {
      for (Treatment t : {Treatment::FirstOrder, Treatment::Exact}) {
        const ScenarioSpec spec = make_spec(Config::C1, Pulse::Short, t, b);
        r.spec(spec);
        const TwoPathMixture m = build(spec);
        const std::string label = std::string(to_string(t)) + " " + tag("beta", b);
        const double expected =
            t == Treatment::Exact ? oracle::contrast_exact(Config::C1, b) : oracle::contrast_C(b);
        r.check("unconditioned " + label, std::abs(visibility(m) - expected), kTolVisibility);
        const Conditioned c0 = condition(m, named_projector("single_atom_0", m.space()));
        const Conditioned c1 = condition(m, named_projector("single_atom_1", m.space()));
        r.check("|0> visibility " + label, std::abs(visibility(c0.mixture) - 1.0), kTolVisibility);
        r.check("|0> phase " + label, phase_distance(phase_offset(c0.mixture), 0.0), kTolPhase);
        r.check("|1> visibility " + label, std::abs(visibility(c1.mixture) - 1.0), kTolVisibility);
        r.check("|1> phase " + label, phase_distance(phase_offset(c1.mixture), kPi), kTolPhase);
      }
      for (Pulse p : {Pulse::Short, Pulse::Long}) {
        for (Treatment t : {Treatment::FirstOrder, Treatment::Exact}) {
          const ScenarioSpec s1 = make_spec(Config::C1, p, t, b);
          const ScenarioSpec s2 = make_spec(Config::C2, p, t, b);
          r.spec(s2);
          r.check("C1 == C2 " + std::string(to_string(p)) + " " + std::string(to_string(t)) + " " + tag("beta", b),
                  max_abs_difference(build(s1), build(s2)), 0.0);
        }
      }
    }
  });
}

CriterionResult criterion_c_long(double scale) {
  return Recorder(5, "long-pulse C: 1-2|b|^2, dispersive element restores 1", scale).run([](Recorder& r) {
    for (double b : {0.1, 0.3, 0.5}) {
      const ScenarioSpec spec = make_spec(Config::C1, Pulse::Long, Treatment::FirstOrder, b);
      r.spec(spec);
      const TwoPathMixture m = build(spec);
      r.check(tag("unconditioned beta", b), std::abs(visibility(m) - oracle::contrast_C(b)), kTolExactEquality);
      const TwoPathMixture d = apply_dispersive(m, {FreqTag::Shifted});
      r.check(tag("dispersive beta", b), std::abs(visibility(d) - 1.0), kTolVisibility);
    }
  });
}

CriterionResult criterion_whichway(double scale) {
  return Recorder(6, "which-way discrimination exp(-|d-+b|^2), ratio exp(-4bd)", scale).run([](Recorder& r) {
    const double grid[] = {0.2, 0.5, 1.0};
    for (double b : grid) {
      for (double d : grid) {
        const FockVector probe = coherent_state(d).state;
        const double plus = std::norm(inner(probe, coherent_state(b).state));
        const double minus = std::norm(inner(probe, coherent_state(-b).state));
        const oracle::WhichWay w = oracle::whichway_probabilities(b, d);
        const std::string label = tag("beta", b) + " " + tag("delta", d);
        r.check("p_plus " + label, std::abs(plus - w.p_plus), kTolWhichWay);
        r.check("p_minus " + label, std::abs(minus - w.p_minus), kTolWhichWay);
        r.check("ratio " + label, std::abs(minus / plus - std::exp(-4.0 * b * d)), kTolWhichWay);
      }
    }
  });
}

CriterionResult criterion_d(double scale) {
  return Recorder(7, "config D: longitudinal recoil is common mode", scale).run([](Recorder& r) {
    for (double b : {0.1, 0.3}) {
      ScenarioSpec base = make_spec(Config::D, Pulse::Short, Treatment::Exact, b);
      const double v0 = visibility(build(base));
      for (double a : {0.0, 1.0, 3.0}) {
        ScenarioSpec spec = base;
        spec.alpha = a;
        r.spec(spec);
        const TwoPathMixture m = build(spec);
        const std::string label = tag("alpha", a) + " " + tag("beta", b);
        r.check("visibility vs alpha=0 " + label, std::abs(visibility(m) - v0), kTolVisibility);
        r.check("visibility vs exp(-2|b|^2) " + label,
                std::abs(visibility(m) - oracle::contrast_exact(Config::D, b)), kTolVisibility);
        const auto z = *m.space().find_mode("z");
        const AtomicProjector excited(m.space(), excited_projector(m.space(), z), "z_excited");
        r.check("P(z excitation) " + label, std::abs(condition(m, excited).probability - (1.0 - std::exp(-a * a))),
                kTolZExcitation);
      }
    }
  });
}

CriterionResult criterion_e(double scale) {
  return Recorder(8, "config E: quarter beat period acts as an eraser", scale).run([](Recorder& r) {
    for (double g : {0.5, 1.0, 2.0}) {
      for (double b : {0.1, 0.2, 0.3}) {
        ScenarioSpec spec = make_spec(Config::E, Pulse::Short, Treatment::FirstOrder, b);
        spec.coupling_g = g;
        spec.evolve_time = quarter_beat_time(g);
        r.spec(spec);
        const TwoPathMixture beat = build(spec);
        const ScenarioSpec b_spec = make_spec(Config::B, Pulse::Short, Treatment::FirstOrder, b);
        const TwoPathMixture erased = apply_eraser(build(b_spec));
        const std::string label = tag("g", g) + " " + tag("beta", b);
        for (const char* basis : {"atom1_excited", "atom2_excited"}) {
          const double vb = visibility(condition(beat, named_projector(basis, beat.space())).mixture);
          const double ve = visibility(condition(erased, named_projector(basis, erased.space())).mixture);
          r.check(std::string(basis) + " " + label, std::abs(vb - ve), kTolVisibility);
        }
        ScenarioSpec at_zero = spec;
        at_zero.evolve_time = 0.0;
        r.spec(at_zero);
        r.check("t=0 equals first-order B " + label, max_abs_difference(build(at_zero), build(b_spec)), 0.0);
      }
    }
  });
}

CriterionResult criterion_properties(double scale) {
  return Recorder(9, "property suite", scale).run([](Recorder& r) {
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> gauss;
    const std::size_t n = kDefaultTruncation;

    // Unitarity and composition of the displacement operator.
    for (cplx b : {cplx(0.2), cplx(-0.5), cplx(0, 0.4), cplx(1.0, 1.0), cplx(0, 2.0)}) {
      const CMatrix d = displacement_operator(b, n);
      for (int trial = 0; trial < 4; ++trial) {
        CVector v(static_cast<Eigen::Index>(n));
        for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
        r.check("unitarity " + format_complex(b), std::abs((d * v).norm() / v.norm() - 1.0), kTolUnitarity);
      }
      const CMatrix id = d * displacement_operator(-b, n);
      r.check("D(b)D(-b)=I " + format_complex(b),
              (id - CMatrix::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff(), kTolUnitarity);
    }

    // Coherent-state normalization.
    for (cplx b : {cplx(0.0), cplx(0.3), cplx(0, -0.5), cplx(1.0), cplx(1.5, 0.5)}) {
      r.check("normalized " + format_complex(b), std::abs(coherent_state(b, n).state.norm_squared() - 1.0),
              kTolNormalization);
    }

    // Visibility in [0,1], additivity and convergence across every builder.
    struct Case {
      Config c;
      Pulse p;
      Treatment t;
    };
    const Case cases[] = {
        {Config::A, Pulse::Short, Treatment::Exact},       {Config::B, Pulse::Short, Treatment::Exact},
        {Config::B, Pulse::Short, Treatment::FirstOrder},  {Config::B, Pulse::Long, Treatment::FirstOrder},
        {Config::C1, Pulse::Short, Treatment::Exact},      {Config::C1, Pulse::Short, Treatment::FirstOrder},
        {Config::C2, Pulse::Long, Treatment::FirstOrder},  {Config::D, Pulse::Short, Treatment::Exact},
        {Config::E, Pulse::Short, Treatment::FirstOrder},  {Config::E, Pulse::Long, Treatment::FirstOrder},
    };
    for (const Case& k : cases) {
      for (double b : {0.0, 0.1, 0.3, 0.5}) {
        ScenarioSpec spec = make_spec(k.c, k.p, k.t, b);
        if (k.c == Config::D) spec.alpha = 1.0;
        if (k.c == Config::E) {
          spec.coupling_g = 1.0;
          spec.evolve_time = 0.3;
        }
        r.spec(spec);
        const std::string label = std::string(to_string(k.c)) + " " + std::string(to_string(k.p)) + " " +
                                  std::string(to_string(k.t)) + " " + tag("beta", b);
        const TwoPathMixture m = build(spec);
        const double v = visibility(m);
        r.check("visibility in [0,1] " + label, std::max({0.0, -v, v - 1.0}), 0.0);

        const PatternScan whole = pattern(m, 64);
        double additivity = 0.0;
        std::vector<double> sum(whole.phis.size(), 0.0);
        for (const auto& c : m.components()) {
          if (c.mean_intensity() == 0.0) continue;
          const PatternScan part = pattern(TwoPathMixture(c), 64);
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += part.intensities[i];
        }
        for (std::size_t i = 0; i < sum.size(); ++i) {
          additivity = std::max(additivity, std::abs(sum[i] - whole.intensities[i]) / spec.epsilon / spec.epsilon);
        }
        r.check("incoherent additivity " + label, additivity, kTolAdditivity);
        r.check("sampled vs closed-form visibility " + label, std::abs(whole.sampled_visibility() - v), 1e-6);

        ScenarioSpec wider = spec;
        wider.nmax = spec.nmax + 4;
        const TwoPathMixture mw = build(wider);
        r.check("nmax 16->20 visibility " + label, std::abs(visibility(mw) - v), kTolConvergence);
        if (v > 1e-6) {
          r.check("nmax 16->20 phase " + label, phase_distance(phase_offset(mw), phase_offset(m)), kTolConvergence);
        }
        r.check("nmax 16->20 mean intensity " + label,
                std::abs(mw.mean_intensity() - m.mean_intensity()) / m.mean_intensity(), kTolConvergence);

        if (k.c == Config::A || k.c == Config::B || k.c == Config::E) {
          const TwoPathMixture back = apply_eraser_inverse(apply_eraser(m));
          r.check("eraser reversibility " + label, max_abs_difference(back, m), kTolReversibility);
        }
      }
    }

    // Coherent amplitudes are stable under a wider truncation.
    for (double b : {0.1, 0.3, 0.5}) {
      const CVector a16 = coherent_state(b, 16).state.amplitudes();
      const CVector a20 = coherent_state(b, 20).state.amplitudes();
      r.check(tag("amplitudes nmax 16->20 beta", b), (a20.head(16) - a16).cwiseAbs().maxCoeff(), kTolConvergence);
    }
  });
}

}  // namespace

bool CriterionResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* CriterionResult::worst() const {
  const Check* out = nullptr;
  double worst_ratio = -1.0;
  for (const auto& c : checks) {
    double ratio = 0.0;
    if (!c.passed) ratio = std::numeric_limits<double>::infinity();
    else if (c.tolerance > 0.0) ratio = c.deviation / c.tolerance;
    if (ratio > worst_ratio || out == nullptr) {
      worst_ratio = ratio;
      out = &c;
    }
  }
  return out;
}

std::vector<CriterionResult> run_acceptance(double tol_scale) {
  return {
      criterion_b_short(tol_scale), criterion_eraser(tol_scale), criterion_b_long(tol_scale),
      criterion_c(tol_scale),       criterion_c_long(tol_scale), criterion_whichway(tol_scale),
      criterion_d(tol_scale),       criterion_e(tol_scale),      criterion_properties(tol_scale),
  };
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed(); });
}

nlohmann::ordered_json acceptance_json(const std::vector<CriterionResult>& results, double tol_scale) {
  nlohmann::ordered_json j;
  j["version"] = std::string(version());
  j["tolerance_scale"] = tol_scale;
  j["all_passed"] = all_passed(results);
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["passed"] = r.passed();
    double max_dev = 0.0;
    for (const auto& chk : r.checks) max_dev = std::max(max_dev, chk.deviation);
    c["max_deviation"] = max_dev;
    if (const Check* w = r.worst()) {
      c["worst_check"] = {{"name", w->name}, {"deviation", w->deviation}, {"tolerance", w->tolerance}};
    }
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& chk : r.checks) {
      if (!chk.passed) {
        failures.push_back({{"name", chk.name}, {"deviation", chk.deviation}, {"tolerance", chk.tolerance}});
      }
    }
    c["failures"] = std::move(failures);
    c["checks"] = r.checks.size();
    nlohmann::ordered_json specs = nlohmann::ordered_json::array();
    for (const auto& s : r.specs) {
      nlohmann::ordered_json sj = nlohmann::ordered_json::object();
      for (const auto& [k, v] : s.to_key_values()) sj[k] = v;
      specs.push_back(std::move(sj));
    }
    c["specs"] = std::move(specs);
    list.push_back(std::move(c));
  }
  j["criteria"] = std::move(list);
  return j;
}

std::string acceptance_summary(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.passed() ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title;
    if (const Check* w = r.worst()) {
      out << "  (worst: " << w->name << ", dev " << format_double(w->deviation) << ", tol "
          << format_double(w->tolerance) << ")";
    }
    out << "\n";
    for (const auto& c : r.checks) {
      if (!c.passed) out << "       failed: " << c.name << " dev " << format_double(c.deviation) << "\n";
    }
  }
  return out.str();
}

}  // namespace atomslit
