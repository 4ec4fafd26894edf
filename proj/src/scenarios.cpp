#include "atomslit/scenarios.hpp"

#include "atomslit/errors.hpp"
#include "atomslit/numfmt.hpp"
#include "atomslit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace atomslit {

namespace {

// Beyond this the per-path first-order amplitudes stop making sense and the
// golden-rule weights turn negative for C.
constexpr double kMaxPerturbativeBeta2 = 0.5;
// Caps the auto-sized longitudinal mode (dense projectors scale as dim^2).
constexpr double kMaxAlpha2 = 25.0;
constexpr std::size_t kMaxTruncation = 64;

void require_config(const ScenarioSpec& spec, std::initializer_list<Config> ok, const char* who) {
  if (std::find(ok.begin(), ok.end(), spec.config) == ok.end()) {
    throw std::invalid_argument(std::string(who) + ": wrong config " + std::string(to_string(spec.config)));
  }
}

void require_pulse(const ScenarioSpec& spec, Pulse p, const char* who) {
  if (spec.pulse != p) {
    throw std::invalid_argument(std::string(who) + ": wrong pulse " + std::string(to_string(spec.pulse)));
  }
}

double elastic_amplitude(cplx beta) { return std::sqrt(1.0 - std::norm(beta)); }

double eps2(const ScenarioSpec& spec) { return spec.epsilon * spec.epsilon; }

}  // namespace

bool has_exact_treatment(Config c, Pulse p) {
  if (c == Config::A) return true;
  return p == Pulse::Short && (c == Config::B || is_config_c(c) || c == Config::D);
}

void ScenarioSpec::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) {
    throw std::invalid_argument("epsilon must lie in (0, 0.1], got " + format_double(epsilon));
  }
  if (nmax < 2 || nmax > kMaxTruncation) {
    throw std::invalid_argument("nmax must lie in [2, " + std::to_string(kMaxTruncation) + "]");
  }
  if (!(coupling_g >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
  if (!(evolve_time >= 0.0)) throw std::invalid_argument("evolve time must be >= 0");
  if (config == Config::D && pulse == Pulse::Long) {
    throw std::invalid_argument("config D is defined for short pulses only");
  }
  if (config == Config::E && pulse == Pulse::Short && treatment == Treatment::Exact) {
    throw std::invalid_argument("config E short pulse is available at first order only");
  }
  const double b2 = std::norm(beta);
  if (b2 > static_cast<double>(nmax) / 4.0) {
    throw TruncationError("|beta|^2 = " + format_double(b2) + " exceeds nmax/4 = " +
                          format_double(static_cast<double>(nmax) / 4.0));
  }
  const bool perturbative = pulse == Pulse::Long || treatment == Treatment::FirstOrder;
  if (config != Config::A && perturbative && b2 > kMaxPerturbativeBeta2) {
    throw PhysicsDomainError("|beta|^2 = " + format_double(b2) +
                             " is outside the first-order regime (<= 0.5)");
  }
  if (config == Config::D && std::norm(alpha) > kMaxAlpha2) {
    throw TruncationError("|alpha|^2 = " + format_double(std::norm(alpha)) + " exceeds 25");
  }
}

std::vector<std::pair<std::string, std::string>> ScenarioSpec::to_key_values() const {
  return {
      {"config", std::string(to_string(config))},
      {"pulse", std::string(to_string(pulse))},
      {"treatment", std::string(to_string(treatment))},
      {"beta", format_complex(beta)},
      {"alpha", format_complex(alpha)},
      {"epsilon", format_double(epsilon)},
      {"coupling_g", format_double(coupling_g)},
      {"evolve_time", format_double(evolve_time)},
      {"nmax", std::to_string(nmax)},
  };
}

std::string ScenarioSpec::to_text() const {
  std::string out;
  for (const auto& [k, v] : to_key_values()) out += k + "=" + v + "\n";
  return out;
}

ScenarioSpec ScenarioSpec::from_key_values(const std::vector<std::pair<std::string, std::string>>& kv) {
  ScenarioSpec s;
  for (const auto& [k, v] : kv) {
    if (k == "config") s.config = parse_config(v);
    else if (k == "pulse") s.pulse = parse_pulse(v);
    else if (k == "treatment") s.treatment = parse_treatment(v);
    else if (k == "beta") s.beta = parse_complex(v);
    else if (k == "alpha") s.alpha = parse_complex(v);
    else if (k == "epsilon") s.epsilon = parse_double(v);
    else if (k == "coupling_g") s.coupling_g = parse_double(v);
    else if (k == "evolve_time") s.evolve_time = parse_double(v);
    else if (k == "nmax") {
      const double n = parse_double(v);
      if (n < 0 || n != std::floor(n)) throw std::invalid_argument("nmax must be a whole number");
      s.nmax = static_cast<std::size_t>(n);
    } else {
      throw std::invalid_argument("unknown scenario key '" + k + "'");
    }
  }
  return s;
}

ScenarioSpec ScenarioSpec::from_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("scenario line without '=': " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return from_key_values(kv);
}

FockSpace two_atom_space(std::size_t nmax) { return FockSpace({nmax, nmax}, {"atom1", "atom2"}); }

FockSpace single_atom_space(std::size_t nmax) { return FockSpace::single(nmax, "atom"); }

FockSpace longitudinal_space(std::size_t nz, std::size_t ny) { return FockSpace({nz, ny}, {"z", "y"}); }

namespace {

FockVector relabel(const FockVector& v, const FockSpace& space) {
  return FockVector(space, v.amplitudes());
}

// Exact path state |beta>, or its norm-preserving first-order counterpart.
FockVector recoil_state(cplx beta, const ScenarioSpec& spec) {
  const FockSpace s = single_atom_space(spec.nmax);
  if (spec.treatment == Treatment::Exact) return relabel(coherent_state(beta, spec.nmax).state, s);
  return elastic_amplitude(beta) * FockVector::basis(s, {0}) + beta * FockVector::basis(s, {1});
}

}  // namespace

TwoPathMixture build_A(const ScenarioSpec& spec) {
  require_config(spec, {Config::A}, "build_A");
  spec.validate();
  const FockVector ground = FockVector::basis(two_atom_space(spec.nmax), {0, 0});
  return TwoPathComponent(ground, ground, FreqTag::Elastic, eps2(spec));
}

TwoPathMixture build_B_short(const ScenarioSpec& spec) {
  require_config(spec, {Config::B}, "build_B_short");
  require_pulse(spec, Pulse::Short, "build_B_short");
  spec.validate();
  const FockSpace space = two_atom_space(spec.nmax);
  if (spec.treatment == Treatment::Exact) {
    const FockVector kicked = coherent_state(spec.beta, spec.nmax).state;
    const FockVector rest = FockVector::basis(FockSpace::single(spec.nmax), {0});
    return TwoPathComponent(relabel(tensor({kicked, rest}), space), relabel(tensor({rest, kicked}), space),
                            FreqTag::Elastic, eps2(spec));
  }
  const double a = elastic_amplitude(spec.beta);
  const FockVector g = FockVector::basis(space, {0, 0});
  return TwoPathComponent(a * g + spec.beta * FockVector::basis(space, {1, 0}),
                          a * g + spec.beta * FockVector::basis(space, {0, 1}), FreqTag::Elastic,
                          eps2(spec));
}

TwoPathMixture build_B_long(const ScenarioSpec& spec) {
  require_config(spec, {Config::B}, "build_B_long");
  require_pulse(spec, Pulse::Long, "build_B_long");
  spec.validate();
  const FockSpace space = two_atom_space(spec.nmax);
  const double b2 = std::norm(spec.beta);
  const FockVector g = FockVector::basis(space, {0, 0});
  const FockVector none = FockVector::zero(space);
  // Only path 1 can leave atom 1 excited, only path 2 atom 2.
  return TwoPathMixture({
      {g, g, FreqTag::Elastic, eps2(spec) * (1.0 - b2)},
      {FockVector::basis(space, {1, 0}), none, FreqTag::Shifted, eps2(spec) * b2},
      {none, FockVector::basis(space, {0, 1}), FreqTag::Shifted, eps2(spec) * b2},
  });
}

TwoPathMixture build_C_short(const ScenarioSpec& spec) {
  require_config(spec, {Config::C1, Config::C2}, "build_C_short");
  require_pulse(spec, Pulse::Short, "build_C_short");
  spec.validate();
  // Opposite scattering directions impart opposite recoil.
  return TwoPathComponent(recoil_state(spec.beta, spec), recoil_state(-spec.beta, spec), FreqTag::Elastic,
                          eps2(spec));
}

TwoPathMixture build_C_long(const ScenarioSpec& spec) {
  require_config(spec, {Config::C1, Config::C2}, "build_C_long");
  require_pulse(spec, Pulse::Long, "build_C_long");
  spec.validate();
  const FockSpace space = single_atom_space(spec.nmax);
  const double b2 = std::norm(spec.beta);
  const FockVector ground = FockVector::basis(space, {0});
  const FockVector excited = FockVector::basis(space, {1});
  return TwoPathMixture({
      {ground, ground, FreqTag::Elastic, eps2(spec) * (1.0 - b2)},
      {excited, -excited, FreqTag::Shifted, eps2(spec) * b2},
  });
}

TwoPathMixture build_D_short(const ScenarioSpec& spec) {
  require_config(spec, {Config::D}, "build_D_short");
  require_pulse(spec, Pulse::Short, "build_D_short");
  spec.validate();
  const std::size_t nz = safe_truncation(spec.alpha, spec.nmax);
  const FockSpace space = longitudinal_space(nz, spec.nmax);
  const FockVector z = coherent_state(spec.alpha, nz).state;
  return TwoPathComponent(relabel(tensor({z, recoil_state(spec.beta, spec)}), space),
                          relabel(tensor({z, recoil_state(-spec.beta, spec)}), space), FreqTag::Elastic,
                          eps2(spec));
}

TwoPathMixture build_E_short(const ScenarioSpec& spec) {
  require_config(spec, {Config::E}, "build_E_short");
  require_pulse(spec, Pulse::Short, "build_E_short");
  spec.validate();
  ScenarioSpec as_b = spec;
  as_b.config = Config::B;
  const TwoPathMixture independent = build_B_short(as_b);
  if (spec.evolve_time == 0.0) return independent;
  return evolve_beat(independent, spec.coupling_g, spec.evolve_time);
}

TwoPathMixture build_E_long(const ScenarioSpec& spec) {
  require_config(spec, {Config::E}, "build_E_long");
  require_pulse(spec, Pulse::Long, "build_E_long");
  spec.validate();
  const FockSpace space = two_atom_space(spec.nmax);
  const double b2 = std::norm(spec.beta);
  const FockVector g = FockVector::basis(space, {0, 0});
  const FockVector e10 = FockVector::basis(space, {1, 0});
  const FockVector e01 = FockVector::basis(space, {0, 1});
  const FockVector sym = (1.0 / std::sqrt(2.0)) * (e10 + e01);
  const FockVector anti = (1.0 / std::sqrt(2.0)) * (e10 - e01);
  return TwoPathMixture({
      {g, g, FreqTag::Elastic, eps2(spec) * (1.0 - b2)},
      {sym, sym, FreqTag::Sym, eps2(spec) * b2 / 2.0},
      {anti, -anti, FreqTag::Antisym, eps2(spec) * b2 / 2.0},
  });
}

TwoPathMixture build(const ScenarioSpec& spec) {
  const bool shrt = spec.pulse == Pulse::Short;
  switch (spec.config) {
    case Config::A: return build_A(spec);
    case Config::B: return shrt ? build_B_short(spec) : build_B_long(spec);
    case Config::C1:
    case Config::C2: return shrt ? build_C_short(spec) : build_C_long(spec);
    case Config::D:
      if (!shrt) throw std::invalid_argument("config D is defined for short pulses only");
      return build_D_short(spec);
    case Config::E: return shrt ? build_E_short(spec) : build_E_long(spec);
  }
  throw std::logic_error("unreachable config");
}

}  // namespace atomslit
