#pragma once

// Builders mapping each double-slit geometry and pulse regime onto a
// TwoPathMixture over the atomic (which-way marker) Hilbert space.
//
// Atomic spaces:
//   A, B, E : two oscillators, labels {"atom1", "atom2"}, nmax each
//   C1, C2  : one oscillator, label {"atom"}
//   D       : longitudinal z then transverse y, labels {"z", "y"}; the z
//             dimension grows past nmax as needed to hold |alpha>
//
// FIRST_ORDER states keep the single-excitation amplitudes beta and fix the
// no-recoil amplitude to sqrt(1 - |beta|^2) so each path stays normalized:
// the excitation probabilities and the elastic remainder 1 - |beta|^2 then
// add to one exactly.
//
// Every component carries weight epsilon^2 times its golden-rule
// probability; epsilon cancels from all visibilities.

#include "atomslit/config.hpp"
#include "atomslit/twopath.hpp"

#include <string>
#include <utility>
#include <vector>

namespace atomslit {

struct ScenarioSpec {
  Config config = Config::A;
  Pulse pulse = Pulse::Short;
  cplx beta{};
  cplx alpha{};               // D only
  double epsilon = 0.01;      // scattering amplitude, (0, 0.1]
  double coupling_g = 0.0;    // E only
  double evolve_time = 0.0;   // E only
  Treatment treatment = Treatment::Exact;
  std::size_t nmax = kDefaultTruncation;

  // Throws std::invalid_argument for out-of-domain fields and
  // TruncationError when |beta|^2 > nmax/4.
  void validate() const;

  // Flat key=value pairs in a fixed order. Complex values are written as
  // "re" when real, otherwise "(re,im)".
  std::vector<std::pair<std::string, std::string>> to_key_values() const;
  std::string to_text() const;  // one "key=value" per line
  static ScenarioSpec from_key_values(const std::vector<std::pair<std::string, std::string>>& kv);
  static ScenarioSpec from_text(std::string_view text);

  bool operator==(const ScenarioSpec&) const = default;
};

FockSpace two_atom_space(std::size_t nmax);
FockSpace single_atom_space(std::size_t nmax);
FockSpace longitudinal_space(std::size_t nz, std::size_t ny);

TwoPathMixture build_A(const ScenarioSpec& spec);
TwoPathMixture build_B_short(const ScenarioSpec& spec);
TwoPathMixture build_B_long(const ScenarioSpec& spec);
TwoPathMixture build_C_short(const ScenarioSpec& spec);
TwoPathMixture build_C_long(const ScenarioSpec& spec);
TwoPathMixture build_D_short(const ScenarioSpec& spec);
TwoPathMixture build_E_short(const ScenarioSpec& spec);
TwoPathMixture build_E_long(const ScenarioSpec& spec);

// Dispatch on config and pulse. D has no long-pulse builder.
TwoPathMixture build(const ScenarioSpec& spec);

// Whether an exact (coherent-state) form exists for this config/pulse pair.
// A is trivially exact; long pulses and E short exist at first order only.
bool has_exact_treatment(Config c, Pulse p);

}  // namespace atomslit
