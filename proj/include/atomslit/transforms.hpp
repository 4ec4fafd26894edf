#pragma once

// Operations applied between scattering and detection: unitaries on the
// atomic marker states (eraser, coupled-slit beat evolution), a frequency-
// selective optical phase (dispersive element), and the named projectors
// used for coincidence detection.

#include "atomslit/twopath.hpp"

#include <Eigen/Dense>

#include <array>
#include <initializer_list>
#include <set>
#include <string_view>

namespace atomslit {

// Rotation applied to {|1,0>, |0,1>}:
//   |1,0> -> (|1,0> - |0,1>)/sqrt2,   |0,1> -> (|1,0> + |0,1>)/sqrt2.
// Identity on every other two-atom basis state. Requires a two-mode space.
TwoPathMixture apply_eraser(const TwoPathMixture& m);
TwoPathMixture apply_eraser_inverse(const TwoPathMixture& m);

Eigen::Matrix2cd eraser_rotation();

// exp(-i H t) with H = g (a1^dag a2 + a2^dag a1) restricted to the
// single-excitation block {|1,0>, |0,1>}; the common oscillation phase is
// dropped. Throws std::invalid_argument for g < 0 or t < 0.
TwoPathMixture evolve_beat(const TwoPathMixture& m, double g, double t);

Eigen::Matrix2cd beat_propagator(double g, double t);

// Splitting of the symmetric and antisymmetric normal modes, 2g.
double beat_frequency(double g);
// pi / (4g): a quarter of the beat period, where the evolution acts as an eraser.
double quarter_beat_time(double g);

// Any 2x2 unitary on {|1,0>, |0,1>}, identity elsewhere.
TwoPathMixture apply_single_excitation_unitary(const TwoPathMixture& m, const Eigen::Matrix2cd& u);

// Relative path phase pi on every component whose tag is listed.
// Throws std::invalid_argument for an empty tag set.
TwoPathMixture apply_dispersive(const TwoPathMixture& m, const std::set<FreqTag>& tags);

inline constexpr std::array<std::string_view, 7> kProjectorNames = {
    "ground", "atom1_excited", "atom2_excited", "single_atom_0", "single_atom_1", "sym", "antisym"};

// ground         : every mode in |0>
// atom1_excited  : |1,0><1,0|            (two-atom spaces)
// atom2_excited  : |0,1><0,1|            (two-atom spaces)
// single_atom_k  : |k><k| on the recoil mode ("atom", or "y" beside a "z" mode),
//                  identity on other modes
// sym / antisym  : |s><s|, |a><a| with |s>,|a> = (|1,0> +- |0,1>)/sqrt2
// Throws std::invalid_argument for unknown names and SpaceMismatchError when
// the name has no meaning on `space`.
AtomicProjector named_projector(std::string_view name, const FockSpace& space);

// Identity on `space`, named "none".
AtomicProjector identity_projector(const FockSpace& space);

}  // namespace atomslit
