#pragma once

// Closed-form results for fringe contrast and which-way discrimination.
// Scalar arithmetic only: nothing here touches a Fock space, so agreement
// with the simulators is a genuine two-implementation check.

#include "atomslit/config.hpp"

#include <complex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace atomslit::oracle {

using cplx = std::complex<double>;

// Independent slits: 1 - |beta|^2. Requires |beta| < 1.
double contrast_B(cplx beta);
// One recording oscillator: 1 - 2|beta|^2. Requires |beta|^2 < 0.5.
double contrast_C(cplx beta);

// Magnitude of the exact coherent-state overlap: 1 for A, exp(-|beta|^2)
// for B, exp(-2|beta|^2) for C1/C2/D. Throws std::invalid_argument for E.
double contrast_exact(Config config, cplx beta);

// First-order unconditioned contrast for any config (A: 1; B, E: contrast_B;
// C1, C2, D: contrast_C).
double contrast_first_order(Config config, cplx beta);

struct WhichWay {
  double p_plus;   // exp(-|delta - beta|^2): projection of |+beta> onto |delta>
  double p_minus;  // exp(-|delta + beta|^2)
  // exp(-4 beta delta); only defined for real, non-negative beta and delta.
  std::optional<double> fractional_error;
  double detect_prob;  // exp(-|delta|^2)
};

WhichWay whichway_probabilities(cplx beta, cplx delta);

struct TradeoffPoint {
  double fractional_error;
  double delta;
  double detect_prob;
};

// For each target error e in (0, 1): delta = -ln(e) / (4 beta) and the
// detection probability exp(-delta^2). Requires beta > 0. Points come back
// in the order given.
std::vector<TradeoffPoint> tradeoff_curve(double beta, std::span<const double> target_errors);

struct WeightEntry {
  std::string label;
  double weight;
};

// Golden-rule probabilities for long pulses:
//   A -> {elastic: 1}
//   B -> {elastic: 1-|b|^2, atom1: |b|^2/2, atom2: |b|^2/2}
//   C -> {elastic: 1-|b|^2, shifted: |b|^2}
//   E -> {elastic: 1-|b|^2, sym: |b|^2/2, antisym: |b|^2/2}
// Requires |beta|^2 < 0.5. Throws std::invalid_argument for D.
std::vector<WeightEntry> longpulse_weights(Config config, cplx beta);

// Long-pulse contrast with a pi phase applied to the light carrying the
// listed labels ("shifted", "sym", "antisym", "elastic"). Each weight enters
// with the sign of its fringe (elastic and sym +, shifted and antisym -),
// while which-way labels (atom1, atom2) carry no fringe at all.
double longpulse_contrast(Config config, cplx beta, const std::set<std::string>& flipped = {});

}  // namespace atomslit::oracle
