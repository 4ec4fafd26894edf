#pragma once

// Two-path interference. A scattered photon reaches the detector by path 1
// or path 2; each path leaves the atoms in some (unnormalized) state. The
// fringe pattern at relative detector phase phi is
//
//   I(phi) = sum_k w_k || psi1_k + e^{i phi} psi2_k ||^2
//          = sum_k w_k (|psi1|^2 + |psi2|^2) + 2 Re(e^{i phi} C),
//   C      = sum_k w_k <psi1_k | psi2_k>.
//
// Components of a mixture add incoherently.

#include "atomslit/fockspace.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace atomslit {

// Spectral label of the scattered light. Components with different tags are
// distinguishable in principle and never interfere.
enum class FreqTag { Elastic, Shifted, Sym, Antisym };

std::string_view to_string(FreqTag t);
// Accepts ELASTIC, SHIFTED, SYM, ANTISYM in any case.
FreqTag parse_freq_tag(std::string_view s);

class TwoPathComponent {
 public:
  TwoPathComponent(FockVector psi1, FockVector psi2, FreqTag tag = FreqTag::Elastic,
                   double weight = 1.0);

  const FockVector& psi1() const { return psi1_; }
  const FockVector& psi2() const { return psi2_; }
  FreqTag tag() const { return tag_; }
  double weight() const { return weight_; }
  const FockSpace& space() const { return psi1_.space(); }

  // w (|psi1|^2 + |psi2|^2): the phase-averaged intensity of this component.
  double mean_intensity() const;
  // w <psi1|psi2>
  cplx coherence() const;

 private:
  FockVector psi1_;
  FockVector psi2_;
  FreqTag tag_;
  double weight_;
};

class TwoPathMixture {
 public:
  explicit TwoPathMixture(std::vector<TwoPathComponent> components);
  TwoPathMixture(TwoPathComponent single)  // NOLINT: implicit by intent
      : TwoPathMixture(std::vector<TwoPathComponent>{std::move(single)}) {}

  const std::vector<TwoPathComponent>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const FockSpace& space() const { return components_.front().space(); }

  double total_weight() const;
  double mean_intensity() const;

  // Rebuild with every path state passed through `f`; tags and weights kept.
  template <class F>
  TwoPathMixture map_states(F&& f) const {
    std::vector<TwoPathComponent> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.emplace_back(f(c.psi1()), f(c.psi2()), c.tag(), c.weight());
    return TwoPathMixture(std::move(out));
  }

 private:
  std::vector<TwoPathComponent> components_;
};

// Elementwise comparison of components (order, tags, weights, amplitudes).
bool approx_equal(const TwoPathMixture& a, const TwoPathMixture& b, double tol);

// Merges components sharing a tag into one coherent component
// (psi = sum sqrt(w_k) psi_k, weight 1). Distinct tags stay separate; the
// first occurrence of each tag fixes output order.
TwoPathMixture merge_coherent(const TwoPathMixture& m);

cplx coherence_sum(const TwoPathMixture& m);

// Closed-form fringe visibility 2|C| / sum w(|psi1|^2+|psi2|^2).
// Throws EmptyEnsembleError when the mixture carries no intensity.
double visibility(const TwoPathMixture& m);

// Detector phase of the fringe maximum, -arg C, wrapped to (-pi, pi].
// Zero when the coherence vanishes. Throws EmptyEnsembleError like visibility.
double phase_offset(const TwoPathMixture& m);

double intensity_at(const TwoPathMixture& m, double phi);

class AtomicProjector {
 public:
  AtomicProjector(FockSpace space, CMatrix matrix, std::string name);

  const FockSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  const std::string& name() const { return name_; }

  FockVector apply(const FockVector& v) const;

 private:
  FockSpace space_;
  CMatrix matrix_;
  std::string name_;
};

struct Conditioned {
  TwoPathMixture mixture;
  // Fraction of the unconditioned mean intensity that survives coincidence
  // with the projector.
  double probability;
  std::string condition;
};

// Coincidence measurement: project every path state, keep the weights.
Conditioned condition(const TwoPathMixture& m, const AtomicProjector& projector);

inline constexpr std::size_t kMinPatternSamples = 16;
inline constexpr std::size_t kDefaultPatternSamples = 256;

struct PatternScan {
  std::vector<double> phis;
  std::vector<double> intensities;
  double visibility = 0.0;
  double phase_offset = 0.0;
  std::string condition = "none";
  double post_selection_probability = 1.0;

  // Visibility recovered from the samples alone: the scan is a pure first
  // harmonic, so its DFT mean and first coefficient give
  // (Imax - Imin)/(Imax + Imin) of the continuous pattern irrespective of
  // where the grid falls relative to the fringe maximum.
  double sampled_visibility() const;
  // Raw extremum ratio over the samples; biased low unless the grid hits the
  // fringe extrema.
  double sampled_extrema_visibility() const;
};

// Uniform scan phi_k = 2 pi k / nsamples. nsamples >= kMinPatternSamples.
// Throws EmptyEnsembleError on zero intensity.
PatternScan pattern(const TwoPathMixture& m, std::size_t nsamples = kDefaultPatternSamples);
PatternScan pattern(const Conditioned& c, std::size_t nsamples = kDefaultPatternSamples);

}  // namespace atomslit
