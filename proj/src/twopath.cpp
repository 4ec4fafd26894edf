#include "atomslit/twopath.hpp"

#include "atomslit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace atomslit {

std::string_view to_string(FreqTag t) {
  switch (t) {
    case FreqTag::Elastic: return "ELASTIC";
    case FreqTag::Shifted: return "SHIFTED";
    case FreqTag::Sym: return "SYM";
    case FreqTag::Antisym: return "ANTISYM";
  }
  return "?";
}

FreqTag parse_freq_tag(std::string_view s) {
  std::string up(s);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (FreqTag t : {FreqTag::Elastic, FreqTag::Shifted, FreqTag::Sym, FreqTag::Antisym}) {
    if (to_string(t) == up) return t;
  }
  throw std::invalid_argument("unknown frequency tag '" + std::string(s) + "'");
}

TwoPathComponent::TwoPathComponent(FockVector psi1, FockVector psi2, FreqTag tag, double weight)
    : psi1_(std::move(psi1)), psi2_(std::move(psi2)), tag_(tag), weight_(weight) {
  if (!psi1_.space().compatible(psi2_.space())) {
    throw SpaceMismatchError("TwoPathComponent: path states live in different spaces");
  }
  if (!(weight_ >= 0.0) || !std::isfinite(weight_)) {
    throw std::invalid_argument("TwoPathComponent: weight must be finite and >= 0");
  }
}

double TwoPathComponent::mean_intensity() const {
  return weight_ * (psi1_.norm_squared() + psi2_.norm_squared());
}

cplx TwoPathComponent::coherence() const { return weight_ * inner(psi1_, psi2_); }

TwoPathMixture::TwoPathMixture(std::vector<TwoPathComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("TwoPathMixture: no components");
  for (const auto& c : components_) {
    if (!c.space().compatible(components_.front().space())) {
      throw SpaceMismatchError("TwoPathMixture: components live in different spaces");
    }
  }
  if (!(total_weight() > 0.0)) throw std::invalid_argument("TwoPathMixture: total weight must be > 0");
}

double TwoPathMixture::total_weight() const {
  double w = 0.0;
  for (const auto& c : components_) w += c.weight();
  return w;
}

double TwoPathMixture::mean_intensity() const {
  double s = 0.0;
  for (const auto& c : components_) s += c.mean_intensity();
  return s;
}

bool approx_equal(const TwoPathMixture& a, const TwoPathMixture& b, double tol) {
  if (a.size() != b.size() || !a.space().compatible(b.space())) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& ca = a.components()[k];
    const auto& cb = b.components()[k];
    if (ca.tag() != cb.tag() || std::abs(ca.weight() - cb.weight()) > tol) return false;
    const double d1 = (ca.psi1().amplitudes() - cb.psi1().amplitudes()).cwiseAbs().maxCoeff();
    const double d2 = (ca.psi2().amplitudes() - cb.psi2().amplitudes()).cwiseAbs().maxCoeff();
    if (d1 > tol || d2 > tol) return false;
  }
  return true;
}

TwoPathMixture merge_coherent(const TwoPathMixture& m) {
  std::vector<TwoPathComponent> out;
  std::vector<FreqTag> seen;
  for (const auto& c : m.components()) {
    if (std::find(seen.begin(), seen.end(), c.tag()) != seen.end()) continue;
    seen.push_back(c.tag());
    FockVector p1 = FockVector::zero(m.space());
    FockVector p2 = FockVector::zero(m.space());
    for (const auto& d : m.components()) {
      if (d.tag() != c.tag()) continue;
      const double s = std::sqrt(d.weight());
      p1 += s * d.psi1();
      p2 += s * d.psi2();
    }
    out.emplace_back(std::move(p1), std::move(p2), c.tag(), 1.0);
  }
  return TwoPathMixture(std::move(out));
}

cplx coherence_sum(const TwoPathMixture& m) {
  cplx s{};
  for (const auto& c : m.components()) s += c.coherence();
  return s;
}

namespace {

// Below this fraction of the total weight the mixture counts as empty.
constexpr double kEmptyIntensity = 1e-24;

double checked_mean_intensity(const TwoPathMixture& m) {
  const double mean = m.mean_intensity();
  if (!(mean > kEmptyIntensity * m.total_weight())) {
    throw EmptyEnsembleError("no intensity left in the two-path ensemble (fully conditioned away)");
  }
  return mean;
}

double wrap_phase(double phi) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(phi, 2.0 * pi);  // [-pi, pi]
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

}  // namespace

double visibility(const TwoPathMixture& m) {
  const double mean = checked_mean_intensity(m);
  return std::min(1.0, 2.0 * std::abs(coherence_sum(m)) / mean);
}

double phase_offset(const TwoPathMixture& m) {
  const double mean = checked_mean_intensity(m);
  const cplx c = coherence_sum(m);
  // No fringe, no phase.
  if (std::abs(c) <= 1e-15 * mean) return 0.0;
  return wrap_phase(-std::arg(c));
}

double intensity_at(const TwoPathMixture& m, double phi) {
  const cplx phase = std::polar(1.0, phi);
  double s = 0.0;
  for (const auto& c : m.components()) {
    s += c.weight() * (c.psi1().amplitudes() + phase * c.psi2().amplitudes()).squaredNorm();
  }
  return s;
}

AtomicProjector::AtomicProjector(FockSpace space, CMatrix matrix, std::string name)
    : space_(std::move(space)), matrix_(std::move(matrix)), name_(std::move(name)) {
  const auto n = static_cast<Eigen::Index>(space_.dimension());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw SpaceMismatchError("AtomicProjector '" + name_ + "': matrix shape does not match space");
  }
}

FockVector AtomicProjector::apply(const FockVector& v) const {
  if (!v.space().compatible(space_)) {
    throw SpaceMismatchError("projector '" + name_ + "' does not act on this atomic space");
  }
  return v.apply(matrix_);
}

Conditioned condition(const TwoPathMixture& m, const AtomicProjector& projector) {
  if (!m.space().compatible(projector.space())) {
    throw SpaceMismatchError("projector '" + projector.name() + "' does not act on this atomic space");
  }
  TwoPathMixture projected = m.map_states([&](const FockVector& v) { return projector.apply(v); });
  const double before = m.mean_intensity();
  const double prob = before > 0.0 ? projected.mean_intensity() / before : 0.0;
  return {std::move(projected), prob, projector.name()};
}

double PatternScan::sampled_visibility() const {
  if (intensities.empty()) return 0.0;
  double mean = 0.0;
  cplx first{};
  for (std::size_t k = 0; k < intensities.size(); ++k) {
    mean += intensities[k];
    first += intensities[k] * std::polar(1.0, -phis[k]);
  }
  const double n = static_cast<double>(intensities.size());
  mean /= n;
  first /= n;
  return mean > 0.0 ? 2.0 * std::abs(first) / mean : 0.0;
}

double PatternScan::sampled_extrema_visibility() const {
  if (intensities.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(intensities.begin(), intensities.end());
  return (*hi + *lo) > 0.0 ? (*hi - *lo) / (*hi + *lo) : 0.0;
}

PatternScan pattern(const TwoPathMixture& m, std::size_t nsamples) {
  if (nsamples < kMinPatternSamples) {
    throw std::invalid_argument("pattern: need at least " + std::to_string(kMinPatternSamples) +
                                " samples");
  }
  PatternScan scan;
  scan.visibility = visibility(m);
  scan.phase_offset = phase_offset(m);
  scan.phis.resize(nsamples);
  scan.intensities.resize(nsamples);
  for (std::size_t k = 0; k < nsamples; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nsamples);
    scan.phis[k] = phi;
    scan.intensities[k] = std::max(0.0, intensity_at(m, phi));
  }
  if (std::abs(scan.sampled_visibility() - scan.visibility) > 1e-6) {
    throw std::logic_error("pattern: sampled and closed-form visibilities disagree");
  }
  return scan;
}

PatternScan pattern(const Conditioned& c, std::size_t nsamples) {
  PatternScan scan = pattern(c.mixture, nsamples);
  scan.condition = c.condition;
  scan.post_selection_probability = c.probability;
  return scan;
}

}  // namespace atomslit
