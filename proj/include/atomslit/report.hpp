#pragma once

// Scenario pipelines and their machine-readable output.
//
// Pattern CSV:  "# key=value" metadata lines, then the header row
//               "phi,intensity" and one row per sample.
// Pattern JSON: {meta: {spec, transforms, version}, pattern: {phis, intensities},
//                visibility, phase_offset, condition, post_selection_probability}
//
// Floats are written in shortest round-trip decimal with LF line endings.
// Nothing time- or host-dependent is emitted, so identical inputs give
// byte-identical output.

#include "atomslit/scenarios.hpp"
#include "atomslit/transforms.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace atomslit {

std::string_view version();

// Post-scattering steps, applied in this order: eraser, dispersive element,
// coincidence projection.
struct Pipeline {
  bool eraser = false;
  std::set<FreqTag> dispersive;
  std::optional<std::string> coincidence;

  std::vector<std::string> describe() const;
};

struct ScenarioResult {
  TwoPathMixture mixture;  // after eraser and dispersive element, before coincidence
  Conditioned conditioned;
};

// Validates spec/pipeline compatibility (std::invalid_argument) before any
// physics runs.
ScenarioResult run_scenario(const ScenarioSpec& spec, const Pipeline& pipeline);
PatternScan run_pattern(const ScenarioSpec& spec, const Pipeline& pipeline,
                        std::size_t nsamples = kDefaultPatternSamples);

std::string pattern_csv(const PatternScan& scan, const ScenarioSpec& spec, const Pipeline& pipeline);
nlohmann::ordered_json pattern_json(const PatternScan& scan, const ScenarioSpec& spec, const Pipeline& pipeline);

struct BetaRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 1;  // number of points, endpoints included

  // "MIN:MAX:STEPS". Throws std::invalid_argument for malformed or empty
  // ranges and for MIN < 0.
  static BetaRange parse(std::string_view text);
  std::vector<double> values() const;
};

struct SweepRow {
  double beta;
  std::optional<double> visibility_exact;
  double visibility_first_order;
  std::optional<double> oracle;     // first-order closed form, absent under coincidence
  std::optional<double> deviation;  // |V_exact (or V_first when no exact form) - oracle|
  double post_selection_probability;
};

// Evaluates points concurrently on up to `threads` workers (0: hardware
// concurrency); rows come back ordered by beta.
std::vector<SweepRow> run_sweep(const ScenarioSpec& base, const Pipeline& pipeline, const BetaRange& range,
                                unsigned threads = 0);

std::string sweep_csv(const std::vector<SweepRow>& rows, const ScenarioSpec& base, const Pipeline& pipeline,
                      const BetaRange& range);
nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows, const ScenarioSpec& base,
                          const Pipeline& pipeline, const BetaRange& range);

struct WhichWayReport {
  double beta;
  double delta;
  double p_plus_oracle, p_minus_oracle, fractional_error_oracle, detect_prob_oracle;
  double p_plus_sim, p_minus_sim, ratio_sim, detect_prob_sim;
  std::size_t nmax_used;
  std::vector<double> target_errors;
  struct Point {
    double fractional_error, delta, detect_prob;
  };
  std::vector<Point> tradeoff;

  double max_deviation() const;
};

// beta, delta >= 0 (std::invalid_argument otherwise). The simulated overlaps
// use at least `nmax` levels, more if either coherent state needs them.
WhichWayReport run_whichway(double beta, double delta, std::size_t nmax = kDefaultTruncation);

std::string whichway_csv(const WhichWayReport& r);
nlohmann::ordered_json whichway_json(const WhichWayReport& r);

}  // namespace atomslit
