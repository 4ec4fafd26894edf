#include "atomslit/report.hpp"

#include "atomslit/errors.hpp"
#include "atomslit/numfmt.hpp"
#include "atomslit/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace atomslit {

std::string_view version() { return ATOMSLIT_VERSION; }

std::vector<std::string> Pipeline::describe() const {
  std::vector<std::string> out;
  if (eraser) out.emplace_back("eraser");
  if (!dispersive.empty()) {
    std::string tags;
    for (FreqTag t : dispersive) tags += (tags.empty() ? "" : ",") + std::string(to_string(t));
    out.push_back("dispersive:" + tags);
  }
  if (coincidence) out.push_back("coincidence:" + *coincidence);
  return out;
}

namespace {

bool two_atom_config(Config c) { return c == Config::A || c == Config::B || c == Config::E; }

void check_pipeline(const ScenarioSpec& spec, const Pipeline& pipeline) {
  if (pipeline.eraser && !two_atom_config(spec.config)) {
    throw std::invalid_argument("--eraser acts on two-atom marker states (configs A, B, E), not config " +
                                std::string(to_string(spec.config)));
  }
}

}  // namespace

ScenarioResult run_scenario(const ScenarioSpec& spec, const Pipeline& pipeline) {
  check_pipeline(spec, pipeline);
  TwoPathMixture m = build(spec);
  if (pipeline.eraser) m = apply_eraser(m);
  if (!pipeline.dispersive.empty()) m = apply_dispersive(m, pipeline.dispersive);
  const AtomicProjector projector = pipeline.coincidence ? named_projector(*pipeline.coincidence, m.space())
                                                         : identity_projector(m.space());
  Conditioned conditioned = condition(m, projector);
  return {std::move(m), std::move(conditioned)};
}

PatternScan run_pattern(const ScenarioSpec& spec, const Pipeline& pipeline, std::size_t nsamples) {
  return pattern(run_scenario(spec, pipeline).conditioned, nsamples);
}

namespace {

nlohmann::ordered_json spec_json(const ScenarioSpec& spec) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : spec.to_key_values()) j[k] = v;
  return j;
}

nlohmann::ordered_json meta_json(const ScenarioSpec& spec, const Pipeline& pipeline) {
  nlohmann::ordered_json meta;
  meta["spec"] = spec_json(spec);
  meta["transforms"] = pipeline.describe();
  meta["version"] = std::string(version());
  return meta;
}

std::string meta_lines(const ScenarioSpec& spec, const Pipeline& pipeline) {
  std::string out = "# version=" + std::string(version()) + "\n";
  for (const auto& [k, v] : spec.to_key_values()) out += "# " + k + "=" + v + "\n";
  std::string transforms;
  for (const auto& t : pipeline.describe()) transforms += (transforms.empty() ? "" : ";") + t;
  out += "# transforms=" + transforms + "\n";
  return out;
}

std::string opt(const std::optional<double>& x) { return x ? format_double(*x) : std::string{}; }

}  // namespace

std::string pattern_csv(const PatternScan& scan, const ScenarioSpec& spec, const Pipeline& pipeline) {
  std::string out = meta_lines(spec, pipeline);
  out += "# condition=" + scan.condition + "\n";
  out += "# visibility=" + format_double(scan.visibility) + "\n";
  out += "# phase_offset=" + format_double(scan.phase_offset) + "\n";
  out += "# post_selection_probability=" + format_double(scan.post_selection_probability) + "\n";
  out += "phi,intensity\n";
  for (std::size_t k = 0; k < scan.phis.size(); ++k) {
    out += format_double(scan.phis[k]) + "," + format_double(scan.intensities[k]) + "\n";
  }
  return out;
}

nlohmann::ordered_json pattern_json(const PatternScan& scan, const ScenarioSpec& spec, const Pipeline& pipeline) {
  nlohmann::ordered_json j;
  j["meta"] = meta_json(spec, pipeline);
  j["pattern"] = {{"phis", scan.phis}, {"intensities", scan.intensities}};
  j["visibility"] = scan.visibility;
  j["phase_offset"] = scan.phase_offset;
  j["condition"] = scan.condition;
  j["post_selection_probability"] = scan.post_selection_probability;
  return j;
}

BetaRange BetaRange::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw std::invalid_argument("beta range must be MIN:MAX:STEPS, got '" + std::string(text) + "'");
  }
  BetaRange r;
  r.min = parse_double(text.substr(0, c1));
  r.max = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
  const double steps = parse_double(text.substr(c2 + 1));
  if (r.min < 0.0) throw std::invalid_argument("beta range MIN must be >= 0");
  if (steps < 1.0 || steps != std::floor(steps)) throw std::invalid_argument("beta range is empty");
  if (r.max < r.min) throw std::invalid_argument("beta range is empty (MAX < MIN)");
  r.steps = static_cast<std::size_t>(steps);
  return r;
}

std::vector<double> BetaRange::values() const {
  if (steps == 0) throw std::invalid_argument("beta range is empty");
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = steps == 1 ? min : min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  return out;
}

namespace {

std::string oracle_label(FreqTag t) {
  switch (t) {
    case FreqTag::Elastic: return "elastic";
    case FreqTag::Shifted: return "shifted";
    case FreqTag::Sym: return "sym";
    case FreqTag::Antisym: return "antisym";
  }
  return {};
}

std::optional<double> sweep_oracle(const ScenarioSpec& spec, const Pipeline& pipeline) {
  if (pipeline.coincidence) return std::nullopt;
  if (spec.pulse == Pulse::Short || spec.config == Config::A) {
    return oracle::contrast_first_order(spec.config, spec.beta);
  }
  std::set<std::string> flipped;
  for (FreqTag t : pipeline.dispersive) flipped.insert(oracle_label(t));
  return oracle::longpulse_contrast(spec.config, spec.beta, flipped);
}

SweepRow sweep_point(const ScenarioSpec& base, const Pipeline& pipeline, double beta) {
  ScenarioSpec spec = base;
  spec.beta = beta;
  SweepRow row{};
  row.beta = beta;

  ScenarioSpec first = spec;
  first.treatment = Treatment::FirstOrder;
  const Conditioned cf = run_scenario(first, pipeline).conditioned;
  row.visibility_first_order = visibility(cf.mixture);
  row.post_selection_probability = cf.probability;

  if (has_exact_treatment(spec.config, spec.pulse)) {
    ScenarioSpec exact = spec;
    exact.treatment = Treatment::Exact;
    const Conditioned ce = run_scenario(exact, pipeline).conditioned;
    row.visibility_exact = visibility(ce.mixture);
    row.post_selection_probability = ce.probability;
  }
  row.oracle = sweep_oracle(spec, pipeline);
  if (row.oracle) {
    row.deviation = std::abs(row.visibility_exact.value_or(row.visibility_first_order) - *row.oracle);
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioSpec& base, const Pipeline& pipeline, const BetaRange& range,
                                unsigned threads) {
  const std::vector<double> betas = range.values();
  ScenarioSpec probe = base;
  probe.beta = betas.back();
  probe.validate();
  check_pipeline(probe, pipeline);

  std::vector<std::optional<SweepRow>> rows(betas.size());
  std::vector<std::exception_ptr> errors(betas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < betas.size(); k = next++) {
      try {
        rows[k] = sweep_point(base, pipeline, betas[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, betas.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<SweepRow> out;
  out.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    out.push_back(*rows[k]);
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const ScenarioSpec& base, const Pipeline& pipeline,
                      const BetaRange& range) {
  std::string out = meta_lines(base, pipeline);
  out += "# beta_range=" + format_double(range.min) + ":" + format_double(range.max) + ":" +
         std::to_string(range.steps) + "\n";
  out += "beta,visibility_exact,visibility_first_order,oracle,deviation,post_selection_probability\n";
  for (const auto& r : rows) {
    out += format_double(r.beta) + "," + opt(r.visibility_exact) + "," + format_double(r.visibility_first_order) +
           "," + opt(r.oracle) + "," + opt(r.deviation) + "," + format_double(r.post_selection_probability) + "\n";
  }
  return out;
}

nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows, const ScenarioSpec& base,
                          const Pipeline& pipeline, const BetaRange& range) {
  nlohmann::ordered_json j;
  j["meta"] = meta_json(base, pipeline);
  j["meta"]["beta_range"] = {{"min", range.min}, {"max", range.max}, {"steps", range.steps}};
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  auto opt_json = [](const std::optional<double>& x) { return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr); };
  for (const auto& r : rows) {
    arr.push_back({{"beta", r.beta},
                   {"visibility_exact", opt_json(r.visibility_exact)},
                   {"visibility_first_order", r.visibility_first_order},
                   {"oracle", opt_json(r.oracle)},
                   {"deviation", opt_json(r.deviation)},
                   {"post_selection_probability", r.post_selection_probability}});
  }
  j["rows"] = std::move(arr);
  return j;
}

double WhichWayReport::max_deviation() const {
  return std::max({std::abs(p_plus_sim - p_plus_oracle), std::abs(p_minus_sim - p_minus_oracle),
                   std::abs(ratio_sim - fractional_error_oracle), std::abs(detect_prob_sim - detect_prob_oracle)});
}

WhichWayReport run_whichway(double beta, double delta, std::size_t nmax) {
  if (!(beta >= 0.0) || !(delta >= 0.0)) throw std::invalid_argument("whichway: --beta and --delta must be >= 0");
  if (beta > 20.0 || delta > 20.0) throw TruncationError("whichway: --beta and --delta must be <= 20");
  WhichWayReport r{};
  r.beta = beta;
  r.delta = delta;
  const oracle::WhichWay w = oracle::whichway_probabilities(beta, delta);
  r.p_plus_oracle = w.p_plus;
  r.p_minus_oracle = w.p_minus;
  r.fractional_error_oracle = w.fractional_error.value();
  r.detect_prob_oracle = w.detect_prob;

  const std::size_t n = std::max(safe_truncation(beta, nmax), safe_truncation(delta, nmax));
  r.nmax_used = n;
  const FockVector probe = coherent_state(delta, n).state;
  r.p_plus_sim = std::norm(inner(probe, coherent_state(beta, n).state));
  r.p_minus_sim = std::norm(inner(probe, coherent_state(-beta, n).state));
  r.ratio_sim = r.p_minus_sim / r.p_plus_sim;
  r.detect_prob_sim = std::norm(probe[0]);

  r.target_errors = {0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 1e-3, 1e-4, 1e-6};
  if (beta > 0.0) {
    for (const auto& p : oracle::tradeoff_curve(beta, r.target_errors)) {
      r.tradeoff.push_back({p.fractional_error, p.delta, p.detect_prob});
    }
  }
  return r;
}

std::string whichway_csv(const WhichWayReport& r) {
  std::string out = "# version=" + std::string(version()) + "\n";
  out += "# beta=" + format_double(r.beta) + "\n# delta=" + format_double(r.delta) + "\n";
  out += "# nmax_used=" + std::to_string(r.nmax_used) + "\n";
  out += "# p_plus=" + format_double(r.p_plus_oracle) + " simulated=" + format_double(r.p_plus_sim) + "\n";
  out += "# p_minus=" + format_double(r.p_minus_oracle) + " simulated=" + format_double(r.p_minus_sim) + "\n";
  out += "# fractional_error=" + format_double(r.fractional_error_oracle) +
         " simulated=" + format_double(r.ratio_sim) + "\n";
  out += "# detect_prob=" + format_double(r.detect_prob_oracle) +
         " simulated=" + format_double(r.detect_prob_sim) + "\n";
  out += "fractional_error,delta,detect_prob\n";
  for (const auto& p : r.tradeoff) {
    out += format_double(p.fractional_error) + "," + format_double(p.delta) + "," + format_double(p.detect_prob) + "\n";
  }
  return out;
}

nlohmann::ordered_json whichway_json(const WhichWayReport& r) {
  nlohmann::ordered_json j;
  j["meta"] = {{"version", std::string(version())}, {"beta", r.beta}, {"delta", r.delta}, {"nmax_used", r.nmax_used}};
  j["oracle"] = {{"p_plus", r.p_plus_oracle},
                 {"p_minus", r.p_minus_oracle},
                 {"fractional_error", r.fractional_error_oracle},
                 {"detect_prob", r.detect_prob_oracle}};
  j["simulated"] = {{"p_plus", r.p_plus_sim},
                    {"p_minus", r.p_minus_sim},
                    {"fractional_error", r.ratio_sim},
                    {"detect_prob", r.detect_prob_sim}};
  j["max_deviation"] = r.max_deviation();
  nlohmann::ordered_json curve = nlohmann::ordered_json::array();
  for (const auto& p : r.tradeoff) {
    curve.push_back({{"fractional_error", p.fractional_error}, {"delta", p.delta}, {"detect_prob", p.detect_prob}});
  }
  j["tradeoff"] = std::move(curve);
  return j;
}

}  // namespace atomslit
