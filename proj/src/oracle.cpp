#include "atomslit/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace atomslit::oracle {

namespace {

void require_c_domain(cplx beta) {
  if (!(std::norm(beta) < 0.5)) throw std::domain_error("|beta|^2 must be < 0.5");
}

}  // namespace

double contrast_B(cplx beta) {
  if (!(std::abs(beta) < 1.0)) throw std::domain_error("contrast_B: |beta| must be < 1");
  return 1.0 - std::norm(beta);
}

double contrast_C(cplx beta) {
  require_c_domain(beta);
  return 1.0 - 2.0 * std::norm(beta);
}

double contrast_exact(Config config, cplx beta) {
  switch (config) {
    case Config::A: return 1.0;
    case Config::B: return std::exp(-std::norm(beta));
    case Config::C1:
    case Config::C2:
    case Config::D: return std::exp(-2.0 * std::norm(beta));
    case Config::E: break;
  }
  throw std::invalid_argument("contrast_exact: no exact closed form for config E");
}

double contrast_first_order(Config config, cplx beta) {
  switch (config) {
    case Config::A: return 1.0;
    case Config::B:
    case Config::E: return contrast_B(beta);
    case Config::C1:
    case Config::C2:
    case Config::D: return contrast_C(beta);
  }
  throw std::logic_error("unreachable config");
}

WhichWay whichway_probabilities(cplx beta, cplx delta) {
  WhichWay w;
  w.p_plus = std::exp(-std::norm(delta - beta));
  w.p_minus = std::exp(-std::norm(delta + beta));
  if (beta.imag() == 0.0 && delta.imag() == 0.0 && beta.real() >= 0.0 && delta.real() >= 0.0) {
    w.fractional_error = std::exp(-4.0 * beta.real() * delta.real());
  }
  w.detect_prob = std::exp(-std::norm(delta));
  return w;
}

std::vector<TradeoffPoint> tradeoff_curve(double beta, std::span<const double> target_errors) {
  if (!(beta > 0.0)) throw std::domain_error("tradeoff_curve: beta must be > 0");
  std::vector<TradeoffPoint> out;
  out.reserve(target_errors.size());
  for (double e : target_errors) {
    if (!(e > 0.0 && e < 1.0)) throw std::domain_error("tradeoff_curve: target error must be in (0, 1)");
    const double delta = -std::log(e) / (4.0 * beta);
    out.push_back({e, delta, std::exp(-delta * delta)});
  }
  return out;
}

std::vector<WeightEntry> longpulse_weights(Config config, cplx beta) {
  if (config == Config::A) return {{"elastic", 1.0}};
  require_c_domain(beta);
  const double b2 = std::norm(beta);
  switch (config) {
    case Config::B: return {{"elastic", 1.0 - b2}, {"atom1", b2 / 2.0}, {"atom2", b2 / 2.0}};
    case Config::C1:
    case Config::C2: return {{"elastic", 1.0 - b2}, {"shifted", b2}};
    case Config::E: return {{"elastic", 1.0 - b2}, {"sym", b2 / 2.0}, {"antisym", b2 / 2.0}};
    default: break;
  }
  throw std::invalid_argument("longpulse_weights: no long-pulse mixture for config D");
}

double longpulse_contrast(Config config, cplx beta, const std::set<std::string>& flipped) {
  double coherent = 0.0;
  for (const auto& [label, w] : longpulse_weights(config, beta)) {
    double sign = 0.0;
    if (label == "elastic" || label == "sym") sign = 1.0;
    else if (label == "shifted" || label == "antisym") sign = -1.0;
    if (flipped.contains(label)) sign = -sign;
    coherent += sign * w;
  }
  return std::abs(coherent);
}

}  // namespace atomslit::oracle
