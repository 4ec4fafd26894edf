#include "atomslit/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace atomslit;
using oracle::cplx;

TEST_CASE("closed-form contrasts") {
  CHECK(oracle::contrast_B(0.2) == doctest::Approx(0.96));
  CHECK(oracle::contrast_C(0.2) == doctest::Approx(0.92));
  CHECK(oracle::contrast_B(cplx(0.0, 0.5)) == doctest::Approx(0.75));
  CHECK_THROWS_AS(oracle::contrast_B(1.0), std::domain_error);
  CHECK_THROWS_AS(oracle::contrast_C(0.75), std::domain_error);
  CHECK(oracle::contrast_exact(Config::A, 0.7) == 1.0);
  CHECK(oracle::contrast_exact(Config::B, 0.2) == doctest::Approx(0.960789439152323).epsilon(1e-14));
  CHECK(oracle::contrast_exact(Config::C1, 0.3) == doctest::Approx(0.835270211411272).epsilon(1e-14));
  CHECK(oracle::contrast_exact(Config::D, 0.3) == oracle::contrast_exact(Config::C2, 0.3));
  CHECK_THROWS_AS(oracle::contrast_exact(Config::E, 0.1), std::invalid_argument);
  CHECK(oracle::contrast_first_order(Config::E, 0.3) == doctest::Approx(0.91));
  CHECK(oracle::contrast_first_order(Config::D, 0.3) == doctest::Approx(0.82));
}

TEST_CASE("contrast falls monotonically with beta") {
  double prev_b = 2.0, prev_c = 2.0;
  for (int k = 0; k <= 30; ++k) {
    const double b = 0.02 * k;
    const double vb = oracle::contrast_B(b);
    const double vc = oracle::contrast_C(b);
    CHECK(vb <= prev_b);
    CHECK(vc <= prev_c);
    CHECK(vc <= vb);
    prev_b = vb;
    prev_c = vc;
  }
}

TEST_CASE("which-way probabilities") {
  const auto w = oracle::whichway_probabilities(1.0, 1.0);
  CHECK(w.p_plus == doctest::Approx(1.0));
  CHECK(w.p_minus == doctest::Approx(0.0183156388887342).epsilon(1e-14));
  REQUIRE(w.fractional_error.has_value());
  CHECK(*w.fractional_error == doctest::Approx(std::exp(-4.0)));
  CHECK(w.detect_prob == doctest::Approx(std::exp(-1.0)));
  CHECK_FALSE(oracle::whichway_probabilities(cplx(0.0, 1.0), 1.0).fractional_error.has_value());
  CHECK_FALSE(oracle::whichway_probabilities(1.0, -1.0).fractional_error.has_value());
}

TEST_CASE("tradeoff: smaller error costs detection probability") {
  const std::vector<double> errors{0.1, 0.01, 1e-3, 1e-6};
  const auto curve = oracle::tradeoff_curve(0.5, errors);
  REQUIRE(curve.size() == errors.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].fractional_error == errors[i]);
    CHECK(std::exp(-4 * 0.5 * curve[i].delta) == doctest::Approx(errors[i]));
    if (i > 0) CHECK(curve[i].detect_prob < curve[i - 1].detect_prob);
  }
  const std::vector<double> bad{1.5};
  CHECK_THROWS_AS(oracle::tradeoff_curve(0.5, bad), std::domain_error);
  CHECK_THROWS_AS(oracle::tradeoff_curve(0.0, errors), std::domain_error);
}

TEST_CASE("long-pulse weights and contrast") {
  for (Config c : {Config::A, Config::B, Config::C1, Config::C2, Config::E}) {
    double total = 0.0;
    for (const auto& e : oracle::longpulse_weights(c, 0.4)) total += e.weight;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(oracle::longpulse_weights(Config::D, 0.1), std::invalid_argument);
  CHECK(oracle::longpulse_contrast(Config::C1, 0.5) == doctest::Approx(0.5));
  CHECK(oracle::longpulse_contrast(Config::C1, 0.5, {"shifted"}) == doctest::Approx(1.0));
  CHECK(oracle::longpulse_contrast(Config::B, 0.5) == doctest::Approx(0.75));
  CHECK(oracle::longpulse_contrast(Config::E, 0.5, {"antisym"}) == doctest::Approx(1.0));
  CHECK(oracle::longpulse_contrast(Config::A, 0.5) == 1.0);
}
