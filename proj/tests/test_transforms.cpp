#include "atomslit/errors.hpp"
#include "atomslit/scenarios.hpp"
#include "atomslit/transforms.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace atomslit;

namespace {

ScenarioSpec first_order_B(double beta) {
  ScenarioSpec s;
  s.config = Config::B;
  s.beta = beta;
  s.treatment = Treatment::FirstOrder;
  return s;
}

}  // namespace

TEST_CASE("eraser rotation maps the single-excitation states") {
  const Eigen::Matrix2cd r = eraser_rotation();
  CHECK((r.adjoint() * r - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  const FockSpace s = two_atom_space(4);
  const auto e10 = FockVector::basis(s, {1, 0});
  const auto e01 = FockVector::basis(s, {0, 1});
  const TwoPathMixture m = TwoPathComponent(e10, e01);
  const auto out = apply_eraser(m).components().front();
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(out.psi1().at({1, 0}) - h) < 1e-15);
  CHECK(std::abs(out.psi1().at({0, 1}) + h) < 1e-15);
  CHECK(std::abs(out.psi2().at({1, 0}) - h) < 1e-15);
  CHECK(std::abs(out.psi2().at({0, 1}) - h) < 1e-15);
}

TEST_CASE("eraser leaves other basis states alone and is reversible") {
  const FockSpace s = two_atom_space(4);
  const auto g = FockVector::basis(s, {0, 0});
  const auto e22 = FockVector::basis(s, {2, 2});
  const TwoPathMixture m = TwoPathComponent(g + e22, g);
  CHECK(approx_equal(apply_eraser(m), m, 1e-15));
  const auto b = build(first_order_B(0.3));
  CHECK(approx_equal(apply_eraser_inverse(apply_eraser(b)), b, 1e-12));
  CHECK_THROWS_AS(apply_eraser(TwoPathComponent(FockVector::basis(FockSpace::single(3), {0}),
                                                FockVector::basis(FockSpace::single(3), {0}))),
                  SpaceMismatchError);
}

TEST_CASE("eraser plus coincidence restores the fringe") {
  const double b = 0.3;
  const auto m = apply_eraser(build(first_order_B(b)));
  CHECK(std::abs(visibility(m) - (1 - b * b)) < 1e-12);
  const FockSpace& s = m.space();
  for (const char* name : {"atom1_excited", "atom2_excited", "ground"}) {
    const auto c = condition(m, named_projector(name, s));
    CHECK(std::abs(visibility(c.mixture) - 1.0) < 1e-12);
  }
  const auto c1 = condition(m, named_projector("atom1_excited", s));
  const auto c2 = condition(m, named_projector("atom2_excited", s));
  CHECK(std::abs(std::remainder(phase_offset(c1.mixture) - phase_offset(c2.mixture), 2 * std::numbers::pi)) ==
        doctest::Approx(std::numbers::pi));
  CHECK(c1.probability == doctest::Approx(b * b / 2));
}

TEST_CASE("beat propagator against an integrated two-mode equation") {
  for (double g : {0.5, 1.0, 2.0}) {
    for (double t : {0.1, 0.7, quarter_beat_time(g)}) {
      const auto [x, y] = testref::coupled_modes(g, t);
      const Eigen::Matrix2cd u = beat_propagator(g, t);
      CHECK(std::abs(u(0, 0) - x) < 1e-10);
      CHECK(std::abs(u(1, 0) - y) < 1e-10);
      CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
    }
  }
  CHECK(beat_frequency(1.5) == 3.0);
  CHECK(quarter_beat_time(1.0) == doctest::Approx(std::numbers::pi / 4));
  CHECK_THROWS_AS(quarter_beat_time(0.0), std::invalid_argument);
}

TEST_CASE("beat evolution at a quarter period acts as an eraser") {
  const double g = 2.0;
  const auto m = evolve_beat(build(first_order_B(0.3)), g, quarter_beat_time(g));
  const auto c = condition(m, named_projector("atom1_excited", m.space()));
  CHECK(std::abs(visibility(c.mixture) - 1.0) < 1e-12);
  const auto zero = evolve_beat(build(first_order_B(0.3)), g, 0.0);
  CHECK(approx_equal(zero, build(first_order_B(0.3)), 1e-15));
  CHECK_THROWS_AS(evolve_beat(m, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(evolve_beat(m, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("dispersive element flips the path phase of selected light") {
  const FockSpace s = FockSpace::single(3);
  const auto g = FockVector::basis(s, {0});
  const TwoPathMixture m = TwoPathComponent(g, g, FreqTag::Shifted, 1.0);
  const auto flipped = apply_dispersive(m, {FreqTag::Shifted});
  CHECK(std::abs(flipped.components()[0].psi2()[0] + 1.0) < 1e-15);
  CHECK(approx_equal(apply_dispersive(m, {FreqTag::Elastic}), m, 0.0));
  CHECK(approx_equal(apply_dispersive(flipped, {FreqTag::Shifted}), m, 0.0));
  CHECK_THROWS_AS(apply_dispersive(m, {}), std::invalid_argument);
}

TEST_CASE("named projectors") {
  const FockSpace two = two_atom_space(3);
  for (auto name : {"ground", "atom1_excited", "atom2_excited", "sym", "antisym"}) {
    const auto p = named_projector(name, two);
    CHECK(p.name() == name);
    CHECK((p.matrix() * p.matrix() - p.matrix()).norm() < 1e-14);
  }
  const CMatrix sum = named_projector("sym", two).matrix() + named_projector("antisym", two).matrix();
  const CMatrix ends =
      named_projector("atom1_excited", two).matrix() + named_projector("atom2_excited", two).matrix();
  CHECK((sum - ends).norm() < 1e-14);
  CHECK_THROWS_AS(named_projector("single_atom_0", two), SpaceMismatchError);

  const FockSpace one = single_atom_space(4);
  CHECK(named_projector("single_atom_1", one).matrix()(1, 1) == cplx(1.0));
  CHECK_THROWS_AS(named_projector("atom1_excited", one), SpaceMismatchError);
  CHECK_THROWS_AS(named_projector("sym", one), SpaceMismatchError);

  const FockSpace zy = longitudinal_space(5, 4);
  const CMatrix y1 = named_projector("single_atom_1", zy).matrix();
  CHECK(y1.trace().real() == doctest::Approx(5.0));
  CHECK(y1(zy.index({3, 1}), zy.index({3, 1})) == cplx(1.0));
  CHECK_THROWS_AS(named_projector("atom2_excited", zy), SpaceMismatchError);
  CHECK_THROWS_AS(named_projector("bogus", two), std::invalid_argument);
  CHECK(identity_projector(two).name() == "none");
}
