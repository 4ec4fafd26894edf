#include "atomslit/errors.hpp"
#include "atomslit/fockspace.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace atomslit;

TEST_CASE("joint index is row-major with the first mode slowest") {
  FockSpace s({3, 4});
  CHECK(s.dimension() == 12);
  CHECK(s.index({1, 2}) == 6);
  CHECK(s.index({2, 3}) == 11);
  CHECK(s.stride(0) == 4);
  CHECK(s.stride(1) == 1);
  CHECK(s.levels(7) == std::vector<std::size_t>{1, 3});
  CHECK(s.labels() == std::vector<std::string>{"mode0", "mode1"});
  CHECK(s.find_mode("mode1") == 1u);
  CHECK_FALSE(s.find_mode("z").has_value());
}

TEST_CASE("space construction guards") {
  CHECK_THROWS_AS(FockSpace({1}), std::invalid_argument);
  CHECK_THROWS_AS(FockSpace({}), std::invalid_argument);
  CHECK_THROWS_AS(FockSpace({2, 2, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FockSpace({4}).index({4}), std::out_of_range);
  CHECK(FockSpace({3}, {"a"}).compatible(FockSpace({3}, {"b"})));
  CHECK_FALSE(FockSpace({3}).compatible(FockSpace({4})));
}

TEST_CASE("vector length must match the space") {
  CHECK_THROWS_AS(FockVector(FockSpace::single(3), CVector::Zero(4)), SpaceMismatchError);
  const auto u = FockVector::zero(FockSpace::single(3));
  const auto v = FockVector::zero(FockSpace::single(4));
  CHECK_THROWS_AS(inner(u, v), SpaceMismatchError);
  CHECK_THROWS_AS(u + v, SpaceMismatchError);
}

TEST_CASE("tensor product places the first factor slowest") {
  const FockSpace s2 = FockSpace::single(2);
  const FockSpace s3 = FockSpace::single(3);
  const auto t = tensor({FockVector::basis(s2, {1}), FockVector::basis(s3, {2})});
  CHECK(t.space().mode_dims() == std::vector<std::size_t>{2, 3});
  CHECK(t[5] == cplx(1.0));
  CHECK(t.at({1, 2}) == cplx(1.0));
  CHECK(t.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("project keeps a single level of one mode") {
  const FockSpace s({2, 2});
  const double r = 1.0 / std::sqrt(2.0);
  const auto v = r * FockVector::basis(s, {0, 0}) + r * FockVector::basis(s, {1, 1});
  const auto p = project(v, 0, 1);
  CHECK(p.probability == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(p.component.at({1, 1}) - r) < 1e-15);
  CHECK(std::abs(p.component.at({0, 0})) == 0.0);
  CHECK_THROWS_AS(project(v, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(project(v, 0, 2), std::out_of_range);
}

TEST_CASE("ladder operators") {
  const auto a = annihilation(5);
  const auto ad = creation(5);
  CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) < 1e-15);
  CHECK((ad - a.adjoint()).norm() == 0.0);
  const CMatrix n = ad * a;
  for (int k = 0; k < 5; ++k) CHECK(std::abs(n(k, k) - double(k)) < 1e-14);
}

TEST_CASE("coherent state guards") {
  CHECK_THROWS_AS(coherent_state(0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(coherent_state(3.0, 8), TruncationError);
  CHECK_NOTHROW(coherent_state(2.0, 4));
}

TEST_CASE("coherent state matches the series and reports its residual") {
  for (cplx b : {cplx(0.3, 0.0), cplx(0.0, 0.7), cplx(-0.5, 0.4), cplx(1.2, -0.3)}) {
    const auto cs = coherent_state(b, 24);
    CHECK(cs.state.is_normalized(1e-12));
    const auto ref = testref::coherent_series(b, 24);
    double kept = 0.0;
    for (int n = 0; n < 24; ++n) kept += std::norm(ref[n]);
    CHECK(std::abs(cs.truncation_residual - (1.0 - kept)) < 1e-15);
    for (int n = 0; n < 24; ++n) CHECK(std::abs(cs.state[n] - ref[n] / std::sqrt(kept)) < 1e-14);
  }
  CHECK(coherent_state(0.0).truncation_residual == 0.0);
  CHECK(coherent_state(0.0).state[0] == cplx(1.0));
}

TEST_CASE("coherent overlaps against frozen brute-force values") {
  const int nmax = 30;
  const auto p = coherent_state(0.3, nmax).state;
  const auto m = coherent_state(-0.3, nmax).state;
  CHECK(std::norm(inner(m, p)) == doctest::Approx(0.697676326071031).epsilon(1e-12));
  CHECK(std::abs(inner(p, m)) == doctest::Approx(0.835270211411272).epsilon(1e-12));
  CHECK(std::norm(inner(coherent_state(0.5, nmax).state, coherent_state(0.2, nmax).state)) ==
        doctest::Approx(0.913931185271228).epsilon(1e-12));
  const cplx b(0.4, -0.2), d(-0.1, 0.6);
  const cplx ref = testref::series_overlap(b, d);
  CHECK(std::abs(inner(coherent_state(b, nmax).state, coherent_state(d, nmax).state) - ref) < 1e-12);
}

TEST_CASE("displacement operator is unitary and agrees with the series state") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const cplx b(u(rng), u(rng));
    const std::size_t n = 24;
    const CMatrix D = displacement_operator(b, n);
    CHECK((D.adjoint() * D - CMatrix::Identity(n, n)).norm() < 1e-10);
    const CVector col = D.col(0);
    const auto cs = coherent_state(b, n).state;
    CHECK((col - cs.amplitudes()).norm() < 1e-8);
  }
}

TEST_CASE("first-order displacement residual is quadratic") {
  auto residual = [](double b) {
    const std::size_t n = 16;
    const CVector vac = CVector::Unit(n, 0);
    const CVector approx = first_order_displacement(b, n) * vac;
    return (coherent_state(b, n).state.amplitudes() - approx).norm();
  };
  CHECK(residual(0.1) < 2e-2);
  CHECK(residual(0.01) < 2e-4);
  CHECK(residual(0.1) == doctest::Approx(0.008648238594).epsilon(1e-8));
  CHECK(residual(0.01) == doctest::Approx(8.660133758e-5).epsilon(1e-8));
}

TEST_CASE("embed acts on one mode only") {
  const FockSpace s({3, 4});
  const CMatrix ad = embed(creation(3), s, 0);
  const auto v = FockVector::basis(s, {0, 2}).apply(ad);
  CHECK(std::abs(v.at({1, 2}) - 1.0) < 1e-15);
  CHECK(v.norm_squared() == doctest::Approx(1.0));
  CHECK_THROWS_AS(embed(creation(4), s, 0), SpaceMismatchError);
}

TEST_CASE("projectors") {
  const FockSpace s({3, 3});
  const CMatrix p = level_projector(s, 1, 0);
  CHECK((p * p - p).norm() < 1e-15);
  CHECK(p.trace().real() == doctest::Approx(3.0));
  const CMatrix e = excited_projector(s, 0);
  CHECK(e.trace().real() == doctest::Approx(6.0));
}

TEST_CASE("safe truncation and recoil parameters") {
  CHECK(safe_truncation(0.0) == kDefaultTruncation);
  const std::size_t n = safe_truncation(3.0);
  CHECK(n >= 36);
  CHECK(coherent_state(3.0, n).truncation_residual < 1e-17);
  const auto r = RecoilParams::make(2.0, 0.5);
  CHECK(std::abs(r.beta - cplx(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK_THROWS_AS(RecoilParams::make(1.0, 0.0), std::invalid_argument);
}
