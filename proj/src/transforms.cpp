#include "atomslit/transforms.hpp"

#include "atomslit/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace atomslit {

namespace {

void require_two_modes(const FockSpace& space, const char* who) {
  if (space.modes() != 2) {
    throw SpaceMismatchError(std::string(who) + ": needs a two-oscillator atomic space, got " +
                             std::to_string(space.modes()) + " mode(s)");
  }
}

}  // namespace

TwoPathMixture apply_single_excitation_unitary(const TwoPathMixture& m, const Eigen::Matrix2cd& u) {
  const FockSpace& space = m.space();
  require_two_modes(space, "single-excitation unitary");
  const auto i10 = static_cast<Eigen::Index>(space.index({1, 0}));
  const auto i01 = static_cast<Eigen::Index>(space.index({0, 1}));
  return m.map_states([&](const FockVector& v) {
    CVector a = v.amplitudes();
    const cplx x = a(i10);
    const cplx y = a(i01);
    a(i10) = u(0, 0) * x + u(0, 1) * y;
    a(i01) = u(1, 0) * x + u(1, 1) * y;
    return FockVector(v.space(), std::move(a));
  });
}

Eigen::Matrix2cd eraser_rotation() {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd r;
  // Columns are the images of |1,0> and |0,1>.
  r << h, h,
      -h, h;
  return r;
}

TwoPathMixture apply_eraser(const TwoPathMixture& m) {
  return apply_single_excitation_unitary(m, eraser_rotation());
}

TwoPathMixture apply_eraser_inverse(const TwoPathMixture& m) {
  return apply_single_excitation_unitary(m, eraser_rotation().adjoint());
}

Eigen::Matrix2cd beat_propagator(double g, double t) {
  const double c = std::cos(g * t);
  const cplx s(0.0, -std::sin(g * t));
  Eigen::Matrix2cd u;
  u << c, s,
      s, c;
  return u;
}

TwoPathMixture evolve_beat(const TwoPathMixture& m, double g, double t) {
  if (!(g >= 0.0)) throw std::invalid_argument("evolve_beat: coupling g must be >= 0");
  if (!(t >= 0.0)) throw std::invalid_argument("evolve_beat: time must be >= 0");
  return apply_single_excitation_unitary(m, beat_propagator(g, t));
}

double beat_frequency(double g) { return 2.0 * g; }

double quarter_beat_time(double g) {
  if (!(g > 0.0)) throw std::invalid_argument("quarter_beat_time: coupling g must be > 0");
  return std::numbers::pi / (4.0 * g);
}

TwoPathMixture apply_dispersive(const TwoPathMixture& m, const std::set<FreqTag>& tags) {
  if (tags.empty()) throw std::invalid_argument("apply_dispersive: no frequency tags given");
  std::vector<TwoPathComponent> out;
  out.reserve(m.size());
  for (const auto& c : m.components()) {
    if (tags.contains(c.tag())) {
      out.emplace_back(c.psi1(), -c.psi2(), c.tag(), c.weight());
    } else {
      out.push_back(c);
    }
  }
  return TwoPathMixture(std::move(out));
}

namespace {

// Transverse recoil mode: the only mode, or "y" next to a longitudinal "z".
std::size_t recoil_mode(const FockSpace& space, std::string_view name) {
  if (space.modes() == 1) return 0;
  if (auto y = space.find_mode("y"); y && space.find_mode("z")) return *y;
  throw SpaceMismatchError("projector '" + std::string(name) +
                           "' needs a single-oscillator or (z, y) atomic space");
}

CMatrix outer(const CVector& v) { return v * v.adjoint(); }

}  // namespace

AtomicProjector identity_projector(const FockSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  return AtomicProjector(space, CMatrix::Identity(n, n), "none");
}

AtomicProjector named_projector(std::string_view name, const FockSpace& space) {
  const std::string label(name);
  if (name == "ground") {
    const std::vector<std::size_t> zeros(space.modes(), 0);
    return AtomicProjector(space, outer(FockVector::basis(space, zeros).amplitudes()), label);
  }
  if (name == "single_atom_0" || name == "single_atom_1") {
    const std::size_t level = name.back() == '0' ? 0 : 1;
    return AtomicProjector(space, level_projector(space, recoil_mode(space, name), level), label);
  }
  const bool two_atom = name == "atom1_excited" || name == "atom2_excited" || name == "sym" ||
                        name == "antisym";
  if (!two_atom) throw std::invalid_argument("unknown projector name '" + label + "'");
  if (space.modes() != 2 || space.find_mode("z")) {
    throw SpaceMismatchError("projector '" + label + "' needs a two-atom space");
  }
  const CVector e10 = FockVector::basis(space, {1, 0}).amplitudes();
  const CVector e01 = FockVector::basis(space, {0, 1}).amplitudes();
  if (name == "atom1_excited") return AtomicProjector(space, outer(e10), label);
  if (name == "atom2_excited") return AtomicProjector(space, outer(e01), label);
  const double h = 1.0 / std::sqrt(2.0);
  if (name == "sym") return AtomicProjector(space, outer(h * (e10 + e01)), label);
  return AtomicProjector(space, outer(h * (e10 - e01)), label);
}

}  // namespace atomslit
