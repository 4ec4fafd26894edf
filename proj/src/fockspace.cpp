#include "atomslit/fockspace.hpp"

#include "atomslit/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace atomslit {

FockSpace::FockSpace(std::vector<std::size_t> mode_dims, std::vector<std::string> labels)
    : dims_(std::move(mode_dims)), labels_(std::move(labels)) {
  if (dims_.empty() || dims_.size() > kMaxModes) {
    throw std::invalid_argument("FockSpace: need between 1 and " + std::to_string(kMaxModes) +
                                " modes, got " + std::to_string(dims_.size()));
  }
  for (std::size_t d : dims_) {
    if (d < 2) throw std::invalid_argument("FockSpace: every mode dimension must be >= 2");
    total_ *= d;
  }
  if (labels_.empty()) {
    for (std::size_t m = 0; m < dims_.size(); ++m) labels_.push_back("mode" + std::to_string(m));
  }
  if (labels_.size() != dims_.size()) {
    throw std::invalid_argument("FockSpace: label count does not match mode count");
  }
}

FockSpace FockSpace::single(std::size_t dim, std::string label) {
  return FockSpace({dim}, {std::move(label)});
}

std::optional<std::size_t> FockSpace::find_mode(std::string_view label) const {
  for (std::size_t m = 0; m < labels_.size(); ++m) {
    if (labels_[m] == label) return m;
  }
  return std::nullopt;
}

std::size_t FockSpace::stride(std::size_t mode) const {
  if (mode >= dims_.size()) throw std::out_of_range("FockSpace: mode index out of range");
  std::size_t s = 1;
  for (std::size_t m = mode + 1; m < dims_.size(); ++m) s *= dims_[m];
  return s;
}

std::size_t FockSpace::index(std::span<const std::size_t> levels) const {
  if (levels.size() != dims_.size()) {
    throw std::invalid_argument("FockSpace: expected " + std::to_string(dims_.size()) + " levels");
  }
  std::size_t idx = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (levels[m] >= dims_[m]) throw std::out_of_range("FockSpace: level out of range");
    idx = idx * dims_[m] + levels[m];
  }
  return idx;
}

std::vector<std::size_t> FockSpace::levels(std::size_t index) const {
  if (index >= total_) throw std::out_of_range("FockSpace: joint index out of range");
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t m = dims_.size(); m-- > 0;) {
    out[m] = index % dims_[m];
    index /= dims_[m];
  }
  return out;
}

FockVector::FockVector(FockSpace space, CVector amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != space_.dimension()) {
    throw SpaceMismatchError("FockVector: amplitude length " + std::to_string(amps_.size()) +
                             " does not match space dimension " +
                             std::to_string(space_.dimension()));
  }
}

FockVector FockVector::zero(const FockSpace& space) {
  return FockVector(space, CVector::Zero(static_cast<Eigen::Index>(space.dimension())));
}

FockVector FockVector::basis(const FockSpace& space, std::span<const std::size_t> levels) {
  FockVector v = zero(space);
  v.amps_(static_cast<Eigen::Index>(space.index(levels))) = 1.0;
  return v;
}

bool FockVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) < tol; }

FockVector FockVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("FockVector: cannot normalize the zero vector");
  return FockVector(space_, amps_ / n);
}

FockVector FockVector::apply(const CMatrix& op) const {
  if (op.rows() != amps_.size() || op.cols() != amps_.size()) {
    throw SpaceMismatchError("FockVector::apply: operator shape does not match space");
  }
  return FockVector(space_, op * amps_);
}

FockVector& FockVector::operator+=(const FockVector& rhs) {
  if (!space_.compatible(rhs.space_)) throw SpaceMismatchError("FockVector: space mismatch in +");
  amps_ += rhs.amps_;
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& rhs) {
  if (!space_.compatible(rhs.space_)) throw SpaceMismatchError("FockVector: space mismatch in -");
  amps_ -= rhs.amps_;
  return *this;
}

FockVector& FockVector::operator*=(cplx s) {
  amps_ *= s;
  return *this;
}

cplx inner(const FockVector& u, const FockVector& v) {
  if (!u.space().compatible(v.space())) throw SpaceMismatchError("inner: space mismatch");
  return u.amplitudes().dot(v.amplitudes());  // Eigen conjugates the left operand
}

FockVector tensor(std::span<const FockVector> vs) {
  if (vs.empty()) throw std::invalid_argument("tensor: need at least one vector");
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (const auto& v : vs) {
    dims.insert(dims.end(), v.space().mode_dims().begin(), v.space().mode_dims().end());
    labels.insert(labels.end(), v.space().labels().begin(), v.space().labels().end());
  }
  FockSpace joint(std::move(dims), std::move(labels));

  CVector acc = vs[0].amplitudes();
  for (std::size_t k = 1; k < vs.size(); ++k) {
    const CVector& b = vs[k].amplitudes();
    CVector next(acc.size() * b.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) next.segment(i * b.size(), b.size()) = acc(i) * b;
    acc = std::move(next);
  }
  return FockVector(std::move(joint), std::move(acc));
}

FockVector tensor(std::initializer_list<FockVector> vs) {
  return tensor(std::span<const FockVector>(vs.begin(), vs.size()));
}

namespace {

void check_level(const FockSpace& space, std::size_t mode, std::size_t level) {
  if (mode >= space.modes()) throw std::out_of_range("mode index out of range");
  if (level >= space.dim(mode)) throw std::out_of_range("Fock level out of range");
}

std::size_t level_of(const FockSpace& space, std::size_t index, std::size_t mode) {
  return (index / space.stride(mode)) % space.dim(mode);
}

}  // namespace

Projection project(const FockVector& v, std::size_t mode, std::size_t fock_level) {
  check_level(v.space(), mode, fock_level);
  CVector out = v.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (level_of(v.space(), static_cast<std::size_t>(i), mode) != fock_level) out(i) = 0.0;
  }
  FockVector component(v.space(), std::move(out));
  const double p = component.norm_squared();
  return {std::move(component), p};
}

CMatrix level_projector(const FockSpace& space, std::size_t mode, std::size_t level) {
  check_level(space, mode, level);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  CMatrix p = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (level_of(space, static_cast<std::size_t>(i), mode) == level) p(i, i) = 1.0;
  }
  return p;
}

CMatrix excited_projector(const FockSpace& space, std::size_t mode) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  return CMatrix::Identity(n, n) - level_projector(space, mode, 0);
}

CMatrix annihilation(std::size_t nmax) {
  if (nmax < 2) throw std::invalid_argument("annihilation: nmax must be >= 2");
  const auto n = static_cast<Eigen::Index>(nmax);
  CMatrix a = CMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

CMatrix creation(std::size_t nmax) { return annihilation(nmax).adjoint(); }

CMatrix embed(const CMatrix& op, const FockSpace& space, std::size_t mode) {
  if (mode >= space.modes()) throw std::out_of_range("embed: mode index out of range");
  if (static_cast<std::size_t>(op.rows()) != space.dim(mode) || op.rows() != op.cols()) {
    throw SpaceMismatchError("embed: operator does not match mode dimension");
  }
  const auto outer = static_cast<Eigen::Index>(space.dimension() / (space.dim(mode) * space.stride(mode)));
  const auto inner_dim = static_cast<Eigen::Index>(space.stride(mode));
  const auto d = op.rows();
  const auto n = static_cast<Eigen::Index>(space.dimension());
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index o = 0; o < outer; ++o) {
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        if (op(r, c) == cplx{}) continue;
        for (Eigen::Index k = 0; k < inner_dim; ++k) {
          out((o * d + r) * inner_dim + k, (o * d + c) * inner_dim + k) = op(r, c);
        }
      }
    }
  }
  return out;
}

namespace {

void truncation_guard(cplx beta, std::size_t nmax, const char* who) {
  if (nmax < 2) throw std::invalid_argument(std::string(who) + ": nmax must be >= 2");
  if (std::norm(beta) > static_cast<double>(nmax)) {
    throw TruncationError(std::string(who) + ": |beta|^2 = " + std::to_string(std::norm(beta)) +
                          " exceeds truncation nmax = " + std::to_string(nmax));
  }
}

// Poisson tail sum_{n>=nmax} exp(-m) m^n / n!, with m = |beta|^2.
double poisson_tail(double mean, std::size_t nmax) {
  if (mean == 0.0) return 0.0;
  double term = std::exp(-mean);
  for (std::size_t n = 1; n <= nmax; ++n) term *= mean / static_cast<double>(n);
  double tail = 0.0;
  for (std::size_t n = nmax; term > 0.0; ++n) {
    tail += term;
    if (term < tail * 1e-18 && static_cast<double>(n) > mean) break;
    term *= mean / static_cast<double>(n + 1);
  }
  return tail;
}

}  // namespace

CoherentState coherent_state(cplx beta, std::size_t nmax) {
  truncation_guard(beta, nmax, "coherent_state");
  const auto n = static_cast<Eigen::Index>(nmax);
  CVector c(n);
  c(0) = std::exp(-std::norm(beta) / 2.0);
  for (Eigen::Index k = 1; k < n; ++k) c(k) = c(k - 1) * beta / std::sqrt(static_cast<double>(k));
  const double residual = poisson_tail(std::norm(beta), nmax);
  c /= c.norm();
  return {FockVector(FockSpace::single(nmax), std::move(c)), residual};
}

CMatrix displacement_operator(cplx beta, std::size_t nmax) {
  truncation_guard(beta, nmax, "displacement_operator");
  const CMatrix a = annihilation(nmax);
  const CMatrix generator = beta * a.adjoint() - std::conj(beta) * a;  // anti-Hermitian
  const CMatrix hermitian = cplx(0.0, 1.0) * generator;                // generator = -i H
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian);
  const CVector phases =
      (cplx(0.0, -1.0) * eig.eigenvalues().cast<cplx>()).array().exp().matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

CMatrix first_order_displacement(cplx beta, std::size_t nmax) {
  if (nmax < 2) throw std::invalid_argument("first_order_displacement: nmax must be >= 2");
  const CMatrix a = annihilation(nmax);
  const auto n = static_cast<Eigen::Index>(nmax);
  return CMatrix::Identity(n, n) + beta * (a.adjoint() + a);
}

std::size_t safe_truncation(cplx beta, std::size_t floor_dim) {
  std::size_t dim = std::max<std::size_t>(floor_dim, 2);
  const double mean = std::norm(beta);
  while (mean > static_cast<double>(dim) / 4.0 || poisson_tail(mean, dim) > 1e-17) ++dim;
  return dim;
}

RecoilParams RecoilParams::make(double Q, double x0) {
  if (!(x0 > 0.0)) throw std::invalid_argument("RecoilParams: oscillator length x0 must be > 0");
  return {Q, x0, cplx(0.0, Q * x0 / std::sqrt(2.0))};
}

}  // namespace atomslit
