#pragma once

// Truncated harmonic-oscillator Hilbert spaces and the handful of operators
// needed to describe photon recoil on trapped atoms.
//
// Joint index convention: row-major over modes, first-listed mode slowest.
// For mode_dims {n0, n1} the level pair (i, j) lives at index i * n1 + j.
// Every serializer and projector in this library uses the same ordering.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace atomslit {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultTruncation = 16;
inline constexpr std::size_t kMaxModes = 3;

class FockSpace {
 public:
  // Each dimension must be >= 2; at most kMaxModes modes. Missing labels
  // default to "mode0", "mode1", ...
  explicit FockSpace(std::vector<std::size_t> mode_dims,
                     std::vector<std::string> labels = {});

  static FockSpace single(std::size_t dim, std::string label = "mode0");

  std::size_t modes() const { return dims_.size(); }
  std::size_t dim(std::size_t mode) const { return dims_.at(mode); }
  std::size_t dimension() const { return total_; }
  const std::vector<std::size_t>& mode_dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> find_mode(std::string_view label) const;

  std::size_t index(std::span<const std::size_t> levels) const;
  std::size_t index(std::initializer_list<std::size_t> levels) const {
    return index(std::span<const std::size_t>(levels.begin(), levels.size()));
  }
  std::vector<std::size_t> levels(std::size_t index) const;

  // Distance between consecutive levels of `mode` in the joint index.
  std::size_t stride(std::size_t mode) const;

  // Same shape. Labels are descriptive and do not affect compatibility.
  bool compatible(const FockSpace& other) const { return dims_ == other.dims_; }
  bool operator==(const FockSpace& other) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::size_t total_ = 1;
};

class FockVector {
 public:
  FockVector(FockSpace space, CVector amplitudes);

  static FockVector zero(const FockSpace& space);
  static FockVector basis(const FockSpace& space, std::span<const std::size_t> levels);
  static FockVector basis(const FockSpace& space, std::initializer_list<std::size_t> levels) {
    return basis(space, std::span<const std::size_t>(levels.begin(), levels.size()));
  }

  const FockSpace& space() const { return space_; }
  const CVector& amplitudes() const { return amps_; }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }

  cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
  cplx at(std::initializer_list<std::size_t> levels) const { return (*this)[space_.index(levels)]; }

  double norm_squared() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = 1e-10) const;
  FockVector normalized() const;

  // Matrix must be dimension x dimension.
  FockVector apply(const CMatrix& op) const;

  FockVector& operator+=(const FockVector& rhs);
  FockVector& operator-=(const FockVector& rhs);
  FockVector& operator*=(cplx s);

  friend FockVector operator+(FockVector lhs, const FockVector& rhs) { return lhs += rhs; }
  friend FockVector operator-(FockVector lhs, const FockVector& rhs) { return lhs -= rhs; }
  friend FockVector operator*(cplx s, FockVector v) { return v *= s; }
  friend FockVector operator*(FockVector v, cplx s) { return v *= s; }
  friend FockVector operator-(FockVector v) { return v *= -1.0; }

 private:
  FockSpace space_;
  CVector amps_;
};

// Conjugate-linear in the first argument.
cplx inner(const FockVector& u, const FockVector& v);

// Kronecker composition; the first vector's modes become the slowest.
FockVector tensor(std::span<const FockVector> vs);
FockVector tensor(std::initializer_list<FockVector> vs);

struct Projection {
  FockVector component;  // unnormalized
  double probability;    // squared norm of component
};

// Keeps only amplitudes whose `mode` sits at `fock_level`.
Projection project(const FockVector& v, std::size_t mode, std::size_t fock_level);

// Diagonal projector onto `mode` at `level` (identity on other modes).
CMatrix level_projector(const FockSpace& space, std::size_t mode, std::size_t level);
// Projector onto `mode` at any level >= 1.
CMatrix excited_projector(const FockSpace& space, std::size_t mode);

CMatrix annihilation(std::size_t nmax);
CMatrix creation(std::size_t nmax);

// Lift a single-mode operator to the joint space (identity elsewhere).
CMatrix embed(const CMatrix& op, const FockSpace& space, std::size_t mode);

struct CoherentState {
  FockVector state;
  // Norm lost to truncation, 1 - sum_{n<nmax} |c_n|^2, evaluated as the
  // tail sum so it stays accurate when tiny.
  double truncation_residual;
};

// Series construction c_n = exp(-|b|^2/2) b^n / sqrt(n!), renormalized.
// Throws std::invalid_argument for nmax < 2, TruncationError for |b|^2 > nmax.
CoherentState coherent_state(cplx beta, std::size_t nmax = kDefaultTruncation);

// exp(b a^dag - b* a) on the truncated space, by diagonalizing the Hermitian
// generator. Independent of coherent_state.
CMatrix displacement_operator(cplx beta, std::size_t nmax = kDefaultTruncation);

// I + b (a^dag + a). Not unitary.
CMatrix first_order_displacement(cplx beta, std::size_t nmax = kDefaultTruncation);

// Smallest dimension >= floor_dim satisfying |b|^2 <= dim/4 whose discarded
// coherent-state tail is below 1e-17.
std::size_t safe_truncation(cplx beta, std::size_t floor_dim = kDefaultTruncation);

// Recoil displacement of an atom in a harmonic trap: beta = i Q x0 / sqrt(2).
struct RecoilParams {
  double Q;
  double x0;
  cplx beta;

  // Throws std::invalid_argument unless x0 > 0.
  static RecoilParams make(double Q, double x0);
};

}  // namespace atomslit
