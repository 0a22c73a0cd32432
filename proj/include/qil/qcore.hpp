#pragma once

// Pure-state quantum mechanics on dense Eigen types. Covers qubits on the
// Bloch sphere, state vectors with their unitary evolution, and projective
// measurement.
//
// Every type validates its invariants on construction and is immutable
// afterwards. All types are templated on the real scalar; the `d`-suffixed
// aliases at the bottom are what the rest of the library uses.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qil/errors.hpp"
#include "qil/rng.hpp"
#include "qil/tolerances.hpp"

namespace qil {

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  using R = typename Derived::RealScalar;
  return m.size() == 0 ? R(0) : m.cwiseAbs().maxCoeff();
}

template <typename Real>
Real hermitian_defect(const CMatrix<Real>& m) {
  return max_abs(m - m.adjoint());
}

template <typename Real>
void require_square_register(const CMatrix<Real>& m, const char* what) {
  if (m.rows() != m.cols() || !is_power_of_two(static_cast<std::size_t>(m.rows()))) {
    throw InvalidArgument(std::string(what) + ": expected a square matrix of dimension 2^k, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

template <typename Real>
Real min_eigenvalue(const CMatrix<Real>& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single qubits and the Bloch sphere

template <typename Real>
class Qubit {
 public:
  using Scalar = std::complex<Real>;

  Qubit(Scalar alpha, Scalar beta) : alpha_(alpha), beta_(beta) {
    const Real norm2 = std::norm(alpha) + std::norm(beta);
    if (!(std::abs(norm2 - Real(1)) <= kTolerances.qubit_norm)) {
      throw InvariantViolation("qubit amplitudes are not normalized: |alpha|^2 + |beta|^2 = " +
                               std::to_string(static_cast<double>(norm2)));
    }
  }

  /// Rescales (alpha, beta) to unit norm. Throws if both vanish.
  static Qubit normalized(Scalar alpha, Scalar beta) {
    const Real n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (n == Real(0)) throw InvalidArgument("cannot normalize the zero vector");
    return Qubit(alpha / n, beta / n);
  }

  static Qubit zero() { return Qubit(Scalar(1), Scalar(0)); }
  static Qubit one() { return Qubit(Scalar(0), Scalar(1)); }

  Scalar alpha() const { return alpha_; }
  Scalar beta() const { return beta_; }
  Eigen::Matrix<Scalar, 2, 1> vector() const { return {alpha_, beta_}; }

  bool is_cbs() const {
    return (alpha_ == Scalar(1) && beta_ == Scalar(0)) || (alpha_ == Scalar(0) && beta_ == Scalar(1));
  }

 private:
  Scalar alpha_;
  Scalar beta_;
};

/// Polar angle in [0, pi] and azimuth normalized into [0, 2 pi).
template <typename Real>
class BlochAngles {
 public:
  BlochAngles(Real theta, Real phi) : theta_(theta), phi_(normalize_phi(phi)) {
    if (!(theta >= Real(0) && theta <= std::numbers::pi_v<Real>)) {
      throw InvalidArgument("Bloch polar angle must lie in [0, pi]");
    }
  }

  Real theta() const { return theta_; }
  Real phi() const { return phi_; }

 private:
  static Real normalize_phi(Real phi) {
    constexpr Real two_pi = 2 * std::numbers::pi_v<Real>;
    if (!std::isfinite(phi)) throw InvalidArgument("Bloch azimuth must be finite");
    Real p = std::fmod(phi, two_pi);
    if (p < Real(0)) p += two_pi;
    if (p >= two_pi) p = Real(0);
    return p;
  }

  Real theta_;
  Real phi_;
};

template <typename Real>
Qubit<Real> qubit_from_bloch(const BlochAngles<Real>& angles) {
  using C = std::complex<Real>;
  const Real half = angles.theta() / 2;
  // sin(pi/2 * 2) is not exactly zero; pin the poles.
  const Real c = angles.theta() == std::numbers::pi_v<Real> ? Real(0) : std::cos(half);
  const Real s = angles.theta() == Real(0) ? Real(0) : std::sin(half);
  return Qubit<Real>::normalized(C(c), std::polar(s, angles.phi()));
}

/// Inverse of qubit_from_bloch. The global phase is discarded by rotating
/// alpha onto the nonnegative real axis.
template <typename Real>
BlochAngles<Real> bloch_from_qubit(const Qubit<Real>& q) {
  const Real a = std::abs(q.alpha());
  const Real b = std::abs(q.beta());
  const Real theta = 2 * std::atan2(b, a);
  Real phi = 0;
  if (a > Real(0) && b > Real(0)) phi = std::arg(q.beta()) - std::arg(q.alpha());
  return BlochAngles<Real>(std::clamp(theta, Real(0), std::numbers::pi_v<Real>), phi);
}

// ---------------------------------------------------------------------------
// Registers

template <typename Real>
class StateVector {
 public:
  using Scalar = std::complex<Real>;
  using Vector = CVector<Real>;

  explicit StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    const auto n = static_cast<std::size_t>(amplitudes_.size());
    if (!detail::is_power_of_two(n)) {
      throw InvariantViolation("state vector length " + std::to_string(n) + " is not a power of two");
    }
    num_qubits_ = detail::log2_exact(n);
    const Real norm = amplitudes_.norm();
    if (!(std::abs(norm - Real(1)) <= kTolerances.state_norm)) {
      throw InvariantViolation("state vector is not normalized: norm = " +
                               std::to_string(static_cast<double>(norm)));
    }
  }

  static StateVector normalized(const Vector& v) {
    const Real n = v.norm();
    if (n == Real(0)) throw InvalidArgument("cannot normalize the zero vector");
    return StateVector(v / n);
  }

  /// Computational basis state |index> over `num_qubits` qubits.
  static StateVector basis(int num_qubits, std::size_t index) {
    if (num_qubits < 0 || num_qubits > 30) throw InvalidArgument("unsupported qubit count");
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) throw InvalidArgument("basis index out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = Scalar(1);
    return StateVector(std::move(v));
  }

  static StateVector from_qubit(const Qubit<Real>& q) {
    Vector v(2);
    v << q.alpha(), q.beta();
    return StateVector(std::move(v));
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Scalar operator[](Eigen::Index i) const { return amplitudes_(i); }

 private:
  Vector amplitudes_;
  int num_qubits_ = 0;
};

/// |a> (x) |b>, with `a` occupying the high-order bits of the index.
template <typename Real>
StateVector<Real> tensor(const StateVector<Real>& a, const StateVector<Real>& b) {
  CVector<Real> out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  return StateVector<Real>(std::move(out));
}

template <typename Real>
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix<Real> m) : matrix_(std::move(m)) {
    detail::require_square_register(matrix_, "unitary");
    const auto n = matrix_.rows();
    const Real defect = detail::max_abs(CMatrix<Real>(matrix_.adjoint() * matrix_ - CMatrix<Real>::Identity(n, n)));
    if (!(defect <= kTolerances.unitarity)) {
      throw InvariantViolation("matrix is not unitary: max |U^dagger U - I| = " +
                               std::to_string(static_cast<double>(defect)));
    }
  }

  static UnitaryMatrix identity(Eigen::Index dim) { return UnitaryMatrix(CMatrix<Real>::Identity(dim, dim)); }

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix<Real>& matrix() const { return matrix_; }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("unitary product dimensions differ");
    return UnitaryMatrix(a.matrix_ * b.matrix_);
  }

 private:
  CMatrix<Real> matrix_;
};

template <typename Real>
class Hamiltonian {
 public:
  explicit Hamiltonian(CMatrix<Real> m, Real hbar = Real(1)) : matrix_(std::move(m)), hbar_(hbar) {
    detail::require_square_register(matrix_, "Hamiltonian");
    if (!(hbar > Real(0))) throw InvalidArgument("hbar must be positive");
    const Real defect = detail::hermitian_defect(matrix_);
    if (!(defect <= kTolerances.hermiticity)) {
      throw InvariantViolation("Hamiltonian is not Hermitian: max |H - H^dagger| = " +
                               std::to_string(static_cast<double>(defect)));
    }
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix<Real>& matrix() const { return matrix_; }
  Real hbar() const { return hbar_; }

 private:
  CMatrix<Real> matrix_;
  Real hbar_;
};

template <typename Real>
StateVector<Real> apply_unitary(const UnitaryMatrix<Real>& u, const StateVector<Real>& s) {
  if (u.dim() != s.dim()) {
    throw DimensionMismatch("unitary of dimension " + std::to_string(u.dim()) + " applied to state of dimension " +
                            std::to_string(s.dim()));
  }
  return StateVector<Real>(u.matrix() * s.amplitudes());
}

/// exp(-i H t / hbar) via the Hermitian eigendecomposition of H.
template <typename Real>
UnitaryMatrix<Real> evolve_hamiltonian(const Hamiltonian<Real>& h, Real t) {
  using C = std::complex<Real>;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h.matrix());
  const auto& v = es.eigenvectors();
  CVector<Real> phases(v.cols());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::exp(C(0, -es.eigenvalues()(k) * t / h.hbar()));
  }
  return UnitaryMatrix<Real>(v * phases.asDiagonal() * v.adjoint());
}

template <typename Real>
struct HamiltonianSegment {
  Hamiltonian<Real> hamiltonian;
  Real duration;
};

/// Piecewise-constant time dependence: U = U_n ... U_2 U_1 for segments in
/// chronological order.
template <typename Real>
UnitaryMatrix<Real> evolve_piecewise(std::span<const HamiltonianSegment<Real>> segments) {
  if (segments.empty()) throw InvalidArgument("at least one Hamiltonian segment is required");
  CMatrix<Real> u = evolve_hamiltonian(segments.front().hamiltonian, segments.front().duration).matrix();
  for (std::size_t i = 1; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.hamiltonian.dim() != u.rows()) throw DimensionMismatch("Hamiltonian segments differ in dimension");
    u = evolve_hamiltonian(seg.hamiltonian, seg.duration).matrix() * u;
  }
  return UnitaryMatrix<Real>(std::move(u));
}

// ---------------------------------------------------------------------------
// Projective measurement

/// Residuals of the projective-measurement axioms for a candidate operator set.
template <typename Real>
struct MeasurementAxioms {
  Real completeness = 0;   // max |sum M^dagger M - I|
  Real orthogonality = 0;  // max over i != j of max |M_i^dagger M_j|
  Real positivity = 0;     // magnitude of the most negative eigenvalue (0 if none)
  Real idempotency = 0;    // max |M^2 - M|
  Real resolution = 0;     // max |sum M - I|
  Real hermiticity = 0;    // max |M - M^dagger|

  bool satisfied(Real tol) const {
    return completeness <= tol && orthogonality <= tol && positivity <= tol && idempotency <= tol &&
           resolution <= tol && hermiticity <= tol;
  }
};

template <typename Real>
MeasurementAxioms<Real> measurement_axioms(std::span<const CMatrix<Real>> ops) {
  MeasurementAxioms<Real> out;
  if (ops.empty()) return out;
  const auto n = ops.front().rows();
  CMatrix<Real> gram = CMatrix<Real>::Zero(n, n);
  CMatrix<Real> sum = CMatrix<Real>::Zero(n, n);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& m = ops[i];
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("measurement operators differ in dimension");
    gram += m.adjoint() * m;
    sum += m;
    out.hermiticity = std::max(out.hermiticity, detail::hermitian_defect(m));
    out.idempotency = std::max(out.idempotency, detail::max_abs(CMatrix<Real>(m * m - m)));
    const CMatrix<Real> herm = (m + m.adjoint()) / Real(2);
    out.positivity = std::max(out.positivity, std::max(Real(0), -detail::min_eigenvalue(herm)));
    for (std::size_t j = 0; j < ops.size(); ++j) {
      if (i == j) continue;
      out.orthogonality = std::max(out.orthogonality, detail::max_abs(CMatrix<Real>(m.adjoint() * ops[j])));
    }
  }
  const CMatrix<Real> id = CMatrix<Real>::Identity(n, n);
  out.completeness = detail::max_abs(CMatrix<Real>(gram - id));
  out.resolution = detail::max_abs(CMatrix<Real>(sum - id));
  return out;
}

template <typename Real>
class MeasurementOperator {
 public:
  MeasurementOperator(std::size_t index, CMatrix<Real> m) : index_(index), matrix_(std::move(m)) {
    detail::require_square_register(matrix_, "measurement operator");
    const CMatrix<Real> single[] = {matrix_};
    const auto ax = measurement_axioms<Real>(single);
    if (!(ax.hermiticity <= kTolerances.projector && ax.idempotency <= kTolerances.projector &&
          ax.positivity <= kTolerances.projector)) {
      throw InvariantViolation("measurement operator " + std::to_string(index) + " is not an orthogonal projector");
    }
  }

  /// |b><b| on `num_qubits` qubits.
  static MeasurementOperator basis_projector(int num_qubits, std::size_t b) {
    const auto dim = Eigen::Index{1} << num_qubits;
    CMatrix<Real> m = CMatrix<Real>::Zero(dim, dim);
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = Real(1);
    return MeasurementOperator(b, std::move(m));
  }

  std::size_t index() const { return index_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix<Real>& matrix() const { return matrix_; }

 private:
  std::size_t index_;
  CMatrix<Real> matrix_;
};

template <typename Real>
class MeasurementSet {
 public:
  explicit MeasurementSet(std::vector<MeasurementOperator<Real>> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw InvalidArgument("a measurement set needs at least one operator");
    std::vector<CMatrix<Real>> mats;
    mats.reserve(ops_.size());
    for (const auto& op : ops_) mats.push_back(op.matrix());
    axioms_ = measurement_axioms<Real>(mats);
    if (!axioms_.satisfied(kTolerances.completeness)) {
      throw InvariantViolation("operators do not form a complete set of orthogonal projectors");
    }
  }

  /// {|b><b|} for b = 0 .. 2^k - 1.
  static MeasurementSet computational_basis(int num_qubits) {
    if (num_qubits < 0 || num_qubits > 12) throw InvalidArgument("dense measurement sets are limited to 12 qubits");
    std::vector<MeasurementOperator<Real>> ops;
    const std::size_t dim = std::size_t{1} << num_qubits;
    for (std::size_t b = 0; b < dim; ++b) ops.push_back(MeasurementOperator<Real>::basis_projector(num_qubits, b));
    return MeasurementSet(std::move(ops));
  }

  std::size_t size() const { return ops_.size(); }
  Eigen::Index dim() const { return ops_.front().dim(); }
  const MeasurementOperator<Real>& operator[](std::size_t m) const { return ops_.at(m); }
  const std::vector<MeasurementOperator<Real>>& operators() const { return ops_; }
  const MeasurementAxioms<Real>& axioms() const { return axioms_; }

 private:
  std::vector<MeasurementOperator<Real>> ops_;
  MeasurementAxioms<Real> axioms_;
};

/// M = sum_m lambda_m M_m with nonnegative eigenvalues.
template <typename Real>
class Observable {
 public:
  Observable(std::vector<Real> eigenvalues, MeasurementSet<Real> set)
      : eigenvalues_(std::move(eigenvalues)), set_(std::move(set)) {
    if (eigenvalues_.size() != set_.size()) {
      throw DimensionMismatch("observable needs one eigenvalue per measurement operator");
    }
    for (Real l : eigenvalues_) {
      if (!(l >= Real(0))) throw InvalidArgument("observable eigenvalues must be nonnegative");
    }
  }

  const std::vector<Real>& eigenvalues() const { return eigenvalues_; }
  const MeasurementSet<Real>& set() const { return set_; }

  CMatrix<Real> matrix() const {
    CMatrix<Real> m = CMatrix<Real>::Zero(set_.dim(), set_.dim());
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i) m += eigenvalues_[i] * set_[i].matrix();
    return m;
  }

 private:
  std::vector<Real> eigenvalues_;
  MeasurementSet<Real> set_;
};

template <typename Real>
class OutcomeDistribution {
 public:
  explicit OutcomeDistribution(std::vector<Real> p) : p_(std::move(p)) {
    Real total = 0;
    for (Real x : p_) {
      if (!(x >= -kTolerances.probability_sum && x <= Real(1) + kTolerances.probability_sum)) {
        throw InvariantViolation("probability outside [0, 1]");
      }
      total += x;
    }
    if (!(std::abs(total - Real(1)) <= kTolerances.probability_sum)) {
      throw InvariantViolation("probabilities do not sum to one");
    }
  }

  std::size_t size() const { return p_.size(); }
  Real operator[](std::size_t m) const { return p_.at(m); }
  const std::vector<Real>& probabilities() const& { return p_; }
  std::vector<Real> probabilities() && { return std::move(p_); }

 private:
  std::vector<Real> p_;
};

/// p(m) = <psi| M_m^dagger M_m |psi>.
template <typename Real>
OutcomeDistribution<Real> outcome_probabilities(const MeasurementSet<Real>& set, const StateVector<Real>& s) {
  if (set.dim() != s.dim()) throw DimensionMismatch("measurement set and state differ in dimension");
  std::vector<Real> p;
  p.reserve(set.size());
  for (const auto& op : set.operators()) p.push_back((op.matrix() * s.amplitudes()).squaredNorm());
  return OutcomeDistribution<Real>(std::move(p));
}

/// Post-measurement state M|psi> / sqrt(<psi|M^dagger M|psi>).
template <typename Real>
StateVector<Real> collapse(const MeasurementOperator<Real>& m, const StateVector<Real>& s) {
  if (m.dim() != s.dim()) throw DimensionMismatch("measurement operator and state differ in dimension");
  CVector<Real> projected = m.matrix() * s.amplitudes();
  const Real p = projected.squaredNorm();
  if (!(p > kTolerances.zero_probability)) {
    throw UndefinedProjection("outcome " + std::to_string(m.index()) +
                              " has zero probability; the post-measurement state is 0/0");
  }
  if (p == Real(1)) return StateVector<Real>(std::move(projected));
  return StateVector<Real>(projected / std::sqrt(p));
}

/// Inverse-CDF sampling over a fixed discrete distribution.
///
/// Zero-weight entries are never drawn, so degenerate distributions yield
/// their single outcome for every seed.
template <typename Real>
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const Real> weights) : cdf_(weights.size()) {
    Real acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += std::max(weights[i], Real(0));
      cdf_[i] = acc;
    }
    if (!(acc > Real(0))) throw InvalidArgument("cannot sample from an all-zero distribution");
  }

  std::size_t operator()(Rng& rng) const {
    const Real x = static_cast<Real>(rng.uniform()) * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<Real> cdf_;
};

/// Born-rule probabilities of the computational basis, |amplitude|^2.
template <typename Real>
std::vector<Real> basis_probabilities(const StateVector<Real>& s) {
  std::vector<Real> p(static_cast<std::size_t>(s.dim()));
  for (Eigen::Index i = 0; i < s.dim(); ++i) p[static_cast<std::size_t>(i)] = std::norm(s[i]);
  return p;
}

template <typename Real>
struct MeasurementSample {
  std::size_t outcome;
  StateVector<Real> post;
};

template <typename Real>
MeasurementSample<Real> sample_measurement(const MeasurementSet<Real>& set, const StateVector<Real>& s, Rng& rng) {
  const auto dist = outcome_probabilities(set, s);
  const DiscreteSampler<Real> sampler(std::span<const Real>(dist.probabilities()));
  const std::size_t m = sampler(rng);
  return {m, collapse(set[m], s)};
}

template <typename Real>
MeasurementSample<Real> sample_measurement(const MeasurementSet<Real>& set, const StateVector<Real>& s,
                                           std::uint64_t seed) {
  Rng rng(seed);
  return sample_measurement(set, s, rng);
}

/// <psi| M^power |psi> = sum_m lambda_m^power <psi|M_m|psi>.
template <typename Real>
Real observable_expectation(const Observable<Real>& obs, const StateVector<Real>& s, int power) {
  if (power < 1) throw InvalidArgument("observable power must be a positive integer");
  if (obs.set().dim() != s.dim()) throw DimensionMismatch("observable and state differ in dimension");
  Real total = 0;
  for (std::size_t m = 0; m < obs.eigenvalues().size(); ++m) {
    const Real weight = s.amplitudes().dot(obs.set()[m].matrix() * s.amplitudes()).real();
    total += std::pow(obs.eigenvalues()[m], power) * weight;
  }
  return total;
}

// ---------------------------------------------------------------------------

using Qubitd = Qubit<double>;
using BlochAnglesd = BlochAngles<double>;
using StateVectord = StateVector<double>;
using UnitaryMatrixd = UnitaryMatrix<double>;
using Hamiltoniand = Hamiltonian<double>;
using MeasurementOperatord = MeasurementOperator<double>;
using MeasurementSetd = MeasurementSet<double>;
using Observabled = Observable<double>;
using OutcomeDistributiond = OutcomeDistribution<double>;
using CVectord = CVector<double>;
using CMatrixd = CMatrix<double>;

}  // namespace qil
