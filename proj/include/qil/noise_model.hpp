#pragma once

// Measurement noise as the difference between the exact post-measurement
// state and the linear map (M_m / 2)|psi>, plus state-preparation noise.

#include <complex>
#include <cstdint>

#include <Eigen/Core>

#include "qil/qcore.hpp"

namespace qil {

enum class Outcome { zero = 0, one = 1 };

inline int index_of(Outcome m) { return static_cast<int>(m); }

/// n_{m,QM}: the part of the post-measurement state not captured by the
/// linear term. Only the |m> component can be nonzero.
struct MeasurementResidue {
  Outcome outcome;
  Eigen::Vector2cd vector;

  std::complex<double> coefficient() const { return vector(index_of(outcome)); }
};

/// (M_m / 2)|psi>: (alpha/2, 0) for m = 0, (0, beta/2) for m = 1.
Eigen::Vector2cd linear_term(Outcome m, const Qubitd& q);

/// a (2 - |a|) / (2 |a|) on |m>, where a is the amplitude of |m>.
/// Throws UndefinedResidue when that amplitude vanishes.
MeasurementResidue measurement_residue(Outcome m, const Qubitd& q);

struct ResidueDecomposition {
  Eigen::Vector2cd linear;
  MeasurementResidue residue;
  StateVectord exact;  // collapse(M_m, q)
  double defect;       // || linear + residue - exact ||
};

ResidueDecomposition decompose_and_verify(Outcome m, const Qubitd& q);

/// Coefficient of the degree-k term of the odd series expansion about |m>:
/// prod_{j=1}^{(k-1)/2} (2j-1)^2 / 2^k, for odd k >= 1.
double taylor_coefficient(int k);

/// Partial sum of the odd series through `order` (1, 3, 5, 7 or 9), with
/// vector powers taken element-wise. Diagnostic only: the series is not
/// known to converge to the collapsed state.
Eigen::Vector2cd taylor_partial_sum(Outcome m, const Qubitd& q, int order);

enum class StateNoiseMode { classical_pre_encode, amplitude_perturbation };

struct StateNoiseConfig {
  StateNoiseMode mode = StateNoiseMode::amplitude_perturbation;
  double magnitude = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Adds independent N(0, magnitude^2) noise to the real and imaginary part
/// of every amplitude, then renormalizes. The classical mode leaves the
/// state untouched; it acts on pixels before encoding.
StateVectord inject_state_noise(const StateVectord& s, const StateNoiseConfig& cfg);

}  // namespace qil
