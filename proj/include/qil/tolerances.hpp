#pragma once

namespace qil {

/// Numerical thresholds used by every validity check in the library.
struct Tolerances {
  double qubit_norm = 1e-12;
  double state_norm = 1e-10;
  double unitarity = 1e-10;
  double hermiticity = 1e-10;
  double projector = 1e-10;
  double completeness = 1e-10;
  double probability_sum = 1e-10;
  double trace = 1e-10;
  double negative_eigenvalue = 1e-10;
  // Outcomes with probability at or below this are treated as impossible.
  double zero_probability = 1e-15;
};

inline constexpr Tolerances kTolerances{};

}  // namespace qil
