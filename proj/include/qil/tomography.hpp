#pragma once

// Density matrices and linear-inversion state tomography over Pauli-word
// observables, with finite-shot frequency simulation.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qil/qcore.hpp"

namespace qil {

class DensityMatrix {
 public:
  /// Validates hermiticity and unit trace; `physical` is set from the
  /// spectrum (no eigenvalue below -tolerance).
  explicit DensityMatrix(CMatrixd m);

  Eigen::Index dim() const { return matrix_.rows(); }
  int num_qubits() const;
  const CMatrixd& matrix() const { return matrix_; }
  bool physical() const { return physical_; }
  Eigen::VectorXd eigenvalues() const;

 private:
  CMatrixd matrix_;
  bool physical_ = true;
};

DensityMatrix density_from_pure(const StateVectord& s);

struct MixtureComponent {
  double probability;
  StateVectord state;
};

DensityMatrix density_from_mixture(std::span<const MixtureComponent> components);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);
/// sum_i P_i^2 for the weights of an orthogonal decomposition.
double purity_from_weights(std::span<const double> weights);
/// (1 + r^2) / 2 for a single-qubit Bloch vector of radius r.
double purity_from_bloch(const std::array<double, 3>& expectations);

const Eigen::Matrix2cd& pauli_matrix(char letter);

/// (<sigma_x>, <sigma_y>, <sigma_z>) = Tr(sigma_a rho) for a single qubit.
std::array<double, 3> pauli_expectations(const DensityMatrix& rho);

/// rho = (I + <x> sigma_x + <y> sigma_y + <z> sigma_z) / 2. Inputs with Bloch
/// radius above one give an unphysical (but trace-one) matrix.
DensityMatrix single_qubit_reconstruct(const std::array<double, 3>& expectations);

/// Tensor product of Pauli matrices named by a word over {I, X, Y, Z}; the
/// first letter acts on the most significant qubit.
struct PauliObservable {
  explicit PauliObservable(std::string label);

  std::string label;
  CMatrixd matrix;

  bool is_identity() const { return label.find_first_not_of('I') == std::string::npos; }
};

/// Maps the real parameter vector t of a k-qubit density matrix to predicted
/// frequencies mu = M t. Parameters are ordered as the 2^k diagonal entries,
/// then the real parts of the strict upper triangle (row-major), then the
/// matching imaginary parts.
struct TomographyDesign {
  /// Rows and columns of one independent sub-system of M t = mu.
  struct Block {
    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
  };

  int num_qubits = 0;
  std::vector<PauliObservable> observables;
  Eigen::MatrixXd design_matrix;
  /// Decoupled blocks of the design matrix. Solving them separately keeps
  /// frequencies of one block from leaking into another through roundoff.
  std::vector<Block> blocks;

  Eigen::Index parameters() const { return design_matrix.cols(); }
};

/// All 4^k Pauli words; the identity word is the trace normalization row.
TomographyDesign full_pauli_design(int num_qubits);

/// Builds the design matrix for an arbitrary observable list. Throws
/// RankDeficient unless it has full column rank.
TomographyDesign make_design(int num_qubits, std::vector<PauliObservable> observables);

/// Density matrix for parameter vector t (see TomographyDesign).
DensityMatrix density_from_parameters(int num_qubits, const Eigen::VectorXd& t);
Eigen::VectorXd parameters_from_density(const DensityMatrix& rho);

struct FrequencyRecord {
  Eigen::VectorXd mu;
  std::uint64_t shots = 0;  // per observable; 0 means exact expectations
};

/// Exact expectations Tr(O_i rho) for shots == 0, otherwise the empirical
/// mean of `shots` sampled +/-1 eigenvalue outcomes per observable.
FrequencyRecord simulate_frequencies(const DensityMatrix& rho, const TomographyDesign& design, std::uint64_t shots,
                                     std::uint64_t seed);

/// Least-squares solution of mu = M t assembled into a density matrix. The
/// result is reported as-is, including when it is unphysical.
DensityMatrix linear_inversion(const TomographyDesign& design, const FrequencyRecord& freq);

/// Clips negative eigenvalues to zero and renormalizes the trace.
DensityMatrix project_to_physical(const DensityMatrix& rho);

}  // namespace qil
