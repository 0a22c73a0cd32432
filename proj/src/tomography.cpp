#include "qil/tomography.hpp"

#include <cmath>
#include <numeric>

namespace qil {
namespace {

using cd = std::complex<double>;

CMatrixd kron(const CMatrixd& a, const CMatrixd& b) {
  CMatrixd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> upper_pairs(Eigen::Index dim) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = r + 1; c < dim; ++c) pairs.emplace_back(r, c);
  }
  return pairs;
}

CMatrixd parameters_to_matrix(Eigen::Index dim, const Eigen::VectorXd& t) {
  const auto pairs = upper_pairs(dim);
  const auto off = static_cast<Eigen::Index>(pairs.size());
  if (t.size() != dim + 2 * off) throw DimensionMismatch("parameter vector has the wrong length");
  CMatrixd m = CMatrixd::Zero(dim, dim);
  for (Eigen::Index d = 0; d < dim; ++d) m(d, d) = t(d);
  for (Eigen::Index k = 0; k < off; ++k) {
    const auto [r, c] = pairs[static_cast<std::size_t>(k)];
    m(r, c) = cd(t(dim + k), t(dim + off + k));
    m(c, r) = std::conj(m(r, c));
  }
  return m;
}

void require_qubits(int k) {
  if (k < 1 || k > 3) throw InvalidArgument("tomography supports 1 to 3 qubits");
}

// Connected components of the bipartite row/column graph of m's nonzeros.
std::vector<TomographyDesign::Block> decouple(const Eigen::MatrixXd& m) {
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(m.cols()));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index c) {
    while (parent[c] != c) c = parent[c] = parent[parent[c]];
    return c;
  };
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Eigen::Index first = -1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0) continue;
      if (first < 0) first = j;
      else parent[find(j)] = find(first);
    }
  }
  std::vector<TomographyDesign::Block> blocks;
  std::vector<Eigen::Index> block_of(static_cast<std::size_t>(m.cols()), -1);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    auto& slot = block_of[find(j)];
    if (slot < 0) {
      slot = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot].cols.push_back(j);
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) {
        blocks[block_of[find(j)]].rows.push_back(i);
        break;
      }
    }
  }
  return blocks;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrixd m) : matrix_(std::move(m)) {
  detail::require_square_register(matrix_, "density matrix");
  const double herm = detail::hermitian_defect(matrix_);
  if (!(herm <= kTolerances.hermiticity)) throw InvariantViolation("density matrix is not Hermitian");
  const double tr = matrix_.trace().real();
  if (!(std::abs(tr - 1.0) <= kTolerances.trace)) {
    throw InvariantViolation("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  physical_ = eigenvalues().minCoeff() >= -kTolerances.negative_eigenvalue;
}

int DensityMatrix::num_qubits() const { return detail::log2_exact(static_cast<std::size_t>(dim())); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  const CMatrixd herm = (matrix_ + matrix_.adjoint()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<CMatrixd>(herm, Eigen::EigenvaluesOnly).eigenvalues();
}

DensityMatrix density_from_pure(const StateVectord& s) {
  return DensityMatrix(s.amplitudes() * s.amplitudes().adjoint());
}

DensityMatrix density_from_mixture(std::span<const MixtureComponent> components) {
  if (components.empty()) throw InvalidArgument("a mixture needs at least one component");
  const Eigen::Index dim = components.front().state.dim();
  CMatrixd rho = CMatrixd::Zero(dim, dim);
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.probability >= 0.0)) throw InvalidArgument("mixture probabilities must be nonnegative");
    if (c.state.dim() != dim) throw DimensionMismatch("mixture components differ in dimension");
    rho += c.probability * (c.state.amplitudes() * c.state.amplitudes().adjoint());
    total += c.probability;
  }
  if (!(std::abs(total - 1.0) <= kTolerances.probability_sum)) {
    throw InvalidArgument("mixture probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  return DensityMatrix(std::move(rho));
}

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

double purity_from_weights(std::span<const double> weights) {
  return std::accumulate(weights.begin(), weights.end(), 0.0, [](double acc, double p) { return acc + p * p; });
}

double purity_from_bloch(const std::array<double, 3>& e) {
  return 0.5 * (1.0 + e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
}

const Eigen::Matrix2cd& pauli_matrix(char letter) {
  static const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  static const Eigen::Matrix2cd x = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd y = (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished();
  static const Eigen::Matrix2cd z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  switch (letter) {
    case 'I': return id;
    case 'X': return x;
    case 'Y': return y;
    case 'Z': return z;
    default: throw InvalidArgument(std::string("unknown Pauli letter '") + letter + "'");
  }
}

std::array<double, 3> pauli_expectations(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionMismatch("Pauli expectations need a single-qubit density matrix");
  std::array<double, 3> e{};
  const char letters[] = {'X', 'Y', 'Z'};
  for (int a = 0; a < 3; ++a) e[a] = (pauli_matrix(letters[a]) * rho.matrix()).trace().real();
  return e;
}

DensityMatrix single_qubit_reconstruct(const std::array<double, 3>& e) {
  CMatrixd rho(2, 2);
  rho << 1.0 + e[2], cd(e[0], -e[1]), cd(e[0], e[1]), 1.0 - e[2];
  return DensityMatrix(rho / 2.0);
}

PauliObservable::PauliObservable(std::string word) : label(std::move(word)) {
  if (label.empty()) throw InvalidArgument("Pauli word must not be empty");
  matrix = CMatrixd(pauli_matrix(label.front()));
  for (std::size_t i = 1; i < label.size(); ++i) matrix = kron(matrix, CMatrixd(pauli_matrix(label[i])));
}

TomographyDesign make_design(int num_qubits, std::vector<PauliObservable> observables) {
  require_qubits(num_qubits);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  const auto n_params = dim * dim;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(observables.size()), n_params);
  for (Eigen::Index j = 0; j < n_params; ++j) {
    const CMatrixd basis = parameters_to_matrix(dim, Eigen::VectorXd::Unit(n_params, j));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto& o = observables[static_cast<std::size_t>(i)].matrix;
      if (o.rows() != dim) throw DimensionMismatch("observable does not act on the design register");
      m(i, j) = (o * basis).trace().real();
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  if (qr.rank() < n_params) {
    throw RankDeficient("tomography design has rank " + std::to_string(qr.rank()) + " < " + std::to_string(n_params));
  }
  return {num_qubits, std::move(observables), m, decouple(m)};
}

TomographyDesign full_pauli_design(int num_qubits) {
  require_qubits(num_qubits);
  std::vector<PauliObservable> obs;
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  const std::size_t count = std::size_t{1} << (2 * num_qubits);
  for (std::size_t w = 0; w < count; ++w) {
    std::string label(static_cast<std::size_t>(num_qubits), 'I');
    for (int q = 0; q < num_qubits; ++q) label[static_cast<std::size_t>(num_qubits - 1 - q)] = letters[(w >> (2 * q)) & 3];
    obs.emplace_back(std::move(label));
  }
  return make_design(num_qubits, std::move(obs));
}

DensityMatrix density_from_parameters(int num_qubits, const Eigen::VectorXd& t) {
  return DensityMatrix(parameters_to_matrix(Eigen::Index{1} << num_qubits, t));
}

Eigen::VectorXd parameters_from_density(const DensityMatrix& rho) {
  const auto dim = rho.dim();
  const auto pairs = upper_pairs(dim);
  const auto off = static_cast<Eigen::Index>(pairs.size());
  Eigen::VectorXd t(dim + 2 * off);
  for (Eigen::Index d = 0; d < dim; ++d) t(d) = rho.matrix()(d, d).real();
  for (Eigen::Index k = 0; k < off; ++k) {
    const auto [r, c] = pairs[static_cast<std::size_t>(k)];
    t(dim + k) = rho.matrix()(r, c).real();
    t(dim + off + k) = rho.matrix()(r, c).imag();
  }
  return t;
}

FrequencyRecord simulate_frequencies(const DensityMatrix& rho, const TomographyDesign& design, std::uint64_t shots,
                                     std::uint64_t seed) {
  if (rho.num_qubits() != design.num_qubits) throw DimensionMismatch("density matrix does not match the design");
  const auto n_obs = static_cast<Eigen::Index>(design.observables.size());
  FrequencyRecord rec{Eigen::VectorXd(n_obs), shots};
  for (Eigen::Index i = 0; i < n_obs; ++i) {
    const auto& o = design.observables[static_cast<std::size_t>(i)];
    const double exact = (o.matrix * rho.matrix()).trace().real();
    if (shots == 0) {
      rec.mu(i) = exact;
      continue;
    }
    // Pauli words have eigenvalues +/-1, so P(+1) = (1 + <O>) / 2.
    const double p_plus = o.is_identity() ? 1.0 : std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    std::uint64_t plus = 0;
    for (std::uint64_t s = 0; s < shots; ++s) plus += rng.uniform() < p_plus ? 1 : 0;
    rec.mu(i) = (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) / static_cast<double>(shots);
  }
  return rec;
}

DensityMatrix linear_inversion(const TomographyDesign& design, const FrequencyRecord& freq) {
  if (freq.mu.size() != design.design_matrix.rows()) {
    throw DimensionMismatch("frequency record does not match the design's observable count");
  }
  Eigen::VectorXd t = Eigen::VectorXd::Zero(design.parameters());
  for (const auto& b : design.blocks) {
    const Eigen::MatrixXd sub = design.design_matrix(b.rows, b.cols);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    if (qr.rank() < sub.cols()) throw RankDeficient("tomography design is rank deficient");
    t(b.cols) = qr.solve(Eigen::VectorXd(freq.mu(b.rows)));
  }
  return density_from_parameters(design.num_qubits, t);
}

DensityMatrix project_to_physical(const DensityMatrix& rho) {
  const CMatrixd herm = (rho.matrix() + rho.matrix().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrixd> es(herm);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  if (rho.physical() && (es.eigenvalues().array() >= 0.0).all()) return rho;
  const double total = w.sum();
  if (!(total > 0.0)) throw InvariantViolation("cannot project a matrix with no positive eigenvalue");
  w /= total;
  const auto& v = es.eigenvectors();
  return DensityMatrix(v * w.cast<cd>().asDiagonal() * v.adjoint());
}

}  // namespace qil
