#include "qil/noise_model.hpp"

#include <cmath>
#include <string>

namespace qil {
namespace {

std::complex<double> amplitude_of(Outcome m, const Qubitd& q) {
  return m == Outcome::zero ? q.alpha() : q.beta();
}

Eigen::Vector2cd on_basis(Outcome m, std::complex<double> c) {
  Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
  v(index_of(m)) = c;
  return v;
}

}  // namespace

Eigen::Vector2cd linear_term(Outcome m, const Qubitd& q) { return on_basis(m, amplitude_of(m, q) / 2.0); }

MeasurementResidue measurement_residue(Outcome m, const Qubitd& q) {
  const std::complex<double> a = amplitude_of(m, q);
  const double mod = std::abs(a);
  if (!(mod * mod > kTolerances.zero_probability)) {
    throw UndefinedResidue("measurement residue is undefined: amplitude of |" + std::to_string(index_of(m)) +
                           "> vanishes");
  }
  return {m, on_basis(m, a * (2.0 - mod) / (2.0 * mod))};
}

ResidueDecomposition decompose_and_verify(Outcome m, const Qubitd& q) {
  auto residue = measurement_residue(m, q);
  const auto linear = linear_term(m, q);
  const auto op = MeasurementOperatord::basis_projector(1, static_cast<std::size_t>(index_of(m)));
  auto exact = collapse(op, StateVectord::from_qubit(q));
  const double defect = (linear + residue.vector - exact.amplitudes()).norm();
  return {linear, std::move(residue), std::move(exact), defect};
}

double taylor_coefficient(int k) {
  if (k < 1 || k % 2 == 0) throw InvalidArgument("series terms exist only for odd positive degrees");
  double num = 1.0;
  for (int j = 1; j <= (k - 1) / 2; ++j) num *= static_cast<double>((2 * j - 1) * (2 * j - 1));
  return num / std::ldexp(1.0, k);
}

Eigen::Vector2cd taylor_partial_sum(Outcome m, const Qubitd& q, int order) {
  if (order < 1 || order > 9 || order % 2 == 0) {
    throw InvalidArgument("series order must be one of 1, 3, 5, 7, 9");
  }
  Eigen::Vector2cd delta = q.vector();
  delta(index_of(m)) -= 1.0;

  Eigen::Vector2cd sum = Eigen::Vector2cd::Zero();
  double factorial = 1.0;
  for (int k = 1; k <= order; ++k) {
    factorial *= k;
    if (k % 2 == 0) continue;
    // M_m keeps only the |m> component of the element-wise power.
    std::complex<double> power = 1.0;
    for (int i = 0; i < k; ++i) power *= delta(index_of(m));
    sum += on_basis(m, power) * (taylor_coefficient(k) / factorial);
  }
  return sum;
}

void StateNoiseConfig::validate() const {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw InvalidArgument("state noise magnitude must be a finite nonnegative number");
  }
}

StateVectord inject_state_noise(const StateVectord& s, const StateNoiseConfig& cfg) {
  cfg.validate();
  if (cfg.mode == StateNoiseMode::classical_pre_encode || cfg.magnitude == 0.0) return s;
  Rng rng(cfg.seed);
  CVectord noisy = s.amplitudes();
  for (Eigen::Index i = 0; i < noisy.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    noisy(i) += cfg.magnitude * std::complex<double>(re, im);
  }
  return StateVectord::normalized(noisy);
}

}  // namespace qil
