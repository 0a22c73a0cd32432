#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qil/qcore.hpp"
#include "test_support.hpp"

using namespace qil;
using qil::testing::random_hermitian;
using qil::testing::random_qubit;
using qil::testing::random_state;
using qil::testing::random_unitary;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVectord plus_state() { return StateVectord::from_qubit(Qubitd(kInvSqrt2, kInvSqrt2)); }

}  // namespace

TEST(Qubit, RejectsUnnormalizedAmplitudes) {
  EXPECT_THROW(Qubitd(1.0, 1.0), InvariantViolation);
  EXPECT_NO_THROW(Qubitd(0.6, 0.8));
}

TEST(Bloch, PolesAndEquator) {
  const auto north = qubit_from_bloch(BlochAnglesd(0.0, 0.0));
  EXPECT_EQ(north.alpha(), 1.0);
  EXPECT_EQ(north.beta(), 0.0);

  const auto south = qubit_from_bloch(BlochAnglesd(kPi, 0.0));
  EXPECT_EQ(south.alpha(), 0.0);
  EXPECT_EQ(south.beta(), 1.0);

  const auto eq = qubit_from_bloch(BlochAnglesd(kPi / 2, 0.0));
  EXPECT_NEAR(eq.alpha().real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(eq.beta().real(), kInvSqrt2, 1e-15);
}

TEST(Bloch, AnglesValidateAndNormalize) {
  EXPECT_THROW(BlochAnglesd(-0.1, 0.0), InvalidArgument);
  EXPECT_THROW(BlochAnglesd(kPi + 0.1, 0.0), InvalidArgument);
  EXPECT_NEAR(BlochAnglesd(1.0, -kPi / 2).phi(), 3 * kPi / 2, 1e-15);
  EXPECT_NEAR(BlochAnglesd(1.0, 5 * kPi).phi(), kPi, 1e-12);
}

TEST(Bloch, StripsGlobalPhase) {
  const std::complex<double> i(0, 1);
  const auto a = bloch_from_qubit(Qubitd(i * kInvSqrt2, i * kInvSqrt2));
  EXPECT_NEAR(a.theta(), kPi / 2, 1e-15);
  EXPECT_NEAR(a.phi(), 0.0, 1e-15);

  const auto pole = bloch_from_qubit(Qubitd::zero());
  EXPECT_EQ(pole.theta(), 0.0);
  EXPECT_EQ(pole.phi(), 0.0);
}

TEST(Bloch, RoundTripAndPhaseInvariance) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const double theta = 1e-3 + (kPi - 2e-3) * rng.uniform();
    const double phi = 2 * kPi * rng.uniform();
    const auto back = bloch_from_qubit(qubit_from_bloch(BlochAnglesd(theta, phi)));
    EXPECT_NEAR(back.theta(), theta, 1e-12);
    const double dphi = std::remainder(back.phi() - phi, 2 * kPi);
    EXPECT_NEAR(dphi, 0.0, 1e-12);

    const auto q = random_qubit(rng);
    const auto phase = std::polar(1.0, 2 * kPi * rng.uniform());
    const auto a = bloch_from_qubit(q);
    const auto b = bloch_from_qubit(Qubitd(phase * q.alpha(), phase * q.beta()));
    EXPECT_NEAR(a.theta(), b.theta(), 1e-12);
    EXPECT_NEAR(std::remainder(a.phi() - b.phi(), 2 * kPi), 0.0, 1e-12);
  }
}

TEST(StateVector, Invariants) {
  EXPECT_THROW(StateVectord(CVectord::Ones(3) / std::sqrt(3.0)), InvariantViolation);
  EXPECT_THROW(StateVectord(CVectord::Ones(4)), InvariantViolation);
  const auto s = StateVectord::basis(3, 5);
  EXPECT_EQ(s.num_qubits(), 3);
  EXPECT_EQ(s[5], 1.0);
  EXPECT_THROW(StateVectord::basis(2, 4), InvalidArgument);
}

TEST(StateVector, TensorPutsFirstFactorInHighBits) {
  const auto s = tensor(StateVectord::basis(1, 1), StateVectord::basis(2, 2));
  EXPECT_EQ(s.num_qubits(), 3);
  EXPECT_EQ(s[0b110], 1.0);
}

TEST(ApplyUnitary, IdentityBitFlipAndPhaseFlip) {
  Rng rng(3);
  const auto s = random_state(2, rng);
  const auto same = apply_unitary(UnitaryMatrixd::identity(4), s);
  EXPECT_EQ(same.amplitudes(), s.amplitudes());

  CMatrixd x(2, 2);
  x << 0, 1, 1, 0;
  const auto flipped = apply_unitary(UnitaryMatrixd(x), StateVectord::basis(1, 0));
  EXPECT_EQ(flipped.amplitudes(), StateVectord::basis(1, 1).amplitudes());

  CMatrixd z(2, 2);
  z << 1, 0, 0, -1;
  const Qubitd q(0.6, std::complex<double>(0, 0.8));
  const auto zq = apply_unitary(UnitaryMatrixd(z), StateVectord::from_qubit(q));
  EXPECT_EQ(zq[0], q.alpha());
  EXPECT_EQ(zq[1], -q.beta());
}

TEST(ApplyUnitary, DimensionMismatch) {
  EXPECT_THROW(apply_unitary(UnitaryMatrixd::identity(4), StateVectord::basis(1, 0)), DimensionMismatch);
}

TEST(ApplyUnitary, RejectsNonUnitary) {
  CMatrixd m = CMatrixd::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(UnitaryMatrixd{m}, InvariantViolation);
}

TEST(ApplyUnitary, NormPreservedOverRandomPairs) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + trial % 4;
    const auto u = random_unitary(Eigen::Index{1} << k, rng);
    const auto s = apply_unitary(u, random_state(k, rng));
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-10);
  }
}

TEST(Evolution, ZeroHamiltonianIsIdentity) {
  const Hamiltoniand h(CMatrixd::Zero(4, 4));
  const auto u = evolve_hamiltonian(h, 3.7);
  EXPECT_LT((u.matrix() - CMatrixd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Evolution, HalfSigmaZOverOnePeriodIsMinusIdentity) {
  // Oracle: eigenbasis of sigma_z is the standard basis, eigenvalues +/- hbar w / 2,
  // so U = diag(exp(-i pi), exp(i pi)) = -I.
  const double omega = 2.5, hbar = 1.3;
  CMatrixd h(2, 2);
  h << hbar * omega / 2, 0, 0, -hbar * omega / 2;
  const auto u = evolve_hamiltonian(Hamiltoniand(h, hbar), 2 * kPi / omega);
  EXPECT_LT((u.matrix() + CMatrixd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evolution, RandomHamiltoniansGiveUnitaries) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = Hamiltoniand(random_hermitian(4, rng));
    const auto u = evolve_hamiltonian(h, 10 * rng.uniform());
    const CMatrixd defect = u.matrix().adjoint() * u.matrix() - CMatrixd::Identity(4, 4);
    EXPECT_LT(defect.cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Evolution, TimeAdditivity) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = Hamiltoniand(random_hermitian(4, rng));
    const double t1 = rng.uniform(), t2 = rng.uniform();
    const CMatrixd lhs = evolve_hamiltonian(h, t1 + t2).matrix();
    const CMatrixd rhs = evolve_hamiltonian(h, t1).matrix() * evolve_hamiltonian(h, t2).matrix();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Evolution, PiecewiseSegmentsComposeChronologically) {
  Rng rng(8);
  const Hamiltoniand a(random_hermitian(2, rng)), b(random_hermitian(2, rng));
  const std::vector<HamiltonianSegment<double>> segs{{a, 0.3}, {b, 0.7}};
  const auto u = evolve_piecewise<double>(segs);
  const CMatrixd expected = evolve_hamiltonian(b, 0.7).matrix() * evolve_hamiltonian(a, 0.3).matrix();
  EXPECT_LT((u.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evolution, RejectsNonHermitian) {
  CMatrixd m = CMatrixd::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(Hamiltoniand{m}, InvariantViolation);
}

TEST(Measurement, AxiomsHoldForComputationalBasis) {
  for (int k = 1; k <= 3; ++k) {
    const auto set = MeasurementSetd::computational_basis(k);
    EXPECT_TRUE(set.axioms().satisfied(1e-10));
    EXPECT_EQ(set.size(), std::size_t{1} << k);
  }
}

TEST(Measurement, AxiomCheckerFlagsBadSets) {
  CMatrixd p0 = CMatrixd::Zero(2, 2), p1 = CMatrixd::Zero(2, 2);
  p0(0, 0) = 1;
  p1(0, 0) = 1;  // not complete, not orthogonal
  const std::vector<CMatrixd> bad{p0, p1};
  const auto ax = measurement_axioms<double>(bad);
  EXPECT_GT(ax.orthogonality, 0.5);
  EXPECT_GT(ax.completeness, 0.5);
  EXPECT_THROW(MeasurementSetd({MeasurementOperatord(0, p0), MeasurementOperatord(1, p1)}), InvariantViolation);

  CMatrixd not_projector = CMatrixd::Identity(2, 2) * 0.5;
  EXPECT_THROW(MeasurementOperatord(0, not_projector), InvariantViolation);
}

TEST(Measurement, OutcomeProbabilities) {
  const auto set = MeasurementSetd::computational_basis(1);
  const Qubitd q(0.6, std::complex<double>(0, 0.8));
  const auto p = outcome_probabilities(set, StateVectord::from_qubit(q));
  EXPECT_NEAR(p[0], 0.36, 1e-15);
  EXPECT_NEAR(p[1], 0.64, 1e-15);

  const auto half = outcome_probabilities(set, plus_state());
  EXPECT_NEAR(half[0], 0.5, 1e-15);
  EXPECT_NEAR(half[1], 0.5, 1e-15);

  const auto cbs = outcome_probabilities(set, StateVectord::basis(1, 0));
  EXPECT_EQ(cbs[0], 1.0);
  EXPECT_EQ(cbs[1], 0.0);

  EXPECT_THROW(outcome_probabilities(set, StateVectord::basis(2, 0)), DimensionMismatch);
}

TEST(Measurement, ProbabilitiesSumToOne) {
  Rng rng(12);
  for (int k = 1; k <= 3; ++k) {
    const auto set = MeasurementSetd::computational_basis(k);
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = outcome_probabilities(set, random_state(k, rng)).probabilities();
      double total = 0;
      for (double x : p) total += x;
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
  }
}

TEST(Measurement, CollapseProjectsAndNormalizes) {
  const auto set = MeasurementSetd::computational_basis(1);
  const Qubitd q(std::complex<double>(0.3, -0.4), std::complex<double>(0, std::sqrt(0.75)));
  const auto post = collapse(set[0], StateVectord::from_qubit(q));
  const auto expected = q.alpha() / std::abs(q.alpha());
  EXPECT_NEAR(std::abs(post[0] - expected), 0.0, 1e-15);
  EXPECT_EQ(post[1], 0.0);
}

TEST(Measurement, CbsAreFixedPointsExactly) {
  for (int k = 1; k <= 3; ++k) {
    const auto set = MeasurementSetd::computational_basis(k);
    for (std::size_t b = 0; b < set.size(); ++b) {
      const auto s = StateVectord::basis(k, b);
      EXPECT_EQ(collapse(set[b], s).amplitudes(), s.amplitudes());
    }
  }
}

TEST(Measurement, CrossProjectionIsUndefined) {
  const auto set = MeasurementSetd::computational_basis(1);
  EXPECT_THROW(collapse(set[0], StateVectord::basis(1, 1)), UndefinedProjection);
  EXPECT_THROW(collapse(set[1], StateVectord::basis(1, 0)), UndefinedProjection);
}

TEST(Sampling, DegenerateDistributionAlwaysYieldsItsOutcome) {
  const auto set = MeasurementSetd::computational_basis(1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = sample_measurement(set, StateVectord::basis(1, 0), seed);
    EXPECT_EQ(r.outcome, 0u);
    EXPECT_EQ(r.post.amplitudes(), StateVectord::basis(1, 0).amplitudes());
  }
}

TEST(Sampling, EqualSuperpositionFrequencyWithinThreeSigma) {
  const auto set = MeasurementSetd::computational_basis(1);
  const auto s = plus_state();
  Rng rng(77);
  const int draws = 100000;
  int zeros = 0;
  for (int i = 0; i < draws; ++i) zeros += sample_measurement(set, s, rng).outcome == 0 ? 1 : 0;
  const double sigma = std::sqrt(0.25 / draws);
  EXPECT_LT(std::abs(static_cast<double>(zeros) / draws - 0.5), 3 * sigma);
}

TEST(Sampling, PostStateIsCollapseOfOutcome) {
  Rng rng(9);
  const auto set = MeasurementSetd::computational_basis(2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = random_state(2, rng);
    const auto r = sample_measurement(set, s, seed);
    EXPECT_EQ(r.post.amplitudes(), collapse(set[r.outcome], s).amplitudes());
  }
}

TEST(Sampling, FrequenciesConvergeOnRandomStates) {
  Rng state_rng(31);
  const auto set = MeasurementSetd::computational_basis(2);
  const int shots = 20000;
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = random_state(2, state_rng);
    const auto p = outcome_probabilities(set, s).probabilities();
    std::vector<int> counts(4, 0);
    Rng rng(derive_seed(1000, static_cast<std::uint64_t>(trial)));
    for (int i = 0; i < shots; ++i) ++counts[sample_measurement(set, s, rng).outcome];
    for (std::size_t m = 0; m < 4; ++m) {
      const double bound = 4 * std::sqrt(p[m] * (1 - p[m]) / shots);
      EXPECT_LE(std::abs(static_cast<double>(counts[m]) / shots - p[m]), bound) << "outcome " << m;
    }
  }
}

TEST(Sampling, SameSeedSameResult) {
  Rng rng(4);
  const auto s = random_state(3, rng);
  const auto set = MeasurementSetd::computational_basis(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(sample_measurement(set, s, seed).outcome, sample_measurement(set, s, seed).outcome);
  }
}

TEST(Observable, MeanIsWeightedPopulation) {
  const auto set = MeasurementSetd::computational_basis(1);
  const Observabled obs({0.0, 1.0}, set);
  const Qubitd q(0.6, 0.8);
  EXPECT_NEAR(observable_expectation(obs, StateVectord::from_qubit(q), 1), 0.64, 1e-15);
}

TEST(Observable, PowersDistributeOverProjectors) {
  Rng rng(21);
  const auto set = MeasurementSetd::computational_basis(1);
  const Observabled obs({2.0, 3.0}, set);
  const CMatrixd m = obs.matrix();
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_state(1, rng);
    const double oracle = s.amplitudes().dot(m * m * s.amplitudes()).real();
    EXPECT_NEAR(observable_expectation(obs, s, 2), oracle, 1e-12);
  }
}

TEST(Observable, UnitEigenvaluesGiveIdentity) {
  Rng rng(22);
  const auto set = MeasurementSetd::computational_basis(2);
  const Observabled obs({1.0, 1.0, 1.0, 1.0}, set);
  for (int power = 1; power <= 5; ++power) {
    EXPECT_NEAR(observable_expectation(obs, random_state(2, rng), power), 1.0, 1e-12);
  }
}

TEST(Observable, RejectsNegativeEigenvaluesAndBadPower) {
  const auto set = MeasurementSetd::computational_basis(1);
  EXPECT_THROW(Observabled({-1.0, 1.0}, set), InvalidArgument);
  EXPECT_THROW(Observabled({1.0}, set), DimensionMismatch);
  const Observabled obs({1.0, 2.0}, set);
  EXPECT_THROW(observable_expectation(obs, StateVectord::basis(1, 0), 0), InvalidArgument);
}

TEST(OutcomeDistribution, RejectsInvalidProbabilities) {
  EXPECT_THROW(OutcomeDistributiond({0.5, 0.6}), InvariantViolation);
  EXPECT_THROW(OutcomeDistributiond({1.5, -0.5}), InvariantViolation);
  EXPECT_NO_THROW(OutcomeDistributiond({0.25, 0.75}));
}
