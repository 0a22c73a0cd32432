#include "qil/encodings.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qil {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Amplitudes below this are treated as absent from the support.
constexpr double kSupportThreshold = 1e-12;

void require_register(int qubits, int expected, const char* what) {
  if (qubits != expected) {
    throw InvariantViolation(std::string(what) + " register needs " + std::to_string(expected) + " qubits, got " +
                             std::to_string(qubits));
  }
}

}  // namespace

std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::frqi: return "frqi";
    case Representation::neqr: return "neqr";
    case Representation::qubo: return "qubo";
  }
  return "unknown";
}

Representation parse_representation(std::string_view name) {
  if (name == "frqi" || name == "FRQI") return Representation::frqi;
  if (name == "neqr" || name == "NEQR") return Representation::neqr;
  if (name == "qubo" || name == "QuBo" || name == "QUBO") return Representation::qubo;
  throw InvalidArgument("unknown representation '" + std::string(name) + "'");
}

double gray_to_theta(std::uint32_t g, int q) {
  if (q < 1 || q > 16) throw InvalidArgument("bit depth must lie in [1, 16]");
  const std::uint32_t top = (std::uint32_t{1} << q) - 1;
  if (g > top) throw InvalidArgument("gray value " + std::to_string(g) + " out of range for q = " + std::to_string(q));
  if (g == top) return kHalfPi;
  return static_cast<double>(g) * kHalfPi / static_cast<double>(top);
}

std::uint32_t theta_to_gray(double theta, int q) {
  if (q < 1 || q > 16) throw InvalidArgument("bit depth must lie in [1, 16]");
  const double top = static_cast<double>((std::uint32_t{1} << q) - 1);
  const double g = std::round(theta * top / kHalfPi);
  return static_cast<std::uint32_t>(std::clamp(g, 0.0, top));
}

FrqiState::FrqiState(int n, int q, StateVectord state) : n_(n), q_(q), state_(std::move(state)) {
  require_register(state_.num_qubits(), 2 * n + 1, "FRQI");
}

NeqrState::NeqrState(int n, int q, StateVectord state) : n_(n), q_(q), state_(std::move(state)) {
  require_register(state_.num_qubits(), q + 2 * n, "NEQR");
}

QuboState::QuboState(int n, std::vector<Qubitd> qubits) : n_(n), qubits_(std::move(qubits)) {
  if (qubits_.size() != (std::size_t{1} << (2 * n))) throw InvariantViolation("QuBo state needs one qubit per pixel");
}

bool QuboState::all_cbs() const {
  return std::all_of(qubits_.begin(), qubits_.end(), [](const Qubitd& q) { return q.is_cbs(); });
}

ShotHistogram sample_shots(const StateVectord& s, std::uint64_t shots, std::uint64_t seed) {
  const auto p = basis_probabilities(s);
  const DiscreteSampler<double> sampler(p);
  Rng rng(seed);
  ShotHistogram h;
  for (std::uint64_t i = 0; i < shots; ++i) ++h.counts[sampler(rng)];
  h.total = shots;
  return h;
}

FrqiState frqi_encode(const GrayImage& img) {
  const std::size_t positions = img.size();
  const double scale = 1.0 / static_cast<double>(img.side());
  CVectord amps = CVectord::Zero(static_cast<Eigen::Index>(2 * positions));
  for (std::size_t pos = 0; pos < positions; ++pos) {
    const double theta = gray_to_theta(img[pos], img.q());
    amps(static_cast<Eigen::Index>(pos)) = scale * std::cos(theta);
    amps(static_cast<Eigen::Index>(positions + pos)) = scale * std::sin(theta);
  }
  return FrqiState(img.n(), img.q(), StateVectord(std::move(amps)));
}

DecodeResult frqi_decode(const FrqiState& fs, DecodeMode mode) {
  const std::size_t positions = fs.positions();
  std::vector<std::uint32_t> pixels(positions, 0);
  CoverageReport coverage{positions, {}};
  const auto& amps = fs.state().amplitudes();

  if (mode.is_exact()) {
    for (std::size_t pos = 0; pos < positions; ++pos) {
      const double a0 = std::abs(amps(static_cast<Eigen::Index>(pos)));
      const double a1 = std::abs(amps(static_cast<Eigen::Index>(positions + pos)));
      if (a0 == 0.0 && a1 == 0.0) {
        coverage.missing.push_back(pos);
        continue;
      }
      pixels[pos] = theta_to_gray(std::atan2(a1, a0), fs.q());
    }
  } else {
    std::vector<std::uint64_t> zeros(positions, 0), seen(positions, 0);
    for (const auto& [outcome, count] : sample_shots(fs.state(), mode.shots, mode.seed).counts) {
      const std::size_t pos = outcome % positions;
      seen[pos] += count;
      if (outcome < positions) zeros[pos] += count;
    }
    for (std::size_t pos = 0; pos < positions; ++pos) {
      if (seen[pos] == 0) {
        coverage.missing.push_back(pos);
        continue;
      }
      const double p0 = static_cast<double>(zeros[pos]) / static_cast<double>(seen[pos]);
      const double theta = std::acos(std::clamp(std::sqrt(p0), 0.0, 1.0));
      pixels[pos] = theta_to_gray(theta, fs.q());
    }
  }
  return {GrayImage(fs.n(), fs.q(), std::move(pixels)), std::move(coverage)};
}

NeqrState neqr_encode(const GrayImage& img) {
  const std::size_t positions = img.size();
  const std::size_t dim = (std::size_t{1} << img.q()) * positions;
  CVectord amps = CVectord::Zero(static_cast<Eigen::Index>(dim));
  const double amp = 1.0 / static_cast<double>(img.side());
  for (std::size_t pos = 0; pos < positions; ++pos) {
    amps(static_cast<Eigen::Index>(img[pos] * positions + pos)) = amp;
  }
  return NeqrState(img.n(), img.q(), StateVectord(std::move(amps)));
}

DecodeResult neqr_decode(const NeqrState& ns, DecodeMode mode, Readout readout) {
  const std::size_t positions = ns.positions();
  const std::size_t codes = std::size_t{1} << ns.q();
  // weight[pos][code]: probability mass (exact) or shot count (sampled).
  std::vector<std::map<std::uint32_t, double>> weight(positions);

  if (mode.is_exact()) {
    const auto& amps = ns.state().amplitudes();
    for (std::size_t code = 0; code < codes; ++code) {
      for (std::size_t pos = 0; pos < positions; ++pos) {
        const double p = std::norm(amps(static_cast<Eigen::Index>(code * positions + pos)));
        if (p > kSupportThreshold * kSupportThreshold) weight[pos][static_cast<std::uint32_t>(code)] += p;
      }
    }
  } else {
    for (const auto& [outcome, count] : sample_shots(ns.state(), mode.shots, mode.seed).counts) {
      weight[outcome % positions][static_cast<std::uint32_t>(outcome / positions)] += static_cast<double>(count);
    }
  }

  std::vector<std::uint32_t> pixels(positions, 0);
  CoverageReport coverage{positions, {}};
  for (std::size_t pos = 0; pos < positions; ++pos) {
    const auto& w = weight[pos];
    if (w.empty()) {
      coverage.missing.push_back(pos);
      continue;
    }
    if (w.size() > 1 && readout == Readout::strict) {
      throw NotNeqrState("position " + std::to_string(pos) + " is supported on " + std::to_string(w.size()) +
                         " gray codes");
    }
    auto best = w.begin();
    for (auto it = w.begin(); it != w.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    pixels[pos] = best->first;
  }
  return {GrayImage(ns.n(), ns.q(), std::move(pixels)), std::move(coverage)};
}

QuboState qubo_encode(const GrayImage& img, std::optional<int> plane) {
  const BinaryImage bits = img.bit_plane(plane.value_or(img.q() - 1));
  std::vector<Qubitd> qubits;
  qubits.reserve(bits.size());
  for (auto b : bits.bits()) qubits.push_back(b ? Qubitd::one() : Qubitd::zero());
  return QuboState(img.n(), std::move(qubits));
}

std::vector<QuboState> qubo_encode_all_planes(const GrayImage& img) {
  std::vector<QuboState> planes;
  for (int p = 0; p < img.q(); ++p) planes.push_back(qubo_encode(img, p));
  return planes;
}

BinaryImage qubo_decode(const QuboState& qs) { return qubo_decode(qs, DecodeMode::exact(), Readout::strict); }

BinaryImage qubo_decode(const QuboState& qs, DecodeMode mode, Readout readout) {
  std::vector<std::uint8_t> bits(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const Qubitd& q = qs.qubits()[i];
    if (readout == Readout::strict && !q.is_cbs()) {
      throw InvariantViolation("QuBo qubit " + std::to_string(i) + " is not a computational basis state");
    }
    if (mode.is_exact()) {
      bits[i] = std::norm(q.beta()) > std::norm(q.alpha()) ? 1 : 0;
      continue;
    }
    const double p[] = {std::norm(q.alpha()), std::norm(q.beta())};
    const DiscreteSampler<double> sampler(p);
    Rng rng(derive_seed(mode.seed, i));
    std::uint64_t ones = 0;
    for (std::uint64_t s = 0; s < mode.shots; ++s) ones += sampler(rng);
    bits[i] = 2 * ones > mode.shots ? 1 : 0;
  }
  return BinaryImage(qs.n(), std::move(bits));
}

std::uint64_t qubit_budget(Representation r, int n, int q) {
  if (n < 0 || n > 30 || q < 1) throw InvalidArgument("qubit budget needs n >= 0 and q >= 1");
  switch (r) {
    case Representation::frqi: return 2 * static_cast<std::uint64_t>(n) + 1;
    case Representation::neqr: return static_cast<std::uint64_t>(q) + 2 * static_cast<std::uint64_t>(n);
    case Representation::qubo: return std::uint64_t{1} << (2 * n);
  }
  return 0;
}

int simulated_register_qubits(Representation r, int n, int q) {
  return r == Representation::qubo ? 1 : static_cast<int>(qubit_budget(r, n, q));
}

}  // namespace qil
