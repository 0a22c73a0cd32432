#pragma once

// Classical image <-> quantum state maps for FRQI, NEQR and QuBo (one CBS
// qubit per pixel of a bit plane), with exact and finite-shot readout.
//
// Register layout: the color (FRQI) or gray-code (NEQR) qubits occupy the
// high-order bits and the position |YX> the low-order 2n bits, with Y above
// X. Amplitude index = color * 2^(2n) + (Y * 2^n + X).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "qil/image.hpp"
#include "qil/qcore.hpp"

namespace qil {

enum class Representation { frqi, neqr, qubo };

std::string_view to_string(Representation r);
Representation parse_representation(std::string_view name);

/// theta = g * (pi/2) / (2^q - 1).
double gray_to_theta(std::uint32_t g, int q);
/// Nearest gray level to theta under the same map, clamped to [0, 2^q - 1].
std::uint32_t theta_to_gray(double theta, int q);

class FrqiState {
 public:
  FrqiState(int n, int q, StateVectord state);

  int n() const { return n_; }
  int q() const { return q_; }
  std::size_t positions() const { return std::size_t{1} << (2 * n_); }
  const StateVectord& state() const { return state_; }

 private:
  int n_;
  int q_;
  StateVectord state_;
};

class NeqrState {
 public:
  NeqrState(int n, int q, StateVectord state);

  int n() const { return n_; }
  int q() const { return q_; }
  std::size_t positions() const { return std::size_t{1} << (2 * n_); }
  const StateVectord& state() const { return state_; }

 private:
  int n_;
  int q_;
  StateVectord state_;
};

/// One independent qubit per pixel. Encoders only emit |0> and |1>; states
/// carried through noise or a user unitary may leave the basis, which the
/// strict decoder rejects.
class QuboState {
 public:
  QuboState(int n, std::vector<Qubitd> qubits);

  int n() const { return n_; }
  std::size_t size() const { return qubits_.size(); }
  const std::vector<Qubitd>& qubits() const { return qubits_; }
  bool all_cbs() const;

 private:
  int n_;
  std::vector<Qubitd> qubits_;
};

/// Shot budget for readout; zero shots means reading amplitudes directly
/// (the infinite-shot limit).
struct DecodeMode {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static DecodeMode exact() { return {}; }
  static DecodeMode sampled(std::uint64_t shots, std::uint64_t seed) { return {shots, seed}; }
  bool is_exact() const { return shots == 0; }
};

/// How to treat a position whose support holds more than one code.
enum class Readout { strict, most_likely };

struct CoverageReport {
  std::size_t positions = 0;
  std::vector<std::size_t> missing;  // positions never observed, decoded as 0

  bool complete() const { return missing.empty(); }
};

struct DecodeResult {
  GrayImage image;
  CoverageReport coverage;
};

/// Tally of computational-basis outcomes over `total` fresh preparations.
struct ShotHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;
};

ShotHistogram sample_shots(const StateVectord& s, std::uint64_t shots, std::uint64_t seed);

FrqiState frqi_encode(const GrayImage& img);
DecodeResult frqi_decode(const FrqiState& fs, DecodeMode mode);

NeqrState neqr_encode(const GrayImage& img);
DecodeResult neqr_decode(const NeqrState& ns, DecodeMode mode, Readout readout = Readout::strict);

/// CBS qubit per pixel from bit `plane` (default: the MSB, q-1).
QuboState qubo_encode(const GrayImage& img, std::optional<int> plane = std::nullopt);
std::vector<QuboState> qubo_encode_all_planes(const GrayImage& img);

/// Deterministic readout; throws InvariantViolation on any non-CBS qubit.
BinaryImage qubo_decode(const QuboState& qs);
/// Per-pixel readout. With shots, each qubit is prepared and measured
/// `shots` times and the majority outcome kept (ties read as 0).
BinaryImage qubo_decode(const QuboState& qs, DecodeMode mode, Readout readout);

/// Qubits needed for a 2^n x 2^n image at bit depth q: FRQI 2n+1,
/// NEQR q+2n, QuBo 2^(2n) per bit plane.
std::uint64_t qubit_budget(Representation r, int n, int q);

/// Width of the largest jointly simulated register. QuBo qubits are
/// independent, so its register is a single qubit.
int simulated_register_qubits(Representation r, int n, int q);

}  // namespace qil
