#pragma once

// End-to-end experiment runner: image -> encode -> state noise -> unitary ->
// readout -> metrics, plus the representation comparison and qubit-budget
// drivers behind the CLI.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qil/encodings.hpp"
#include "qil/metrics.hpp"
#include "qil/noise_model.hpp"
#include "qil/tomography.hpp"

namespace qil {

inline constexpr int kDefaultMaxQubits = 20;

/// Register cap from QIL_MAX_QUBITS, or kDefaultMaxQubits when unset.
int max_qubits_from_env();

struct TomographyConfig {
  bool enabled = false;
  int qubits = 2;
  std::uint64_t shots = 1000;  // per observable; 0 = exact frequencies
};

struct ExperimentConfig {
  Representation representation = Representation::frqi;
  std::filesystem::path image_path;
  std::optional<GrayImage> image;  // used instead of image_path when set
  std::uint64_t shots = 0;         // 0 = exact readout
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> unitary_path;  // identity when empty
  StateNoiseConfig state_noise;
  TomographyConfig tomography;
  std::optional<int> qubo_plane;      // MSB when empty
  std::filesystem::path output_dir;   // nothing is written when empty
  int max_qubits = kDefaultMaxQubits;
};

struct StageTiming {
  std::string stage;
  double milliseconds;
};

struct TomographyResult {
  int qubits;
  std::uint64_t shots;
  DensityMatrix ideal;
  DensityMatrix estimate;   // raw linear inversion
  DensityMatrix projected;  // nearest physical state by eigenvalue clipping
  MatrixErrorReport error;  // estimate vs ideal
};

struct RunReport {
  ExperimentConfig config;
  std::uint64_t qubit_budget = 0;
  int register_qubits = 0;
  GrayImage reference;
  GrayImage decoded;
  ImageErrorReport image_error;
  Eigen::MatrixXi noise_map;
  CoverageReport coverage;
  std::optional<TomographyResult> tomography;
  std::vector<StageTiming> timings;
  std::optional<std::filesystem::path> decoded_path;
};

/// Adds N(0, (magnitude * (2^q - 1))^2) to every pixel, rounded and clamped.
GrayImage apply_classical_noise(const GrayImage& img, const StateNoiseConfig& cfg);

/// The k-qubit register each representation contributes to tomography:
/// FRQI the product of the color qubits of the first k pixels encoded as
/// 1-pixel images; NEQR the k leading qubits of the concatenated gray codes;
/// QuBo the MSB qubits of the first k pixels.
StateVectord tomography_register(Representation r, const GrayImage& img, int k);

TomographyResult run_tomography(Representation r, const GrayImage& img, const TomographyConfig& cfg,
                                std::uint64_t seed, const StateNoiseConfig& noise = {});

RunReport run_pipeline(const ExperimentConfig& cfg);

std::string metrics_csv_header();
std::string metrics_csv_row(const RunReport& report);

struct CompareResult {
  std::vector<RunReport> runs;  // FRQI, NEQR, QuBo
  std::string comparison_csv;
  std::string sweep_csv;        // tomography error per qubit count; empty if tomography is off
};

/// Runs all three representations on the shared image and shot budget.
/// With an output directory, each run writes into <out>/<repr>/ and the
/// summary goes to comparison.csv (and sweep.csv).
CompareResult run_repr_compare(const ExperimentConfig& base);

/// One row per (representation, n): qubit budget, best-of-three encode time
/// and the documented preparation complexity. Rows whose register exceeds
/// the cap are listed without a timing.
std::string run_budget_report(int n_min, int n_max, int q, int max_qubits = kDefaultMaxQubits);

std::string complexity_class(Representation r);

}  // namespace qil
