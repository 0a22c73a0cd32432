#pragma once

// Text serialization shared by the pipeline and the CLI: CSV grids, JSON
// records, noise-map previews and the unitary CSV format.

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <json.hpp>

#include "qil/encodings.hpp"
#include "qil/metrics.hpp"
#include "qil/tomography.hpp"

namespace qil {

/// Shortest decimal form that round-trips to the same double.
std::string format_number(double v);

std::string csv_grid(const Eigen::MatrixXi& m);
std::string csv_grid(const Eigen::MatrixXd& m);

nlohmann::json to_json(const ImageErrorReport& r);
nlohmann::json to_json(const MatrixErrorReport& r);
nlohmann::json to_json(const CoverageReport& c);
nlohmann::json grid_json(const Eigen::MatrixXd& m);

/// Entry grids of `estimate` with its purity and physicality. The per-entry
/// error is taken against `ideal`.
nlohmann::json tomography_record(const DensityMatrix& estimate, const DensityMatrix& ideal);

/// Shifts a signed noise map by 2^q - 1 so it fits an unsigned image of
/// depth q + 1; zero error maps to mid-gray.
GrayImage noise_map_preview(const Eigen::MatrixXi& map, int q);

/// One matrix row per line; each line holds re,im pairs for every column
/// ("re,im" cells, optionally quoted).
UnitaryMatrixd parse_unitary_csv(std::string_view text);
UnitaryMatrixd read_unitary_csv(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace qil
