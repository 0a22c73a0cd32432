#include "qil/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace qil {

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InvalidArgument("cannot format number");
  return std::string(buf, ptr);
}

std::string csv_grid(const Eigen::MatrixXi& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += std::to_string(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string csv_grid(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_number(m(r, c));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json grid_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const ImageErrorReport& r) {
  nlohmann::json j;
  j["mae"] = r.mae;
  j["mse"] = r.mse;
  j["psnr"] = r.psnr.is_infinite() ? nlohmann::json("inf") : nlohmann::json(r.psnr.db());
  j["max_pixel_error"] = r.max_pixel_error;
  return j;
}

nlohmann::json to_json(const MatrixErrorReport& r) {
  nlohmann::json j;
  j["max_percentage_error_real"] = r.max_percentage_error_real;
  j["max_percentage_error_imag"] =
      r.max_percentage_error_imag ? nlohmann::json(*r.max_percentage_error_imag) : nlohmann::json(nullptr);
  j["error_real"] = grid_json(r.error_real);
  j["error_imag"] = grid_json(r.error_imag);
  return j;
}

nlohmann::json to_json(const CoverageReport& c) {
  return {{"positions", c.positions}, {"observed", c.positions - c.missing.size()}, {"missing", c.missing}};
}

nlohmann::json tomography_record(const DensityMatrix& estimate, const DensityMatrix& ideal) {
  nlohmann::json j;
  j["qubits"] = estimate.num_qubits();
  j["real"] = grid_json(estimate.matrix().real());
  j["imag"] = grid_json(estimate.matrix().imag());
  j["purity"] = purity(estimate);
  j["physical"] = estimate.physical();
  j["min_eigenvalue"] = estimate.eigenvalues().minCoeff();
  j["error"] = to_json(matrix_error(ideal, estimate));
  return j;
}

GrayImage noise_map_preview(const Eigen::MatrixXi& map, int q) {
  const int offset = (1 << q) - 1;
  const int n = detail::log2_exact(static_cast<std::size_t>(map.rows()));
  std::vector<std::uint32_t> px;
  px.reserve(static_cast<std::size_t>(map.size()));
  for (Eigen::Index y = 0; y < map.rows(); ++y) {
    for (Eigen::Index x = 0; x < map.cols(); ++x) px.push_back(static_cast<std::uint32_t>(map(y, x) + offset));
  }
  return GrayImage(n, q + 1, std::move(px));
}

UnitaryMatrixd parse_unitary_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> values;
    std::string cleaned;
    for (char ch : line) {
      if (ch != '"' && ch != '\r') cleaned += ch;
    }
    if (cleaned.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream cells(cleaned);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw IoError("unitary CSV: empty cell");
      double v = 0.0;
      const char* first = cell.data() + b;
      const char* last = cell.data() + e + 1;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) throw IoError("unitary CSV: bad number '" + cell + "'");
      values.push_back(v);
    }
    rows.push_back(std::move(values));
  }
  const auto dim = static_cast<Eigen::Index>(rows.size());
  if (dim == 0) throw IoError("unitary CSV is empty");
  CMatrixd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != 2 * dim) {
      throw IoError("unitary CSV: row " + std::to_string(r) + " needs " + std::to_string(2 * dim) + " values");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = {row[static_cast<std::size_t>(2 * c)], row[static_cast<std::size_t>(2 * c + 1)]};
    }
  }
  return UnitaryMatrixd(std::move(m));
}

UnitaryMatrixd read_unitary_csv(const std::filesystem::path& path) { return parse_unitary_csv(read_text_file(path)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace qil
