#pragma once

#include <optional>
#include <string>

#include <Eigen/Core>

#include "qil/image.hpp"
#include "qil/qcore.hpp"

namespace qil {

class DensityMatrix;

/// Peak signal-to-noise ratio in dB; a perfect match is a distinct
/// "infinite" value rather than a floating-point infinity.
class Psnr {
 public:
  static Psnr infinite() { return Psnr(); }
  static Psnr decibels(double db) { return Psnr(db); }

  bool is_infinite() const { return !db_.has_value(); }
  double db() const;
  std::string to_string() const;

  bool operator==(const Psnr&) const = default;

 private:
  Psnr() = default;
  explicit Psnr(double db) : db_(db) {}
  std::optional<double> db_;
};

struct ImageErrorReport {
  double mae = 0.0;
  double mse = 0.0;
  Psnr psnr = Psnr::infinite();
  std::uint32_t max_pixel_error = 0;
};

ImageErrorReport image_error(const GrayImage& ref, const GrayImage& est);

/// Signed per-pixel difference est - ref.
Eigen::MatrixXi noise_map(const GrayImage& ref, const GrayImage& est);

struct MatrixErrorReport {
  /// 100 * max|error part| / max|ideal part|. The imaginary percentage is
  /// empty when the ideal matrix has no imaginary part.
  double max_percentage_error_real = 0.0;
  std::optional<double> max_percentage_error_imag;
  Eigen::MatrixXd error_real;
  Eigen::MatrixXd error_imag;
};

/// Throws UndefinedPercentage if the ideal matrix has an all-zero real part.
MatrixErrorReport matrix_error(const CMatrixd& ideal, const CMatrixd& est);
MatrixErrorReport matrix_error(const DensityMatrix& ideal, const DensityMatrix& est);

}  // namespace qil
