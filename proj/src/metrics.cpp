#include "qil/metrics.hpp"

#include <cmath>
#include <cstdlib>

#include "qil/tomography.hpp"

namespace qil {
namespace {

void require_same_shape(const GrayImage& a, const GrayImage& b) {
  if (a.n() != b.n() || a.q() != b.q()) throw DimensionMismatch("images differ in size or bit depth");
}

}  // namespace

double Psnr::db() const {
  if (!db_) throw InvalidArgument("PSNR is infinite");
  return *db_;
}

std::string Psnr::to_string() const {
  if (!db_) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *db_);
  return buf;
}

ImageErrorReport image_error(const GrayImage& ref, const GrayImage& est) {
  require_same_shape(ref, est);
  ImageErrorReport r;
  double abs_sum = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const auto d = static_cast<std::int64_t>(est[i]) - static_cast<std::int64_t>(ref[i]);
    const auto ad = static_cast<std::uint32_t>(std::llabs(d));
    abs_sum += ad;
    sq_sum += static_cast<double>(d) * static_cast<double>(d);
    r.max_pixel_error = std::max(r.max_pixel_error, ad);
  }
  const auto count = static_cast<double>(ref.size());
  r.mae = abs_sum / count;
  r.mse = sq_sum / count;
  if (r.mse > 0.0) {
    const double peak = static_cast<double>(ref.max_value());
    r.psnr = Psnr::decibels(10.0 * std::log10(peak * peak / r.mse));
  }
  return r;
}

Eigen::MatrixXi noise_map(const GrayImage& ref, const GrayImage& est) {
  require_same_shape(ref, est);
  const auto side = static_cast<Eigen::Index>(ref.side());
  Eigen::MatrixXi m(side, side);
  for (Eigen::Index y = 0; y < side; ++y) {
    for (Eigen::Index x = 0; x < side; ++x) {
      const auto i = static_cast<std::size_t>(y * side + x);
      m(y, x) = static_cast<int>(est[i]) - static_cast<int>(ref[i]);
    }
  }
  return m;
}

MatrixErrorReport matrix_error(const CMatrixd& ideal, const CMatrixd& est) {
  if (ideal.rows() != est.rows() || ideal.cols() != est.cols()) throw DimensionMismatch("matrices differ in shape");
  MatrixErrorReport r;
  const CMatrixd err = est - ideal;
  r.error_real = err.real();
  r.error_imag = err.imag();
  const double ideal_re = ideal.real().cwiseAbs().maxCoeff();
  const double ideal_im = ideal.imag().cwiseAbs().maxCoeff();
  if (!(ideal_re > 0.0)) throw UndefinedPercentage("ideal matrix has an all-zero real part");
  r.max_percentage_error_real = 100.0 * r.error_real.cwiseAbs().maxCoeff() / ideal_re;
  if (ideal_im > 0.0) r.max_percentage_error_imag = 100.0 * r.error_imag.cwiseAbs().maxCoeff() / ideal_im;
  return r;
}

MatrixErrorReport matrix_error(const DensityMatrix& ideal, const DensityMatrix& est) {
  return matrix_error(ideal.matrix(), est.matrix());
}

}  // namespace qil
