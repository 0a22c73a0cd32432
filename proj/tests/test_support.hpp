#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qil/image.hpp"
#include "qil/qcore.hpp"
#include "qil/tomography.hpp"

namespace qil::testing {

inline std::complex<double> complex_normal(Rng& rng) { return {rng.normal(), rng.normal()}; }

inline Qubitd random_qubit(Rng& rng) { return Qubitd::normalized(complex_normal(rng), complex_normal(rng)); }

inline StateVectord random_state(int k, Rng& rng) {
  CVectord v(Eigen::Index{1} << k);
  for (auto& a : v) a = complex_normal(rng);
  return StateVectord::normalized(v);
}

inline CMatrixd random_complex_matrix(Eigen::Index d, Rng& rng) {
  CMatrixd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = complex_normal(rng);
  return m;
}

inline UnitaryMatrixd random_unitary(Eigen::Index d, Rng& rng) {
  Eigen::HouseholderQR<CMatrixd> qr(random_complex_matrix(d, rng));
  return UnitaryMatrixd(qr.householderQ() * CMatrixd::Identity(d, d));
}

inline CMatrixd random_hermitian(Eigen::Index d, Rng& rng) {
  const CMatrixd a = random_complex_matrix(d, rng);
  return (a + a.adjoint()) / 2.0;
}

/// Random full-rank density matrix: G G^dagger / Tr(G G^dagger).
inline DensityMatrix random_density(int k, Rng& rng) {
  const CMatrixd g = random_complex_matrix(Eigen::Index{1} << k, rng);
  CMatrixd rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

inline GrayImage random_image(int n, int q, Rng& rng, std::uint32_t lo = 0, std::uint32_t hi = 0) {
  const std::uint32_t top = hi ? hi : (std::uint32_t{1} << q) - 1;
  std::vector<std::uint32_t> px((std::size_t{1} << n) << n);
  for (auto& p : px) p = lo + static_cast<std::uint32_t>(rng.next_u64() % (top - lo + 1));
  return GrayImage(n, q, std::move(px));
}

}  // namespace qil::testing
