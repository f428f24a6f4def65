#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>

#include "nerf/dense_matrix.hpp"
#include "nerf/types.hpp"

namespace nerf {

namespace detail {

using RowMajorXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMajorXcd =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<const RowMajorXd> map_real(const DenseMatrix& m) {
  return {m.data(), m.rows(), m.cols()};
}

inline Eigen::Map<const RowMajorXcd> map_cplx(const DenseMatrix& m) {
  // interleaved (re, im) doubles are layout-compatible with std::complex
  return {reinterpret_cast<const std::complex<double>*>(m.data()), m.rows(), m.cols()};
}

struct SvPair {
  double smax;
  double smin;
};

// Extremal eigenvalues of the short-side Gram operator, as singular values.
template <typename Mapped>
SvPair gram_extremes(const Mapped& a) {
  using Scalar = typename Mapped::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat g;
  if (a.rows() <= a.cols())
    g = a * a.adjoint();
  else
    g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Mat> eig(g, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  double lo = std::max(ev(0), 0.0);
  double hi = std::max(ev(ev.size() - 1), 0.0);
  return {std::sqrt(hi), std::sqrt(lo)};
}

template <typename Mapped>
SvPair direct_extremes(const Mapped& a) {
  using Scalar = typename Mapped::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  // tall orientation; Jacobi keeps full accuracy at small sizes and for
  // complex scalars, BDC handles the larger real cases
  Mat tall;
  if (a.rows() >= a.cols())
    tall = a;
  else
    tall = a.adjoint();
  Eigen::VectorXd sv;
  if constexpr (std::is_same_v<Scalar, double>) {
    if (tall.cols() > 32) {
      Eigen::BDCSVD<Mat> svd(tall);
      sv = svd.singularValues();
    } else {
      Eigen::JacobiSVD<Mat> svd(tall);
      sv = svd.singularValues();
    }
  } else {
    Eigen::JacobiSVD<Mat> svd(tall);
    sv = svd.singularValues();
  }
  return {sv(0), sv(sv.size() - 1)};
}

}  // namespace detail

// sigma_1 and sigma_min(short dimension) of a dense matrix.
//
// Route: eigenvalues of the short-side Gram operator (cost k^2 m + k^3 for
// k = min dim), which is the cheap choice in the wide regime this library
// lives in. Squaring loses half the relative accuracy of small singular
// values, so when sigma_min/sigma_max drops below 1e-6 the result is
// recomputed by a direct SVD. The residual field carries a backward-error
// estimate for the route taken; results violating the 1e-8 * sigma_max
// acceptance bound are rejected.
inline SingularExtremes extremal_singular_values(const DenseMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1)
    throw DomainError("extremal_singular_values: empty matrix");
  if (!m.all_finite())
    throw DomainError("extremal_singular_values: entries must be finite");

  const double eps = std::numeric_limits<double>::epsilon();
  const double k = double(std::min(m.rows(), m.cols()));
  detail::SvPair g = (m.field() == Field::Real)
                         ? detail::gram_extremes(detail::map_real(m))
                         : detail::gram_extremes(detail::map_cplx(m));

  SingularExtremes r;
  if (g.smax == 0.0) {
    return r;  // zero matrix: both extremes 0, residual 0
  }

  if (g.smin > 1e-6 * g.smax) {
    r.sigma_max = g.smax;
    r.sigma_min = g.smin;
    // Gram eigenvalue backward error ~ eps sqrt(k) sigma_max^2 maps to
    // eps sqrt(k) sigma_max^2 / (2 sigma_min) on the small end.
    r.residual = eps * std::sqrt(k) * g.smax * (g.smax / (2.0 * g.smin));
  } else {
    detail::SvPair d = (m.field() == Field::Real)
                           ? detail::direct_extremes(detail::map_real(m))
                           : detail::direct_extremes(detail::map_cplx(m));
    r.sigma_max = d.smax;
    r.sigma_min = d.smin;
    r.residual = eps * std::sqrt(double(m.rows()) * double(m.cols())) * d.smax;
  }

  if (!(r.residual <= 1e-8 * r.sigma_max))
    throw SvdFailure("extremal_singular_values: residual estimate exceeds acceptance bound");
  return r;
}

}  // namespace nerf
