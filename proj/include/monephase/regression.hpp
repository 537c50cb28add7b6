#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "monephase/error.hpp"

namespace monephase {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct RegressionResult {
  Vector<Scalar> coefficients;
  Vector<Scalar> residuals;
  Matrix<Scalar> xtx_inverse;
  Eigen::Index n = 0;
  Eigen::Index k = 0;

  Scalar rss() const { return residuals.squaredNorm(); }

  // Classical s^2 (X'X)^{-1} with denominator n - k.
  Matrix<Scalar> classical_covariance() const {
    return xtx_inverse * (rss() / static_cast<Scalar>(n - k));
  }
};

// Condition threshold for the smallest singular value of the design,
// relative to the largest.
inline constexpr double kRankTolerance = 1e-10;

// Least squares via column-pivoted Householder QR. The singular values of R
// (equal to those of X) are checked against kRankTolerance.
template <typename DerivedX, typename DerivedY>
RegressionResult<typename DerivedX::Scalar> ols(const Eigen::MatrixBase<DerivedX>& X,
                                                const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (y.rows() != n) throw DomainError("ols: X and y row counts differ");
  if (k < 1) throw DomainError("ols: empty design");
  if (n <= k) {
    throw LengthError("ols: need more observations than regressors (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }

  Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(X);
  Matrix<Scalar> R = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Matrix<Scalar>> svd(R);
  const auto& sv = svd.singularValues();
  if (!(sv(k - 1) >= Scalar(kRankTolerance) * sv(0)) || sv(0) == Scalar(0)) {
    throw NumericalError("ols: design matrix is collinear (singular value ratio " +
                         std::to_string(static_cast<double>(sv(0) == Scalar(0) ? Scalar(0) : sv(k - 1) / sv(0))) + ")");
  }

  RegressionResult<Scalar> out;
  out.n = n;
  out.k = k;
  out.coefficients = qr.solve(y.derived());
  out.residuals = y - X * out.coefficients;

  Matrix<Scalar> r_inv = R.template triangularView<Eigen::Upper>().solve(
      Matrix<Scalar>::Identity(k, k));
  Matrix<Scalar> inner = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  out.xtx_inverse = perm * inner * perm.transpose();
  return out;
}

namespace detail {

// Omega = sum_{t,s : |tau_t - tau_s| <= L} w(|tau_t - tau_s|) e_t e_s x_t x_s'
template <typename DerivedX, typename DerivedE>
Matrix<typename DerivedX::Scalar> hac_meat(const Eigen::MatrixBase<DerivedX>& X,
                                           const Eigen::MatrixBase<DerivedE>& residuals,
                                           int max_lag, std::span<const long> times) {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (max_lag < 0) throw DomainError("hac: max_lag must be non-negative");
  if (max_lag >= n) throw DomainError("hac: max_lag must be smaller than the sample size");
  if (residuals.rows() != n) throw DomainError("hac: residual length differs from X rows");
  if (!times.empty() && static_cast<Eigen::Index>(times.size()) != n) {
    throw DomainError("hac: times length differs from X rows");
  }
  auto time_of = [&](Eigen::Index i) -> long {
    return times.empty() ? static_cast<long>(i) : times[static_cast<std::size_t>(i)];
  };

  // Scores g_t = x_t e_t, one per row.
  Matrix<Scalar> G = X.derived().array().colwise() * residuals.derived().array();
  Matrix<Scalar> omega = G.transpose() * G;
  if (max_lag > 0) {
    Matrix<Scalar> cross = Matrix<Scalar>::Zero(k, k);
    for (Eigen::Index t = 1; t < n; ++t) {
      for (Eigen::Index s = t - 1; s >= 0; --s) {
        const long gap = time_of(t) - time_of(s);
        if (gap <= 0) throw DomainError("hac: times must be strictly increasing");
        if (gap > max_lag) break;
        const Scalar w = Scalar(1) - Scalar(gap) / Scalar(max_lag + 1);
        cross.noalias() += w * G.row(t).transpose() * G.row(s);
      }
    }
    omega += cross + cross.transpose();
  }
  return omega;
}

template <typename Scalar>
Matrix<Scalar> sandwich(const Matrix<Scalar>& bread, const Matrix<Scalar>& meat) {
  Matrix<Scalar> v = bread * meat * bread;
  return (v + v.transpose()) / Scalar(2);
}

}  // namespace detail

// Newey-West sandwich (X'X)^{-1} Omega (X'X)^{-1} with Bartlett weights
// w(j) = 1 - j/(L+1) and no n/(n-k) correction. `times` gives the month
// offset of every row (strictly increasing); an empty span means consecutive
// rows. Row pairs further apart in time than L contribute nothing, so gapped
// subsamples are handled without splicing them together.
template <typename DerivedX, typename DerivedE>
Matrix<typename DerivedX::Scalar> hac_covariance(const Eigen::MatrixBase<DerivedX>& X,
                                                 const Eigen::MatrixBase<DerivedE>& residuals,
                                                 int max_lag,
                                                 std::span<const long> times = {}) {
  using Scalar = typename DerivedX::Scalar;
  auto meat = detail::hac_meat(X, residuals, max_lag, times);
  Matrix<Scalar> Xd = X;
  Matrix<Scalar> bread = (Xd.transpose() * Xd).ldlt().solve(
      Matrix<Scalar>::Identity(Xd.cols(), Xd.cols()));
  return detail::sandwich<Scalar>(bread, meat);
}

// Same estimator reusing the (X'X)^{-1} of a prior fit on the same sample.
template <typename DerivedX, typename Scalar>
Matrix<Scalar> hac_covariance(const Eigen::MatrixBase<DerivedX>& X,
                              const RegressionResult<Scalar>& fit, int max_lag,
                              std::span<const long> times = {}) {
  auto meat = detail::hac_meat(X, fit.residuals, max_lag, times);
  return detail::sandwich<Scalar>(fit.xtx_inverse, meat);
}

// Diagonal entry `index` of hac_covariance without forming the full meat:
// with b the index-th row of (X'X)^{-1} the entry is the Bartlett-weighted
// long-run variance of z_t = e_t x_t'b.
template <typename DerivedX, typename Scalar>
Scalar hac_coefficient_variance(const Eigen::MatrixBase<DerivedX>& X,
                                const RegressionResult<Scalar>& fit, int max_lag,
                                Eigen::Index index, std::span<const long> times = {}) {
  const Eigen::Index n = X.rows();
  if (index < 0 || index >= X.cols()) throw DomainError("hac: coefficient index out of range");
  if (max_lag < 0) throw DomainError("hac: max_lag must be non-negative");
  if (max_lag >= n) throw DomainError("hac: max_lag must be smaller than the sample size");
  if (fit.residuals.rows() != n) throw DomainError("hac: residual length differs from X rows");
  if (!times.empty() && static_cast<Eigen::Index>(times.size()) != n) {
    throw DomainError("hac: times length differs from X rows");
  }
  auto time_of = [&](Eigen::Index i) -> long {
    return times.empty() ? static_cast<long>(i) : times[static_cast<std::size_t>(i)];
  };
  const Vector<Scalar> b = fit.xtx_inverse.row(index).transpose();
  const Vector<Scalar> z = (X * b).cwiseProduct(fit.residuals);
  Scalar v = z.squaredNorm();
  for (Eigen::Index t = 1; t < n; ++t) {
    for (Eigen::Index s = t - 1; s >= 0; --s) {
      const long gap = time_of(t) - time_of(s);
      if (gap <= 0) throw DomainError("hac: times must be strictly increasing");
      if (gap > max_lag) break;
      v += Scalar(2) * (Scalar(1) - Scalar(gap) / Scalar(max_lag + 1)) * z(t) * z(s);
    }
  }
  return v;
}

}  // namespace monephase
