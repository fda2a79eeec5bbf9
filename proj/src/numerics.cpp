#include "cumsense/numerics.hpp"

#include <cmath>
#include <numbers>

#include "cumsense/common.hpp"

namespace cumsense {
namespace {

template <typename Scalar>
LeastSquaresSolutionT<Scalar> solve_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& b) {
  require(A.rows() == b.size(), "least squares: rhs length must match rows of A");
  require(A.rows() > 0 && A.cols() > 0, "least squares: empty system");

  LeastSquaresSolutionT<Scalar> out;

  Eigen::ColPivHouseholderQR<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> qr(A);
  qr.setThreshold(kRankRelTol);
  const Index qr_rank = qr.rank();

  if (qr_rank == A.cols()) {
    out.x = qr.solve(b);
    out.rank = qr_rank;
    const auto& R = qr.matrixR();
    double dmax = 0.0, dmin = 0.0;
    for (Index i = 0; i < std::min(A.rows(), A.cols()); ++i) {
      const double d = std::abs(R(i, i));
      if (i == 0) dmax = dmin = d;
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    out.condition = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
  } else {
    // Rank deficient: pivoted QR's basic solution is not minimum-norm, switch
    // to a thin SVD and zero out the small singular directions explicitly.
    Eigen::BDCSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(
        A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = kRankRelTol * sv(0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) ++rank;
    Eigen::Vector<Scalar, Eigen::Dynamic> z = svd.matrixU().adjoint() * b;
    for (Index i = 0; i < z.size(); ++i) z(i) = i < rank ? z(i) / Scalar(sv(i)) : Scalar(0);
    out.x = svd.matrixV() * z;
    out.rank = rank;
    out.condition = rank > 0 ? sv(0) / sv(rank - 1) : std::numeric_limits<double>::infinity();
  }
  out.residual_norm = (A * out.x - b).norm();
  return out;
}

template <typename Scalar>
Index rank_impl(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A, double rel_tol) {
  require(A.rows() > 0 && A.cols() > 0, "numerical rank: empty matrix");
  Eigen::BDCSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

}  // namespace

LeastSquaresSolution solve_least_squares(const Matrix& A, const Vector& b) {
  return solve_impl<double>(A, b);
}

ComplexLeastSquaresSolution solve_least_squares(const CMatrix& A, const CVector& b) {
  return solve_impl<std::complex<double>>(A, b);
}

Index numerical_rank(const Matrix& A, double rel_tol) { return rank_impl<double>(A, rel_tol); }

Index numerical_rank(const CMatrix& A, double rel_tol) {
  return rank_impl<std::complex<double>>(A, rel_tol);
}

CVector dft(const CVector& v, bool inverse) {
  const Index n = v.size();
  require(n > 0, "dft: empty input");
  const double sign = inverse ? 1.0 : -1.0;
  CVector out(n);
  for (Index j = 0; j < n; ++j) {
    std::complex<double> acc = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double ang = sign * 2.0 * std::numbers::pi * double(j) * double(k) / double(n);
      acc += v(k) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out(j) = inverse ? acc / double(n) : acc;
  }
  return out;
}

}  // namespace cumsense
