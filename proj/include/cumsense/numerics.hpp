#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cumsense {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CScalar = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
struct LeastSquaresSolutionT {
  Eigen::Vector<Scalar, Eigen::Dynamic> x;
  double residual_norm = 0.0;   // ||A x - b||_2
  Index rank = 0;               // numerical rank of A at the tolerance used
  double condition = 0.0;       // ratio of extreme nonzero singular/diagonal values
};

using LeastSquaresSolution = LeastSquaresSolutionT<double>;
using ComplexLeastSquaresSolution = LeastSquaresSolutionT<std::complex<double>>;

// Relative tolerance used for rank decisions throughout: singular values below
// rel_tol * sigma_max count as zero.
inline constexpr double kRankRelTol = 1e-10;

// Minimum-norm least-squares solve. Column-pivoted QR when A has full column
// rank at the tolerance; falls back to an SVD solve for rank-deficient A so
// the returned x is the minimum-norm minimizer in every case.
LeastSquaresSolution solve_least_squares(const Matrix& A, const Vector& b);
ComplexLeastSquaresSolution solve_least_squares(const CMatrix& A, const CVector& b);

Index numerical_rank(const Matrix& A, double rel_tol = kRankRelTol);
Index numerical_rank(const CMatrix& A, double rel_tol = kRankRelTol);

// Direct O(n^2) DFT, forward kernel exp(-2*pi*i*j*k/n). inverse applies the
// conjugate kernel and divides by n. Sizes here never exceed a few dozen.
CVector dft(const CVector& v, bool inverse = false);

}  // namespace cumsense
