#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "cumsense/numerics.hpp"

using namespace cumsense;

TEST_CASE("least squares recovers the generator of a consistent system") {
  Matrix a(4, 2);
  a << 1, 0, 0, 1, 1, 1, 1, -1;
  Vector x0(2);
  x0 << 2.5, -1.25;
  const Vector b = a * x0;
  const auto sol = solve_least_squares(a, b);
  CHECK(sol.rank == 2);
  CHECK((sol.x - x0).norm() <= 1e-12 * x0.norm());
  CHECK(sol.residual_norm <= 1e-8 * b.norm());
  CHECK(sol.condition >= 1.0);
}

TEST_CASE("least squares on a rank-deficient system returns the minimum-norm solution") {
  Matrix a(3, 2);
  a << 1, 1, 2, 2, -1, -1;  // both columns equal
  Vector b(3);
  b << 2, 4, -2;
  const auto sol = solve_least_squares(a, b);
  CHECK(sol.rank == 1);
  // minimum-norm solution splits the weight evenly across the equal columns
  CHECK(sol.x(0) == doctest::Approx(1.0));
  CHECK(sol.x(1) == doctest::Approx(1.0));
}

TEST_CASE("least squares reports the residual of an inconsistent system") {
  Matrix a(3, 1);
  a << 1, 1, 1;
  Vector b(3);
  b << 0, 3, 0;
  const auto sol = solve_least_squares(a, b);
  CHECK(sol.x(0) == doctest::Approx(1.0));
  CHECK(sol.residual_norm == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("complex least squares handles Hermitian data") {
  CMatrix a(3, 2);
  a << CScalar(1, 0), CScalar(0, 1), CScalar(0, -1), CScalar(1, 0), CScalar(1, 1),
      CScalar(2, -1);
  CVector x0(2);
  x0 << CScalar(0.5, -2), CScalar(1, 3);
  const CVector b = a * x0;
  const auto sol = solve_least_squares(a, b);
  CHECK(sol.rank == 2);
  CHECK((sol.x - x0).norm() <= 1e-10 * x0.norm());
}

TEST_CASE("numerical rank flags equal columns and respects scaling") {
  Matrix a(3, 2);
  a << 1, 1, 2, 2, 3, 3;
  CHECK(numerical_rank(a, 1e-10) == 1);
  const Matrix scaled = 1e-7 * a;
  CHECK(numerical_rank(scaled, 1e-10) == 1);
  Matrix b(3, 3);
  b << 1, 0, 0, 0, 2, 0, 0, 0, 3e-3;
  CHECK(numerical_rank(b, 1e-10) == 3);
  // row permutation leaves the rank alone
  Matrix p = b;
  p.row(0).swap(p.row(2));
  CHECK(numerical_rank(p, 1e-10) == numerical_rank(b, 1e-10));
}

TEST_CASE("dft matches the analytic transform of a single tone") {
  const int n = 8;
  CVector x(n);
  for (int t = 0; t < n; ++t) x(t) = std::cos(2.0 * std::numbers::pi * t / n);
  const CVector f = dft(x, false);
  for (int k = 0; k < n; ++k) {
    const double expect = (k == 1 || k == n - 1) ? n / 2.0 : 0.0;
    CHECK(std::abs(f(k) - CScalar(expect, 0)) <= 1e-12 * n);
  }
}

TEST_CASE("inverse dft undoes the forward transform") {
  CVector x(5);
  x << CScalar(1, 2), CScalar(-0.5, 0), CScalar(3, -1), CScalar(0, 0.25), CScalar(-2, -2);
  const CVector back = dft(dft(x, false), true);
  CHECK((back - x).norm() <= 1e-12 * x.norm());
}
