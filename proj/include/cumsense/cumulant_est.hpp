#pragma once

#include <array>
#include <vector>

#include "cumsense/signal_gen.hpp"

namespace cumsense {

struct Lag {
  int tau1 = 0;
  int tau2 = 0;
  friend bool operator==(const Lag&, const Lag&) = default;
};

// The third-order statistic c(t1, t2) = E x[n] x[n+t1] x[n+t2] is invariant
// under re-basing at any of the three sample points and swapping the other
// two. symmetry_images lists the full orbit; principal_image returns the
// unique representative with 0 <= tau1 <= tau2.
std::array<Lag, 6> symmetry_images(Lag t);
Lag principal_image(Lag t);

// Full third-order lag grid of a length-N stationary block, stored over
// tau in [1-N, N-1]^2. Lags with max(|t1|, |t2|, |t1-t2|) > N-1 never occur
// inside one block and read as zero.
struct StationaryCumulant {
  int block_length = 0;
  Matrix grid;  // (2N-1) x (2N-1), entry (t1+N-1, t2+N-1)

  explicit StationaryCumulant(int n = 1)
      : block_length(n), grid(Matrix::Zero(2 * n - 1, 2 * n - 1)) {}

  bool in_grid(Lag t) const {
    return std::abs(t.tau1) < block_length && std::abs(t.tau2) < block_length;
  }
  bool in_hexagon(Lag t) const {
    return in_grid(t) && std::abs(t.tau1 - t.tau2) < block_length;
  }
  double at(Lag t) const {
    return in_grid(t) ? grid(t.tau1 + block_length - 1, t.tau2 + block_length - 1) : 0.0;
  }
  void set(Lag t, double v) { grid(t.tau1 + block_length - 1, t.tau2 + block_length - 1) = v; }
};

// All third moments E y_i y_j y_l of a length-d vector, flattened with the
// 1-based convention (i,j,l) -> (i-1)d^2 + (j-1)d + l.
struct CumulantVector {
  int dim = 0;
  Vector values;

  explicit CumulantVector(int d = 1) : dim(d), values(Vector::Zero(Index(d) * d * d)) {}

  double at(int i1, int i2, int i3) const {
    return values(Index(i1 - 1) * dim * dim + Index(i2 - 1) * dim + i3 - 1);
  }
  double& at(int i1, int i2, int i3) {
    return values(Index(i1 - 1) * dim * dim + Index(i2 - 1) * dim + i3 - 1);
  }
};

// Sample average of y_i y_j y_l over blocks. The stream mean is subtracted
// first only when it is statistically distinguishable from zero (|mean| above
// 3 standard errors), so nominally zero-mean data is not re-centered.
CumulantVector empirical_third_moment_vector(const BlockStream& s);

// Per-lag averages of x[n] x[n+t1] x[n+t2] over all in-block positions and
// blocks, followed by an exact six-fold symmetrization.
StationaryCumulant empirical_stationary_cumulant(const BlockStream& s);

// Population third-order cumulant of an MA process with unit-variance driver:
// c(t1, t2) = gamma3 * sum_n h[n] h[n+t1] h[n+t2].
StationaryCumulant analytic_ma_cumulant(const MaModel& m, int block_length);

// Population autocovariance of the same process at lags 0..max_lag.
Vector ma_autocovariance(const std::vector<double>& h, int max_lag);

double driver_third_moment(MaModel::Driver d);
double driver_fourth_cumulant(MaModel::Driver d);

// Normalized squared error ||estimate - truth||^2 / ||truth||^2, taken over
// the hexagon values for cumulant grids. Zero-norm truth is rejected.
double mse(const StationaryCumulant& estimate, const StationaryCumulant& truth);
double mse(const Vector& estimate, const Vector& truth);

}  // namespace cumsense
