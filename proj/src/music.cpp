#include "cumsense/music.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cumsense/common.hpp"

namespace cumsense {

PseudoSpectrum music(const CumulantSlice& slice, int num_real_harmonics, int matrix_order,
                     int grid_size) {
  require(num_real_harmonics >= 1, "music: need at least one harmonic");
  require(matrix_order <= slice.block_length,
          "music: matrix order exceeds available slice lags");
  require(2 * num_real_harmonics < matrix_order,
          "music: matrix order must exceed twice the harmonic count");
  require(grid_size >= 16, "music: grid too small");

  const int d = matrix_order;
  Matrix R(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) R(i, j) = slice.at(std::abs(i - j));

  Eigen::SelfAdjointEigenSolver<Matrix> eig(R);
  require(eig.info() == Eigen::Success, "music: eigendecomposition failed");

  // Rank eigenpairs by |eigenvalue|; the smallest-magnitude d - 2p of them
  // span the noise subspace.
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  const Vector& ev = eig.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(ev(a)) > std::abs(ev(b)); });
  const int noise_dim = d - 2 * num_real_harmonics;
  Matrix noise(d, noise_dim);
  for (int c = 0; c < noise_dim; ++c)
    noise.col(c) = eig.eigenvectors().col(order[size_t(2 * num_real_harmonics + c)]);

  PseudoSpectrum out;
  out.grid.resize(grid_size);
  out.values.resize(grid_size);
  Vector ere(d), eim(d);
  for (int g = 0; g < grid_size; ++g) {
    const double w = 0.5 * double(g) / double(grid_size - 1);
    out.grid(g) = w;
    for (int k = 0; k < d; ++k) {
      const double ang = 2.0 * std::numbers::pi * w * k;
      ere(k) = std::cos(ang);
      eim(k) = std::sin(ang);
    }
    const double s = (noise.transpose() * ere).squaredNorm() +
                     (noise.transpose() * eim).squaredNorm();
    out.values(g) = 1.0 / std::max(s, 1e-15);  // floor keeps values finite
  }

  std::vector<double> sorted(out.values.data(), out.values.data() + grid_size);
  std::nth_element(sorted.begin(), sorted.begin() + grid_size / 2, sorted.end());
  const double median = sorted[size_t(grid_size / 2)];
  for (int g = 1; g + 1 < grid_size; ++g)
    if (out.values(g) > out.values(g - 1) && out.values(g) > out.values(g + 1) &&
        out.values(g) > median)
      out.detected_peaks.push_back(out.grid(g));
  return out;
}

}  // namespace cumsense
