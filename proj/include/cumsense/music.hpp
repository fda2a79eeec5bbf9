#pragma once

#include <vector>

#include "cumsense/slice.hpp"

namespace cumsense {

struct PseudoSpectrum {
  Vector grid;    // frequencies in cycles/sample, increasing over [0, 0.5]
  Vector values;  // finite, nonnegative
  std::vector<double> detected_peaks;  // interior local maxima above the median, ascending
};

// Subspace line-spectrum estimate from a diagonal cumulant slice. Builds the
// symmetric Toeplitz matrix with first row slice(0..matrix_order-1), splits
// eigenvectors by |eigenvalue| (fourth-order slices put negative weights on
// signal directions), and evaluates 1 / ||noise-subspace projection of the
// steering vector||^2 on a frequency grid. Each real sinusoid occupies two
// complex exponentials, so the signal subspace has dimension
// 2 * num_real_harmonics.
PseudoSpectrum music(const CumulantSlice& slice, int num_real_harmonics, int matrix_order = 12,
                     int grid_size = 2048);

}  // namespace cumsense
