#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cumsense/numerics.hpp"

namespace cumsense {

// K independent length-N realizations of a stationary process, one block per
// column. Independence across blocks is what makes Monte-Carlo averages of
// per-block statistics consistent estimators.
struct BlockStream {
  Matrix samples;  // block_length x block_count

  Index block_length() const { return samples.rows(); }
  Index block_count() const { return samples.cols(); }
};

// Moving-average process x[n] = sum_j h[j] w[n-j] with an i.i.d. driver.
// The centered-exponential driver (unit-rate exponential minus its mean) has
// variance 1 and third central moment 2, so third-order statistics survive.
struct MaModel {
  enum class Driver { centered_exponential, gaussian };
  std::vector<double> coefficients;  // h[0..order]
  Driver driver = Driver::centered_exponential;

  int order() const { return int(coefficients.size()) - 1; }
};

// Real harmonics in noise; per-block phases are i.i.d. uniform on [0, 2*pi),
// which renders the ensemble wide-sense stationary.
struct HarmonicModel {
  std::vector<double> frequencies;  // cycles per sample, in (0, 0.5)
  std::vector<double> amplitudes;
};

// Gaussian ARMA noise: ar(B) v[n] = ma(B) w[n], w white standard normal.
// ar[0] must be 1; ar of size 1 degenerates to a pure MA filter.
struct ColoredNoiseModel {
  std::vector<double> ma{1.0};
  std::vector<double> ar{1.0};
};

double spectral_radius_of_ar(const std::vector<double>& ar);
bool is_stable(const ColoredNoiseModel& m);

// Samples the model needs before output decorrelates from the start-up
// transient; generators discard 10x this many warm-up samples per block.
int filter_memory(const ColoredNoiseModel& m);

BlockStream generate_ma_blocks(const MaModel& m, int block_length, int block_count,
                               std::uint64_t seed);
BlockStream generate_harmonic_blocks(const HarmonicModel& m, int block_length, int block_count,
                                     std::uint64_t seed);
BlockStream generate_colored_noise_blocks(const ColoredNoiseModel& m, int block_length,
                                          int block_count, std::uint64_t seed);

// clean + alpha * noise with alpha chosen so that the realized ensemble powers
// satisfy the requested SNR exactly. Zero-power clean input is returned as-is
// with unscaled noise added.
BlockStream add_noise_at_snr(const BlockStream& clean, const ColoredNoiseModel& m, double snr_db,
                             std::uint64_t seed);

double ensemble_power(const BlockStream& s);

}  // namespace cumsense
