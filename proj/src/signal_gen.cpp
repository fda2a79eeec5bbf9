#include "cumsense/signal_gen.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "cumsense/common.hpp"

namespace cumsense {
namespace {

void check_block_args(int block_length, int block_count) {
  require(block_length >= 1, "block length must be positive");
  require(block_count >= 1, "block count must be positive");
}

double draw_driver(MaModel::Driver d, std::mt19937_64& rng) {
  if (d == MaModel::Driver::gaussian) {
    std::normal_distribution<double> g(0.0, 1.0);
    return g(rng);
  }
  std::exponential_distribution<double> e(1.0);
  return e(rng) - 1.0;
}

// One ARMA block with its own warm-up, so blocks are mutually independent.
Vector arma_block(const ColoredNoiseModel& m, int block_length, std::mt19937_64& rng,
                  int warm_up) {
  const int p = int(m.ar.size()) - 1;
  const int q = int(m.ma.size()) - 1;
  const int total = warm_up + block_length;
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> w(size_t(total + q), 0.0);
  for (auto& v : w) v = g(rng);
  Vector x(total);
  for (int n = 0; n < total; ++n) {
    double acc = 0.0;
    for (int j = 0; j <= q; ++j) acc += m.ma[size_t(j)] * w[size_t(n + q - j)];
    for (int j = 1; j <= p; ++j)
      if (n - j >= 0) acc -= m.ar[size_t(j)] * x(n - j);
    x(n) = acc;
  }
  return x.tail(block_length);
}

}  // namespace

double spectral_radius_of_ar(const std::vector<double>& ar) {
  require(!ar.empty() && ar[0] == 1.0, "ar polynomial must start with 1");
  const int p = int(ar.size()) - 1;
  if (p == 0) return 0.0;
  Matrix companion = Matrix::Zero(p, p);
  for (int j = 0; j < p; ++j) companion(0, j) = -ar[size_t(j + 1)];
  for (int j = 1; j < p; ++j) companion(j, j - 1) = 1.0;
  return companion.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_stable(const ColoredNoiseModel& m) { return spectral_radius_of_ar(m.ar) < 1.0; }

int filter_memory(const ColoredNoiseModel& m) {
  require(is_stable(m), "noise model must be stable");
  const int q = int(m.ma.size()) - 1;
  const double rho = spectral_radius_of_ar(m.ar);
  int tail = 0;
  if (rho > 0.0) tail = int(std::ceil(std::log(1e-3) / std::log(rho)));
  return q + tail;
}

BlockStream generate_ma_blocks(const MaModel& m, int block_length, int block_count,
                               std::uint64_t seed) {
  check_block_args(block_length, block_count);
  require(!m.coefficients.empty(), "MA model needs at least one coefficient");
  const int q = m.order();
  BlockStream out;
  out.samples.resize(block_length, block_count);
  std::vector<double> w(size_t(block_length + q), 0.0);
  for (int k = 0; k < block_count; ++k) {
    std::mt19937_64 rng(derive_seed(seed, {0x6d61ULL, std::uint64_t(k)}));
    for (auto& v : w) v = draw_driver(m.driver, rng);
    for (int n = 0; n < block_length; ++n) {
      double acc = 0.0;
      for (int j = 0; j <= q; ++j) acc += m.coefficients[size_t(j)] * w[size_t(n + q - j)];
      out.samples(n, k) = acc;
    }
  }
  return out;
}

BlockStream generate_harmonic_blocks(const HarmonicModel& m, int block_length, int block_count,
                                     std::uint64_t seed) {
  check_block_args(block_length, block_count);
  require(m.frequencies.size() == m.amplitudes.size(),
          "harmonic model: frequency and amplitude counts differ");
  for (double f : m.frequencies)
    require(f > 0.0 && f < 0.5, "harmonic frequency must lie in (0, 0.5) cycles per sample");
  const size_t P = m.frequencies.size();
  BlockStream out;
  out.samples.setZero(block_length, block_count);
  const double two_pi = 2.0 * std::numbers::pi;
  std::uniform_real_distribution<double> u(0.0, two_pi);
  for (int k = 0; k < block_count; ++k) {
    std::mt19937_64 rng(derive_seed(seed, {0x6861ULL, std::uint64_t(k)}));
    for (size_t p = 0; p < P; ++p) {
      const double phase = u(rng);
      const double w0 = two_pi * m.frequencies[p];
      for (int n = 0; n < block_length; ++n)
        out.samples(n, k) += m.amplitudes[p] * std::cos(w0 * n + phase);
    }
  }
  return out;
}

BlockStream generate_colored_noise_blocks(const ColoredNoiseModel& m, int block_length,
                                          int block_count, std::uint64_t seed) {
  check_block_args(block_length, block_count);
  require(!m.ma.empty() && !m.ar.empty() && m.ar[0] == 1.0,
          "noise model: ma nonempty, ar starting with 1");
  const int warm_up = 10 * std::max(filter_memory(m), 1);
  BlockStream out;
  out.samples.resize(block_length, block_count);
  for (int k = 0; k < block_count; ++k) {
    std::mt19937_64 rng(derive_seed(seed, {0x6e6fULL, std::uint64_t(k)}));
    out.samples.col(k) = arma_block(m, block_length, rng, warm_up);
  }
  return out;
}

BlockStream add_noise_at_snr(const BlockStream& clean, const ColoredNoiseModel& m, double snr_db,
                             std::uint64_t seed) {
  BlockStream noise = generate_colored_noise_blocks(m, int(clean.block_length()),
                                                    int(clean.block_count()), seed);
  const double p_sig = ensemble_power(clean);
  const double p_noise = ensemble_power(noise);
  require(p_noise > 0.0, "noise realization has zero power");
  double alpha = 1.0;
  if (p_sig > 0.0) alpha = std::sqrt(p_sig / (p_noise * std::pow(10.0, snr_db / 10.0)));
  BlockStream out;
  out.samples = clean.samples + alpha * noise.samples;
  return out;
}

double ensemble_power(const BlockStream& s) {
  require(s.samples.size() > 0, "empty block stream");
  return s.samples.squaredNorm() / double(s.samples.size());
}

}  // namespace cumsense
