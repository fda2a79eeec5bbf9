#include "doctest.h"

#include <cmath>

#include "cumsense/common.hpp"
#include "cumsense/music.hpp"

using namespace cumsense;

namespace {

const HarmonicModel kTwoTones{{0.1, 0.2}, {1.0, 1.0}};

double nearest_peak(const PseudoSpectrum& ps, double w) {
  REQUIRE(!ps.detected_peaks.empty());
  double best = ps.detected_peaks.front();
  for (double p : ps.detected_peaks)
    if (std::abs(p - w) < std::abs(best - w)) best = p;
  return best;
}

}  // namespace

TEST_CASE("pseudospectrum grid and values are well formed") {
  const PseudoSpectrum ps = music(analytic_harmonic_slice(kTwoTones, 2, 16), 2);
  CHECK(ps.grid.size() == 2048);
  CHECK(ps.values.size() == 2048);
  CHECK(ps.grid(0) == 0.0);
  CHECK(ps.grid(ps.grid.size() - 1) == doctest::Approx(0.5));
  for (Index i = 1; i < ps.grid.size(); ++i) CHECK(ps.grid(i) > ps.grid(i - 1));
  CHECK(ps.values.allFinite());
  CHECK(ps.values.minCoeff() >= 0.0);
  for (size_t i = 1; i < ps.detected_peaks.size(); ++i)
    CHECK(ps.detected_peaks[i] > ps.detected_peaks[i - 1]);
}

TEST_CASE("exact covariance slices localize both tones") {
  // On a noise-free slice the noise subspace annihilates the steering vectors
  // exactly, so peaks land on the grid points closest to the true lines.
  for (int q : {2, 4}) {
    const PseudoSpectrum ps = music(analytic_harmonic_slice(kTwoTones, q, 16), 2);
    CHECK(std::abs(nearest_peak(ps, 0.1) - 0.1) < 5e-4);
    CHECK(std::abs(nearest_peak(ps, 0.2) - 0.2) < 5e-4);
  }
}

TEST_CASE("a single tone is localized from a fourth-order slice") {
  const HarmonicModel one{{0.25}, {1.3}};
  const PseudoSpectrum ps = music(analytic_harmonic_slice(one, 4, 16), 1);
  CHECK(std::abs(nearest_peak(ps, 0.25) - 0.25) < 5e-4);
}

TEST_CASE("peak locations ignore the slice scale") {
  const CumulantSlice base = analytic_harmonic_slice(kTwoTones, 2, 16);
  CumulantSlice scaled = base;
  scaled.values *= 7.25;
  const PseudoSpectrum a = music(base, 2);
  const PseudoSpectrum b = music(scaled, 2);
  REQUIRE(a.detected_peaks.size() == b.detected_peaks.size());
  for (size_t i = 0; i < a.detected_peaks.size(); ++i)
    CHECK(a.detected_peaks[i] == b.detected_peaks[i]);
}

TEST_CASE("estimated slices give peaks near the true lines") {
  const int n = 16;
  const SparseRuler full{n, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, true};
  const BlockStream y = generate_harmonic_blocks(kTwoTones, n, 4096, derive_seed(11, {0x77}));
  for (int q : {2, 4}) {
    const PseudoSpectrum ps = music(estimate_slice(y, full, q), 2);
    CHECK(std::abs(nearest_peak(ps, 0.1) - 0.1) < 5e-3);
    CHECK(std::abs(nearest_peak(ps, 0.2) - 0.2) < 5e-3);
  }
}

TEST_CASE("music validates its arguments") {
  const CumulantSlice s = analytic_harmonic_slice(kTwoTones, 2, 16);
  CHECK_THROWS_AS(music(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(music(s, 2, 17), std::invalid_argument);  // more lags than the slice has
  CHECK_THROWS_AS(music(s, 2, 4), std::invalid_argument);   // order must exceed 2 * harmonics
  CHECK_THROWS_AS(music(s, 2, 12, 8), std::invalid_argument);
  CHECK_NOTHROW(music(s, 2, 16));
}
