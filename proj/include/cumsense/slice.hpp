#pragma once

#include "cumsense/cumulant_est.hpp"
#include "cumsense/sampler.hpp"

namespace cumsense {

// Diagonal cumulant slice c_q(tau, ..., tau) over tau in [1-N, N-1], plus the
// number of mark pairs that realized each lag.
struct CumulantSlice {
  int q = 2;
  int block_length = 0;
  Vector values;                       // indexed tau + N - 1
  std::vector<long long> pair_counts;  // same indexing; 0 for analytic slices

  double at(int tau) const { return values(tau + block_length - 1); }
};

// Estimates the order-q diagonal slice from ruler-compressed blocks. For each
// lag tau, every ordered mark pair (i, j) with m_j - m_i = tau contributes
// y_i * y_j^(q-1); pair averages are taken per block and blocks contribute
// equally. q=4 subtracts 3 * (record average of y_i y_j) * (record average of
// y_j^2), which cancels the Gaussian part.
CumulantSlice estimate_slice(const BlockStream& compressed, const SparseRuler& ruler, int q);

// Diagonal of a third-order cumulant grid: values(tau) = c(tau, tau).
CumulantSlice slice_of_cumulant(const StationaryCumulant& c);

// Population slices used as experiment ground truth. Harmonic: q=2 gives
// sum a^2/2 cos(2 pi w tau), q=3 vanishes, q=4 gives -3/8 sum a^4 cos(2 pi
// w tau). MA with unit-variance driver: sum_n h[n] h[n+tau]^(q-1) scaled by
// the driver cumulant of order q.
CumulantSlice analytic_harmonic_slice(const HarmonicModel& m, int q, int block_length);
CumulantSlice analytic_ma_slice(const MaModel& m, int q, int block_length);

}  // namespace cumsense
