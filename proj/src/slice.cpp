#include "cumsense/slice.hpp"

#include <cmath>
#include <numbers>

#include "cumsense/common.hpp"

namespace cumsense {
namespace {

CumulantSlice make_slice(int q, int block_length) {
  CumulantSlice s;
  s.q = q;
  s.block_length = block_length;
  s.values = Vector::Zero(2 * block_length - 1);
  s.pair_counts.assign(size_t(2 * block_length - 1), 0);
  return s;
}

}  // namespace

CumulantSlice estimate_slice(const BlockStream& compressed, const SparseRuler& ruler, int q) {
  require(q >= 2 && q <= 4, "slice estimation supports q in {2, 3, 4}");
  require(ruler_covers(ruler), "slice estimation needs a covering ruler");
  require(compressed.block_length() == Index(ruler.marks.size()),
          "compressed block length must equal the ruler mark count");
  const int N = ruler.length;
  const int M = int(ruler.marks.size());
  const Index K = compressed.block_count();

  // Ordered pair lists per lag. Negative lags reuse the positive list with
  // the roles swapped, in the same order, so the q=2 estimate is exactly
  // even in tau.
  std::vector<std::vector<std::pair<int, int>>> pairs(size_t(2 * N - 1));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      const int tau = ruler.marks[size_t(j)] - ruler.marks[size_t(i)];
      if (tau >= 0) {
        pairs[size_t(tau + N - 1)].emplace_back(i, j);
        if (tau > 0) pairs[size_t(-tau + N - 1)].emplace_back(j, i);
      }
    }

  CumulantSlice out = make_slice(q, N);
  for (int t = 0; t < 2 * N - 1; ++t) {
    const auto& pl = pairs[size_t(t)];
    require(!pl.empty(), "ruler does not realize every lag");
    out.pair_counts[size_t(t)] = (long long)(pl.size());
    const double inv = 1.0 / double(pl.size());
    // The q=4 correction multiplies second moments averaged over the whole
    // record. Products of per-block averages would leave a bias that does not
    // shrink with K when samples within a block stay correlated at all lags,
    // as they do for harmonics.
    double a_total = 0.0, b_total = 0.0, c_total = 0.0;
    for (Index k = 0; k < K; ++k) {
      const double* y = compressed.samples.col(k).data();
      double a = 0.0, b = 0.0, c = 0.0;
      for (const auto& [i, j] : pl) {
        const double yi = y[i], yj = y[j];
        double p = yi;
        for (int e = 1; e < q; ++e) p *= yj;
        a += p;
        if (q == 4) {
          b += yi * yj;
          c += yj * yj;
        }
      }
      a_total += a * inv;
      b_total += b * inv;
      c_total += c * inv;
    }
    double value = a_total / double(K);
    if (q == 4) value -= 3.0 * (b_total / double(K)) * (c_total / double(K));
    out.values(t) = value;
  }
  return out;
}

CumulantSlice slice_of_cumulant(const StationaryCumulant& c) {
  const int N = c.block_length;
  CumulantSlice out = make_slice(3, N);
  for (int tau = 1 - N; tau <= N - 1; ++tau) out.values(tau + N - 1) = c.at({tau, tau});
  return out;
}

CumulantSlice analytic_harmonic_slice(const HarmonicModel& m, int q, int block_length) {
  require(q >= 2 && q <= 4, "analytic slice supports q in {2, 3, 4}");
  require(m.frequencies.size() == m.amplitudes.size(),
          "harmonic model: frequency and amplitude counts differ");
  CumulantSlice out = make_slice(q, block_length);
  if (q == 3) return out;  // odd cumulants of symmetric processes vanish
  for (int tau = 1 - block_length; tau <= block_length - 1; ++tau) {
    double acc = 0.0;
    for (size_t p = 0; p < m.frequencies.size(); ++p) {
      const double a = m.amplitudes[p];
      const double cosv = std::cos(2.0 * std::numbers::pi * m.frequencies[p] * tau);
      acc += q == 2 ? a * a / 2.0 * cosv : -3.0 / 8.0 * a * a * a * a * cosv;
    }
    out.values(tau + block_length - 1) = acc;
  }
  return out;
}

CumulantSlice analytic_ma_slice(const MaModel& m, int q, int block_length) {
  require(q >= 2 && q <= 4, "analytic slice supports q in {2, 3, 4}");
  require(!m.coefficients.empty(), "MA model needs at least one coefficient");
  const int ord = m.order();
  const auto h = [&](int n) { return n >= 0 && n <= ord ? m.coefficients[size_t(n)] : 0.0; };
  double scale = 1.0;  // driver cumulant of order q (variance 1 for both drivers)
  if (q == 3) scale = driver_third_moment(m.driver);
  if (q == 4) scale = driver_fourth_cumulant(m.driver);
  CumulantSlice out = make_slice(q, block_length);
  for (int tau = 1 - block_length; tau <= block_length - 1; ++tau) {
    double acc = 0.0;
    for (int n = -ord; n <= ord; ++n) {
      double p = h(n);
      for (int e = 1; e < q; ++e) p *= h(n + tau);
      acc += p;
    }
    out.values(tau + block_length - 1) = scale * acc;
  }
  return out;
}

}  // namespace cumsense
