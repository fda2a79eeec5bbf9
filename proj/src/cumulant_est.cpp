#include "cumsense/cumulant_est.hpp"

#include <algorithm>
#include <cmath>

#include "cumsense/common.hpp"

namespace cumsense {
namespace {

// Subtracts the grand mean when it is statistically distinguishable from
// zero: |mean| > 3 * stddev / sqrt(count). Below 30 samples no offset is
// detectable at that confidence, so short inputs pass through unchanged.
Matrix maybe_center(const Matrix& samples) {
  const double n = double(samples.size());
  if (n < 30) return samples;
  const double mean = samples.mean();
  const double var = (samples.array() - mean).square().sum() / n;
  if (std::abs(mean) > 3.0 * std::sqrt(var / n)) return samples.array() - mean;
  return samples;
}

}  // namespace

std::array<Lag, 6> symmetry_images(Lag t) {
  const int a = t.tau1, b = t.tau2;
  return {Lag{a, b},         Lag{b, a},         Lag{-b, a - b},
          Lag{-a, b - a},    Lag{b - a, -a},    Lag{a - b, -b}};
}

Lag principal_image(Lag t) {
  std::array<int, 3> s{0, t.tau1, t.tau2};
  std::sort(s.begin(), s.end());
  return Lag{s[1] - s[0], s[2] - s[0]};
}

CumulantVector empirical_third_moment_vector(const BlockStream& s) {
  const int d = int(s.block_length());
  const Index K = s.block_count();
  const Matrix x = maybe_center(s.samples);
  CumulantVector out(d);

  // Accumulate only i <= j <= l, then scatter to all index permutations;
  // the result is exactly permutation invariant.
  const Index n_unique = Index(d) * (d + 1) * (d + 2) / 6;
  Vector acc = Vector::Zero(n_unique);
  for (Index k = 0; k < K; ++k) {
    const double* col = x.col(k).data();
    Index u = 0;
    for (int i = 0; i < d; ++i) {
      const double xi = col[i];
      for (int j = i; j < d; ++j) {
        const double xij = xi * col[j];
        for (int l = j; l < d; ++l) acc(u++) += xij * col[l];
      }
    }
  }
  acc /= double(K);

  Index u = 0;
  for (int i = 1; i <= d; ++i)
    for (int j = i; j <= d; ++j)
      for (int l = j; l <= d; ++l) {
        const double v = acc(u++);
        const std::array<std::array<int, 3>, 6> perms{
            {{i, j, l}, {i, l, j}, {j, i, l}, {j, l, i}, {l, i, j}, {l, j, i}}};
        for (const auto& p : perms) out.at(p[0], p[1], p[2]) = v;
      }
  return out;
}

StationaryCumulant empirical_stationary_cumulant(const BlockStream& s) {
  const int N = int(s.block_length());
  const Index K = s.block_count();
  const Matrix x = maybe_center(s.samples);
  StationaryCumulant raw(N);

  for (int t1 = 1 - N; t1 <= N - 1; ++t1)
    for (int t2 = t1 >= 0 ? t1 : 1 - N; t2 <= N - 1; ++t2) {
      // Only lags with t1 <= t2 are estimated directly; the orbit average
      // below reaches the rest through symmetry.
      if (!raw.in_hexagon({t1, t2}) || t2 < t1) continue;
      const int n_lo = std::max({0, -t1, -t2});
      const int n_hi = N - 1 - std::max({0, t1, t2});
      double acc = 0.0;
      for (Index k = 0; k < K; ++k) {
        const double* col = x.col(k).data();
        for (int n = n_lo; n <= n_hi; ++n) acc += col[n] * col[n + t1] * col[n + t2];
      }
      raw.set({t1, t2}, acc / (double(K) * double(n_hi - n_lo + 1)));
    }
  for (int t1 = 1 - N; t1 <= N - 1; ++t1)
    for (int t2 = 1 - N; t2 < t1; ++t2)
      if (raw.in_hexagon({t1, t2})) raw.set({t1, t2}, raw.at({t2, t1}));

  // Average each symmetry orbit over its distinct members, visiting every
  // orbit once through its principal representative, and store the one mean
  // in all members. The six-fold invariance is then exact, not approximate.
  StationaryCumulant out(N);
  for (int t1 = 0; t1 <= N - 1; ++t1)
    for (int t2 = t1; t2 <= N - 1; ++t2) {
      const auto orbit = symmetry_images({t1, t2});
      double sum = 0.0;
      int count = 0;
      for (int i = 0; i < 6; ++i) {
        bool seen = false;
        for (int j = 0; j < i; ++j) seen = seen || orbit[size_t(j)] == orbit[size_t(i)];
        if (seen) continue;
        sum += raw.at(orbit[size_t(i)]);
        ++count;
      }
      const double mean = sum / count;
      for (const Lag& member : orbit) out.set(member, mean);
    }
  return out;
}

StationaryCumulant analytic_ma_cumulant(const MaModel& m, int block_length) {
  require(block_length >= 1, "block length must be positive");
  require(!m.coefficients.empty(), "MA model needs at least one coefficient");
  const double g3 = driver_third_moment(m.driver);
  const int q = m.order();
  const auto h = [&](int n) {
    return n >= 0 && n <= q ? m.coefficients[size_t(n)] : 0.0;
  };
  StationaryCumulant out(block_length);
  const int N = block_length;
  // One evaluation per orbit, copied to all images, keeps the grid symmetric
  // to the last bit.
  for (int t1 = 0; t1 <= N - 1; ++t1)
    for (int t2 = t1; t2 <= N - 1; ++t2) {
      double acc = 0.0;
      for (int n = -q; n <= q; ++n) acc += h(n) * h(n + t1) * h(n + t2);
      for (const Lag& im : symmetry_images({t1, t2})) out.set(im, g3 * acc);
    }
  return out;
}

Vector ma_autocovariance(const std::vector<double>& h, int max_lag) {
  require(!h.empty(), "MA coefficients must be nonempty");
  require(max_lag >= 0, "max lag must be nonnegative");
  const int q = int(h.size()) - 1;
  Vector r = Vector::Zero(max_lag + 1);
  for (int t = 0; t <= max_lag; ++t)
    for (int n = 0; n + t <= q; ++n) r(t) += h[size_t(n)] * h[size_t(n + t)];
  return r;
}

double driver_third_moment(MaModel::Driver d) {
  return d == MaModel::Driver::centered_exponential ? 2.0 : 0.0;
}

double driver_fourth_cumulant(MaModel::Driver d) {
  return d == MaModel::Driver::centered_exponential ? 6.0 : 0.0;
}

double mse(const StationaryCumulant& estimate, const StationaryCumulant& truth) {
  require(estimate.block_length == truth.block_length, "mse: mismatched block lengths");
  const int N = estimate.block_length;
  double num = 0.0, denom = 0.0;
  for (int t1 = 1 - N; t1 <= N - 1; ++t1)
    for (int t2 = 1 - N; t2 <= N - 1; ++t2) {
      const Lag t{t1, t2};
      if (!estimate.in_hexagon(t)) continue;
      const double d = estimate.at(t) - truth.at(t);
      num += d * d;
      denom += truth.at(t) * truth.at(t);
    }
  require(denom > 0.0, "mse: reference has zero norm");
  return num / denom;
}

double mse(const Vector& estimate, const Vector& truth) {
  require(estimate.size() == truth.size() && truth.size() > 0,
          "mse: mismatched or empty vectors");
  const double denom = truth.squaredNorm();
  require(denom > 0.0, "mse: reference has zero norm");
  return (estimate - truth).squaredNorm() / denom;
}

}  // namespace cumsense
