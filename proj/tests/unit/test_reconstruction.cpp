#include "doctest.h"

#include <cmath>

#include "cumsense/common.hpp"
#include "cumsense/reconstruction.hpp"

using namespace cumsense;

namespace {

const MaModel kMa3{{1.0, 0.9, 0.385, -0.771}, MaModel::Driver::centered_exponential};

// Reference contraction: A(row(i1,i2,i3), col) = sum over tensor cells mapped
// to col of phi(i1,j1) phi(i2,j2) phi(i3,j3).
Matrix brute_force_system(const SamplingMatrix& phi, const MappingMatrix& map, int n) {
  const int m = int(phi.output_dim());
  Matrix a = Matrix::Zero(Index(m) * m * m, map.cols);
  for (int i1 = 1; i1 <= m; ++i1)
    for (int i2 = 1; i2 <= m; ++i2)
      for (int i3 = 1; i3 <= m; ++i3)
        for (int j1 = 1; j1 <= n; ++j1)
          for (int j2 = 1; j2 <= n; ++j2)
            for (int j3 = 1; j3 <= n; ++j3)
              a(vec_index(i1, i2, i3, m) - 1, map.col_of_row[size_t(vec_index(j1, j2, j3, n) - 1)]) +=
                  phi.entries(i1 - 1, j1 - 1) * phi.entries(i2 - 1, j2 - 1) *
                  phi.entries(i3 - 1, j3 - 1);
  return a;
}

}  // namespace

TEST_CASE("feasibility counting is exact") {
  const FeasibilityReport r = feasibility(20, 10);
  CHECK(r.unique_measurements == 220);  // C(12, 3)
  CHECK(r.principal_unknowns == 210);
  CHECK(r.hexagon_unknowns == 1141);
  CHECK(r.principal_feasible);
  CHECK_FALSE(r.hexagon_feasible);
  CHECK(r.min_ratio_estimate == doctest::Approx(std::cbrt(1200.0) / 20.0));

  CHECK_FALSE(feasibility(20, 9).principal_feasible);
  CHECK(feasibility(20, 19).hexagon_feasible);
  CHECK_FALSE(feasibility(20, 18).hexagon_feasible);  // C(20,3) = 1140 < 1141

  CHECK(min_feasible_output_dim(20, false) == 10);
  CHECK(min_feasible_output_dim(20, true) == 19);
}

TEST_CASE("compressed system equals the direct tensor contraction") {
  for (int n : {3, 4, 5}) {
    const int m = n - 1;
    const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(17, {std::uint64_t(n)}));
    for (const MappingMatrix& map :
         {build_principal_expansion(n), build_hexagon_expansion(n)}) {
      const Matrix fast = compressed_system_matrix(phi, map);
      const Matrix ref = brute_force_system(phi, map, n);
      CHECK((fast - ref).cwiseAbs().maxCoeff() <= 1e-10 * ref.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("rank of the compressed system follows the structural law") {
  // Columns for the widest lags (tau2 = N-1) are symmetrized products laced
  // with both endpoint measurement vectors, so they span at most M directions:
  // rank = min(C(M+2,3), N(N+1)/2 - (N - M)), whatever the seed.
  auto law = [](int n, int m) {
    const long long unique = (long long)m * (m + 1) * (m + 2) / 6;
    const long long cap = (long long)n * (n + 1) / 2 - (n - m);
    return std::min(unique, cap);
  };
  for (int seed : {1, 2, 3}) {
    for (int m : {4, 5, 6}) {
      const SamplingMatrix phi = gaussian_sampler(m, 6, derive_seed(seed, {9, std::uint64_t(m)}));
      const Matrix a = compressed_system_matrix(phi, build_principal_expansion(6));
      CHECK(numerical_rank(a) == law(6, m));
    }
    for (int m : {5, 7, 8}) {
      const SamplingMatrix phi = gaussian_sampler(m, 8, derive_seed(seed, {9, std::uint64_t(m)}));
      const Matrix a = compressed_system_matrix(phi, build_principal_expansion(8));
      CHECK(numerical_rank(a) == law(8, m));
    }
  }
}

TEST_CASE("oracle measurements reconstruct a short-memory cumulant exactly") {
  // The null directions concern only the widest lags, where an MA(3) cumulant
  // with N=20 vanishes, so minimum-norm least squares restores it exactly.
  const int n = 20, m = 12;
  const MappingMatrix map = build_principal_expansion(n);
  const Vector truth = compress_to_principal(analytic_ma_cumulant(kMa3, n));
  const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(1, {0xfe, 0}));
  const Matrix a = compressed_system_matrix(phi, map);
  CumulantVector measured(m);
  measured.values = a * truth;
  const ReconstructionResult rec = reconstruct_third_cumulant(measured, phi, map);
  CHECK(std::sqrt(mse(rec.values, truth)) <= 1e-8);
  CHECK(rec.residual_norm <= 1e-8 * measured.values.norm());
  CHECK(rec.runtime_ms > 0.0);
  CHECK_FALSE(rec.rank_ok);  // widest-lag directions stay undetermined
}

TEST_CASE("square sampling yields a fully determined system") {
  const int n = 8;
  const SamplingMatrix phi = gaussian_sampler(n, n, derive_seed(4, {0xfe, 1}));
  const MappingMatrix map = build_principal_expansion(n);
  const Vector truth =
      compress_to_principal(analytic_ma_cumulant(MaModel{{1.0, -0.6, 0.3}, kMa3.driver}, n));
  CumulantVector measured(n);
  measured.values = compressed_system_matrix(phi, map) * truth;
  const ReconstructionResult rec = reconstruct_third_cumulant(measured, phi, map);
  CHECK(rec.rank_ok);
  CHECK(std::sqrt(mse(rec.values, truth)) <= 1e-8);
}

TEST_CASE("severe undersampling is flagged but still answered") {
  const int n = 20, m = 6;
  const MappingMatrix map = build_principal_expansion(n);
  const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(2, {0xfe, 2}));
  CumulantVector measured(m);
  measured.values = Vector::Ones(m * m * m);
  const ReconstructionResult rec = reconstruct_third_cumulant(measured, phi, map);
  CHECK_FALSE(rec.rank_ok);
  CHECK(rec.values.size() == map.cols);
  CHECK(rec.values.allFinite());
}

TEST_CASE("identity sampling averages each symmetry orbit") {
  const int n = 3;
  const SparseRuler full{n, {0, 1, 2}, true};
  const SamplingMatrix phi = ruler_sampler(full);
  const MappingMatrix map = build_principal_expansion(n);
  CumulantVector measured(n);
  for (Index i = 0; i < measured.values.size(); ++i) measured.values(i) = double(i * i + 1);
  const ReconstructionResult rec = reconstruct_third_cumulant(measured, phi, map);
  for (Index col = 0; col < map.cols; ++col) {
    double sum = 0.0;
    int count = 0;
    for (Index row = 0; row < map.rows; ++row)
      if (map.col_of_row[size_t(row)] == col) {
        sum += measured.values(row);
        ++count;
      }
    CHECK(rec.values(col) == doctest::Approx(sum / count).epsilon(1e-10));
  }
}

TEST_CASE("filter cross cumulant of unit impulses is an indicator") {
  Vector e0 = Vector::Zero(4), e1 = Vector::Zero(4), e3 = Vector::Zero(4);
  e0(0) = 1.0;
  e1(1) = 1.0;
  e3(3) = 1.0;
  // sum_j v1[j] v2[j - m1] v3[j - m2] hits 1 only at the alignment offsets
  CHECK(filter_cross_cumulant(e0, e1, e3, -1, -3) == doctest::Approx(1.0));
  CHECK(filter_cross_cumulant(e0, e1, e3, 0, 0) == doctest::Approx(0.0));
  CHECK(filter_cross_cumulant(e1, e1, e1, 0, 0) == doctest::Approx(1.0));
  CHECK(filter_cross_cumulant(e1, e0, e3, 1, -2) == doctest::Approx(1.0));
}

TEST_CASE("coefficient blocks carry the documented zero columns") {
  const int n = 4, m = 3;
  const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(3, {0xfe, 3}));
  const BlockCirculantSystem sys = assemble_block_circulant(phi, 1);
  const Matrix& c01 = sys.block(0, 1);
  const Matrix& c10 = sys.block(1, 0);
  const Matrix& c11 = sys.block(1, 1);
  for (int r = 0; r < n; ++r) {
    CHECK(c01.col(r * n + 0).cwiseAbs().maxCoeff() == 0.0);  // 1-based columns j*N+1
    CHECK(c11.col(r * n + 0).cwiseAbs().maxCoeff() == 0.0);
  }
  for (int s = 0; s < n; ++s) {
    CHECK(c10.col(s).cwiseAbs().maxCoeff() == 0.0);  // first N columns
    CHECK(c11.col(s).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(sys.block(0, 0).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("single-branch identity sampling gives a scaled identity system") {
  SamplingMatrix phi;
  phi.entries = Matrix(1, 1);
  const double alpha = 1.7;
  phi.entries << alpha;
  const BlockCirculantSystem sys = assemble_block_circulant(phi, 1);
  const Matrix full = sys.materialize();
  CHECK(full.rows() == 9);
  CHECK(full.cols() == 9);
  const double a3 = alpha * alpha * alpha;
  CHECK((full - a3 * Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-12 * a3);
}

TEST_CASE("block circulant apply agrees with the materialized matrix") {
  const int n = 3, m = 2, L = 2;
  const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(6, {0xfe, 4}));
  const BlockCirculantSystem sys = assemble_block_circulant(phi, L);
  const Matrix full = sys.materialize();
  Vector x(full.cols());
  for (Index i = 0; i < x.size(); ++i) x(i) = std::cos(double(i) * 0.7) + 0.1;
  const Vector direct = sys.apply(x);
  CHECK((direct - full * x).norm() <= 1e-12 * (1.0 + direct.norm()));
}

TEST_CASE("frequency blocks diagonalize the system") {
  // F applied per block, the per-bin blocks, then the inverse transform must
  // reproduce a plain matrix product to working precision.
  const int n = 4, m = 3, L = 1;
  const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(8, {0xfe, 5}));
  const BlockCirculantSystem sys = assemble_block_circulant(phi, L);
  const int P = sys.period();
  const int in = n * n, out = m * m * m;
  Vector x(Index(P) * in);
  for (Index i = 0; i < x.size(); ++i) x(i) = std::sin(1.3 * double(i)) + 0.2;

  // forward transform per input coordinate across blocks
  CMatrix xf = CMatrix::Zero(in, P);
  for (int c = 0; c < in; ++c) {
    CVector series(P);
    for (int t = 0; t < P; ++t) series(t) = x(Index(t) * in + c);
    xf.row(c) = dft(series, false).transpose();
  }
  CMatrix yf = CMatrix::Zero(out, P);
  for (int l = 0; l < P; ++l) yf.col(l) = sys.frequency_block(l) * xf.col(l);
  Vector y = Vector::Zero(Index(P) * out);
  for (int r = 0; r < out; ++r) {
    CVector series(P);
    for (int t = 0; t < P; ++t) series(t) = yf(r, t);
    const CVector back = dft(series, true);
    for (int t = 0; t < P; ++t) y(Index(t) * out + r) = back(t).real();
  }
  CHECK((y - sys.apply(x)).norm() <= 1e-9 * (1.0 + y.norm()));
}

TEST_CASE("block lag stacking follows the declared layout") {
  const int n = 4, L = 1;
  const StationaryCumulant c3 = analytic_ma_cumulant(kMa3, (L + 1) * n);
  const Vector x = stack_block_lag_cumulants(c3, n, L);
  const int w = 2 * L + 1;
  CHECK(x.size() == Index(w * w) * n * n);
  for (int t = 0; t < w * w; ++t) {
    const Lag bl{L - t % w, L - t / w};
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        CHECK(x(Index(t) * n * n + r * n + s) ==
              doctest::Approx(c3.at({bl.tau1 * n + r, bl.tau2 * n + s})));
  }
}

TEST_CASE("frequency-domain reconstruction recovers stacked cumulants") {
  const int n = 4, m = 4, L = 1;
  const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(12, {0xfe, 6}));
  const BlockCirculantSystem sys = assemble_block_circulant(phi, L);
  const StationaryCumulant c3 = analytic_ma_cumulant(kMa3, (L + 1) * n);
  const Vector x = stack_block_lag_cumulants(c3, n, L);
  const Vector y = sys.apply(x);
  const ReconstructionResult rec = reconstruct_block_lags(y, sys);
  CHECK(rec.rank_ok);
  CHECK((rec.values - x).norm() <= 1e-8 * (1.0 + x.norm()));
  CHECK(rec.imag_norm <= 1e-9 * (1.0 + x.cwiseAbs().maxCoeff()));
  CHECK(rec.residual_norm <= 1e-8 * (1.0 + y.norm()));
}

TEST_CASE("underdetermined frequency bins are flagged") {
  const int n = 3, m = 2, L = 1;
  const SamplingMatrix phi = gaussian_sampler(m, n, derive_seed(13, {0xfe, 7}));
  const BlockCirculantSystem sys = assemble_block_circulant(phi, L);
  const Vector y = Vector::Ones(Index(sys.period()) * m * m * m);
  const ReconstructionResult rec = reconstruct_block_lags(y, sys);
  CHECK_FALSE(rec.rank_ok);  // 8 equations per bin cannot pin 9 unknowns
  CHECK(rec.values.allFinite());
}
