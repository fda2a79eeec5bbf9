#include "cumsense/reconstruction.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "cumsense/common.hpp"
#include "cumsense/numerics.hpp"

namespace cumsense {
namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

FeasibilityReport feasibility(int block_length, int output_dim) {
  require(block_length >= 1 && output_dim >= 1, "feasibility: dimensions must be positive");
  const long long N = block_length, M = output_dim;
  FeasibilityReport rep;
  rep.block_length = block_length;
  rep.output_dim = output_dim;
  rep.unique_measurements = M * (M + 1) * (M + 2) / 6;
  rep.principal_unknowns = N * (N + 1) / 2;
  rep.hexagon_unknowns = 3 * N * N - 3 * N + 1;
  rep.principal_feasible = rep.unique_measurements >= rep.principal_unknowns;
  rep.hexagon_feasible = rep.unique_measurements >= rep.hexagon_unknowns;
  rep.min_ratio_estimate = std::cbrt(3.0 * double(N) * double(N)) / double(N);
  return rep;
}

int min_feasible_output_dim(int block_length, bool hexagon) {
  for (int m = 1;; ++m) {
    const FeasibilityReport rep = feasibility(block_length, m);
    if (hexagon ? rep.hexagon_feasible : rep.principal_feasible) return m;
  }
}

Matrix compressed_system_matrix(const SamplingMatrix& phi, const MappingMatrix& map) {
  const int M = int(phi.output_dim());
  const int N = int(phi.input_dim());
  require(map.rows == Index(N) * N * N, "system matrix: map rows must equal N^3");

  Matrix A = Matrix::Zero(Index(M) * M * M, map.cols);
  const double* const phi_data = phi.entries.data();  // column-major M x N
  for (Index r = 0; r < map.rows; ++r) {
    const int j1 = int(r / (Index(N) * N));
    const int j2 = int((r / N) % N);
    const int j3 = int(r % N);
    const double* const c1 = phi_data + Index(j1) * M;
    const double* const c2 = phi_data + Index(j2) * M;
    const double* const c3 = phi_data + Index(j3) * M;
    double* const out = A.col(map.col_of_row[size_t(r)]).data();
    Index idx = 0;
    for (int a = 0; a < M; ++a) {
      const double pa = c1[a];
      for (int b = 0; b < M; ++b) {
        const double pab = pa * c2[b];
        for (int c = 0; c < M; ++c) out[idx++] += pab * c3[c];
      }
    }
  }
  return A;
}

ReconstructionResult reconstruct_third_cumulant(const CumulantVector& measured,
                                                const SamplingMatrix& phi,
                                                const MappingMatrix& map) {
  require(measured.dim == int(phi.output_dim()),
          "reconstruction: measurement dimension must match sampler output");
  const auto t0 = std::chrono::steady_clock::now();
  const Matrix A = compressed_system_matrix(phi, map);
  const LeastSquaresSolution sol = solve_least_squares(A, measured.values);
  ReconstructionResult out;
  out.values = sol.x;
  out.residual_norm = sol.residual_norm;
  out.rank_ok = sol.rank == map.cols;
  out.condition = sol.condition;
  out.runtime_ms = elapsed_ms(t0);
  return out;
}

double filter_cross_cumulant(const Vector& row1, const Vector& row2, const Vector& row3, int m1,
                             int m2) {
  const Index n = row1.size();
  require(row2.size() == n && row3.size() == n, "cross-cumulant: filter lengths differ");
  double acc = 0.0;
  for (Index j = 0; j < n; ++j) {
    const Index j2 = j - m1, j3 = j - m2;
    if (j2 < 0 || j2 >= n || j3 < 0 || j3 >= n) continue;
    acc += row1(j) * row2(j2) * row3(j3);
  }
  return acc;
}

Vector BlockCirculantSystem::apply(const Vector& x) const {
  const Index M3 = Index(output_dim) * output_dim * output_dim;
  const Index N2 = Index(block_length) * block_length;
  const int P = period();
  require(x.size() == P * N2, "apply: unknown vector has wrong length");
  Vector y = Vector::Zero(P * M3);
  for (int t = 0; t < P; ++t)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int u = (t + a + b * (2 * max_block_lag + 1)) % P;
        y.segment(t * M3, M3) += block(a, b) * x.segment(u * N2, N2);
      }
  return y;
}

Matrix BlockCirculantSystem::materialize() const {
  const Index M3 = Index(output_dim) * output_dim * output_dim;
  const Index N2 = Index(block_length) * block_length;
  const int P = period();
  Matrix B = Matrix::Zero(P * M3, P * N2);
  for (int t = 0; t < P; ++t)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int u = (t + a + b * (2 * max_block_lag + 1)) % P;
        B.block(t * M3, u * N2, M3, N2) += block(a, b);
      }
  return B;
}

CMatrix BlockCirculantSystem::frequency_block(int l) const {
  const int P = period();
  require(l >= 0 && l < P, "frequency block: bin out of range");
  // apply() advances the block index, so bin l of the analysis transform is
  // scaled by the conjugate phase relative to an ordinary delay circulant.
  const double w = 2.0 * std::numbers::pi * double(l) / double(P);
  const auto z = [&](int k) { return std::complex<double>(std::cos(w * k), std::sin(w * k)); };
  const int stride = 2 * max_block_lag + 1;
  return block(0, 0).cast<std::complex<double>>() + z(1) * block(1, 0) +
         z(stride) * block(0, 1) + z(stride + 1) * block(1, 1);
}

BlockCirculantSystem assemble_block_circulant(const SamplingMatrix& phi, int max_block_lag) {
  require(max_block_lag >= 1, "block-circulant: max block lag must be at least 1");
  const int M = int(phi.output_dim());
  const int N = int(phi.input_dim());
  BlockCirculantSystem sys;
  sys.output_dim = M;
  sys.block_length = N;
  sys.max_block_lag = max_block_lag;

  const Index M3 = Index(M) * M * M;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Matrix& C = sys.coeff[size_t(a * 2 + b)];
      C.resize(M3, Index(N) * N);
      for (int i1 = 0; i1 < M; ++i1)
        for (int i2 = 0; i2 < M; ++i2)
          for (int i3 = 0; i3 < M; ++i3) {
            const Index row = Index(i1) * M * M + Index(i2) * M + i3;
            for (int r = 0; r < N; ++r)
              for (int s = 0; s < N; ++s)
                C(row, Index(r) * N + s) =
                    filter_cross_cumulant(phi.entries.row(i1), phi.entries.row(i2),
                                          phi.entries.row(i3), a * N - r, b * N - s);
          }
    }
  return sys;
}

Vector stack_block_lag_cumulants(const StationaryCumulant& process_c3, int block_length,
                                 int max_block_lag) {
  const int N = block_length, L = max_block_lag;
  require(process_c3.block_length >= (L + 1) * N,
          "stacking: process cumulant must cover lags out to (L+1)N - 1");
  const int P = (2 * L + 1) * (2 * L + 1);
  Vector x(Index(P) * N * N);
  for (int t = 0; t < P; ++t) {
    const int tau1 = L - t % (2 * L + 1);
    const int tau2 = L - t / (2 * L + 1);
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s)
        x(Index(t) * N * N + Index(r) * N + s) =
            process_c3.at({tau1 * N + r, tau2 * N + s});
  }
  return x;
}

ReconstructionResult reconstruct_block_lags(const Vector& measured_lag_cumulants,
                                            const BlockCirculantSystem& sys) {
  const Index M3 = Index(sys.output_dim) * sys.output_dim * sys.output_dim;
  const Index N2 = Index(sys.block_length) * sys.block_length;
  const int P = sys.period();
  require(measured_lag_cumulants.size() == P * M3,
          "reconstruction: measurement vector has wrong length");
  const auto t0 = std::chrono::steady_clock::now();

  // Forward DFT across the block index, one transform per output coordinate.
  CMatrix yhat(M3, P);
  for (Index j = 0; j < M3; ++j) {
    CVector tmp(P);
    for (int t = 0; t < P; ++t) tmp(t) = measured_lag_cumulants(Index(t) * M3 + j);
    const CVector f = dft(tmp, false);
    for (int l = 0; l < P; ++l) yhat(j, l) = f(l);
  }

  CMatrix xhat(N2, P);
  double res_sq = 0.0;
  bool rank_ok = true;
  double condition = 0.0;
  for (int l = 0; l < P; ++l) {
    const CMatrix Q = sys.frequency_block(l);
    const ComplexLeastSquaresSolution sol = solve_least_squares(Q, CVector(yhat.col(l)));
    xhat.col(l) = sol.x;
    res_sq += sol.residual_norm * sol.residual_norm;
    rank_ok = rank_ok && sol.rank == N2;
    condition = std::max(condition, sol.condition);
  }

  ReconstructionResult out;
  out.values.resize(P * N2);
  double imag_max = 0.0;
  for (Index j = 0; j < N2; ++j) {
    CVector tmp(P);
    for (int l = 0; l < P; ++l) tmp(l) = xhat(j, l);
    const CVector g = dft(tmp, true);
    for (int t = 0; t < P; ++t) {
      out.values(Index(t) * N2 + j) = g(t).real();
      imag_max = std::max(imag_max, std::abs(g(t).imag()));
    }
  }
  // Unnormalized forward DFT scales norms by sqrt(P); undo for reporting.
  out.residual_norm = std::sqrt(res_sq / P);
  out.rank_ok = rank_ok;
  out.condition = condition;
  out.imag_norm = imag_max;
  out.runtime_ms = elapsed_ms(t0);
  return out;
}

}  // namespace cumsense
