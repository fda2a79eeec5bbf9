#pragma once

#include <array>

#include "cumsense/mapping.hpp"
#include "cumsense/sampler.hpp"

namespace cumsense {

// Counting check for recovering a length-N stationary third-order cumulant
// from the third moments of M-dimensional compressed blocks. An M-vector has
// C(M+2, 3) distinct third moments; the unknowns number N(N+1)/2 under full
// symmetry reduction and 3N^2-3N+1 when every hexagon lag stays free.
struct FeasibilityReport {
  int block_length = 0;
  int output_dim = 0;
  long long unique_measurements = 0;
  long long principal_unknowns = 0;
  long long hexagon_unknowns = 0;
  bool principal_feasible = false;
  bool hexagon_feasible = false;
  double min_ratio_estimate = 0.0;  // (3N^2)^(1/3) / N, the asymptotic floor on M/N
};

FeasibilityReport feasibility(int block_length, int output_dim);
int min_feasible_output_dim(int block_length, bool hexagon);

// A = (Phi (x) Phi (x) Phi) * E for an expansion map E, assembled column by
// column so the M^3 x N^3 Kronecker power never exists in memory.
Matrix compressed_system_matrix(const SamplingMatrix& phi, const MappingMatrix& map);

struct ReconstructionResult {
  Vector values;
  double residual_norm = 0.0;
  bool rank_ok = false;
  double condition = 0.0;
  double runtime_ms = 0.0;
  double imag_norm = 0.0;  // leakage into imaginary parts, frequency engine only
};

// Least-squares recovery of the compact cumulant values from the third
// moments of one compressed block stream. rank_ok reports whether the
// system determined every unknown of the map actually used.
ReconstructionResult reconstruct_third_cumulant(const CumulantVector& measured,
                                                const SamplingMatrix& phi,
                                                const MappingMatrix& map);

// Cross-cumulant of three length-N measurement filters. Filters are rows of
// the sampling matrix read as e[-j] = row[j]; the sum runs over the block.
double filter_cross_cumulant(const Vector& row1, const Vector& row2, const Vector& row3, int m1,
                             int m2);

// Relation between block-lag cross-cumulants of the measurements and the
// underlying process cumulant, laid out as a block-circulant system over
// P = (2L+1)^2 lag pairs. Row/column block t carries the lag pair
// (tau1, tau2) = (L - t mod (2L+1), L - t div (2L+1)); within a column block
// entry r*N+s holds the process cumulant at (tau1*N + r, tau2*N + s).
// Only four M^3 x N^2 coefficient blocks are distinct; block (t, u) equals
// coeff(a, b) when u - t = a + b(2L+1) mod P.
struct BlockCirculantSystem {
  int output_dim = 0;     // M
  int block_length = 0;   // N
  int max_block_lag = 0;  // L

  std::array<Matrix, 4> coeff;  // index a*2 + b

  int period() const { return (2 * max_block_lag + 1) * (2 * max_block_lag + 1); }
  const Matrix& block(int a, int b) const { return coeff[size_t(a * 2 + b)]; }
  Lag block_lag(int t) const {
    const int w = 2 * max_block_lag + 1;
    return {max_block_lag - t % w, max_block_lag - t / w};
  }

  Vector apply(const Vector& x) const;
  Matrix materialize() const;
  // DFT sandwich diagonal: coeff(0,0) + z*coeff(1,0) + z^(2L+1)*coeff(0,1)
  // + z^(2L+2)*coeff(1,1) at z = exp(+2*pi*i*l/P).
  CMatrix frequency_block(int l) const;
};

BlockCirculantSystem assemble_block_circulant(const SamplingMatrix& phi, int max_block_lag);

// Stacks process-cumulant values into the unknown layout of the system above.
// process_c3 must cover lags out to (L+1)*N - 1.
Vector stack_block_lag_cumulants(const StationaryCumulant& process_c3, int block_length,
                                 int max_block_lag);

// Solves the block-circulant system through its frequency decomposition: one
// complex least-squares problem per DFT bin, then an inverse transform.
// residual_norm is reported on the time-domain scale.
ReconstructionResult reconstruct_block_lags(const Vector& measured_lag_cumulants,
                                            const BlockCirculantSystem& sys);

}  // namespace cumsense
