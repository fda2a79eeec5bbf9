#pragma once

#include <vector>

#include "cumsense/cumulant_est.hpp"

namespace cumsense {

// 1-based flattening of a (i1, i2, i3) index triple over {1..d}^3:
// (i1-1)*d^2 + (i2-1)*d + i3. All mapping matrices below follow it.
Index vec_index(int i1, int i2, int i3, int d);

// An ordered list of lag pairs together with reverse lookup. "principal"
// enumerates 0 <= tau1 <= tau2 <= N-1 (N(N+1)/2 lags, tau1-major order);
// "hexagon" enumerates max(|t1|, |t2|, |t1-t2|) <= N-1 (3N^2-3N+1 lags,
// t1-major order). The principal set indexes one representative per symmetry
// orbit; the hexagon set indexes every lag a length-N block can realize.
struct LagIndexSet {
  int block_length = 0;
  std::vector<Lag> lags;

  static LagIndexSet principal(int block_length);
  static LagIndexSet hexagon(int block_length);

  Index size() const { return Index(lags.size()); }
  Index index_of(Lag t) const;  // -1 when t is not in the set

 private:
  std::vector<Index> lookup_;  // (2N-1)^2 table, -1 outside the set
};

// Selection-duplication matrix with exactly one unit entry per row, stored as
// the column index of that entry. Multiplication by a dense matrix therefore
// reduces to column gathering.
struct MappingMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<Index> col_of_row;

  Matrix dense() const;
};

// N^3 x N(N+1)/2 map from principal-lag values to the full vectorized
// third-order tensor: row vec(i1,i2,i3) picks the principal representative of
// lag (i2-i1, i3-i1).
MappingMatrix build_principal_expansion(int block_length);

// N^3 x (3N^2-3N+1) map using one column per hexagon lag instead; no symmetry
// is imposed, every realizable lag keeps its own unknown.
MappingMatrix build_hexagon_expansion(int block_length);

Vector expand(const Vector& compact, const MappingMatrix& map);

Vector compress_to_principal(const StationaryCumulant& c);
Vector compress_to_hexagon(const StationaryCumulant& c);

// Full vectorized tensor of third moments implied by a stationary cumulant:
// entry vec(i1,i2,i3) equals c(i2-i1, i3-i1).
CumulantVector third_order_vector(const StationaryCumulant& c);

}  // namespace cumsense
