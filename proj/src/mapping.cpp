#include "cumsense/mapping.hpp"

#include "cumsense/common.hpp"

namespace cumsense {

Index vec_index(int i1, int i2, int i3, int d) {
  require(d >= 1, "vec_index: dimension must be positive");
  require(i1 >= 1 && i1 <= d && i2 >= 1 && i2 <= d && i3 >= 1 && i3 <= d,
          "vec_index: indices must lie in 1..d");
  return Index(i1 - 1) * d * d + Index(i2 - 1) * d + i3;
}

LagIndexSet LagIndexSet::principal(int block_length) {
  require(block_length >= 1, "lag set: block length must be positive");
  const int N = block_length;
  LagIndexSet s;
  s.block_length = N;
  s.lookup_.assign(size_t(2 * N - 1) * size_t(2 * N - 1), -1);
  for (int u = 0; u <= N - 1; ++u)
    for (int v = u; v <= N - 1; ++v) {
      s.lookup_[size_t(u + N - 1) * size_t(2 * N - 1) + size_t(v + N - 1)] = s.size();
      s.lags.push_back({u, v});
    }
  return s;
}

LagIndexSet LagIndexSet::hexagon(int block_length) {
  require(block_length >= 1, "lag set: block length must be positive");
  const int N = block_length;
  LagIndexSet s;
  s.block_length = N;
  s.lookup_.assign(size_t(2 * N - 1) * size_t(2 * N - 1), -1);
  for (int t1 = 1 - N; t1 <= N - 1; ++t1) {
    const int lo = std::max(1 - N, t1 - (N - 1));
    const int hi = std::min(N - 1, t1 + (N - 1));
    for (int t2 = lo; t2 <= hi; ++t2) {
      s.lookup_[size_t(t1 + N - 1) * size_t(2 * N - 1) + size_t(t2 + N - 1)] = s.size();
      s.lags.push_back({t1, t2});
    }
  }
  return s;
}

Index LagIndexSet::index_of(Lag t) const {
  const int N = block_length;
  if (std::abs(t.tau1) > N - 1 || std::abs(t.tau2) > N - 1) return -1;
  return lookup_[size_t(t.tau1 + N - 1) * size_t(2 * N - 1) + size_t(t.tau2 + N - 1)];
}

Matrix MappingMatrix::dense() const {
  Matrix m = Matrix::Zero(rows, cols);
  for (Index r = 0; r < rows; ++r) m(r, col_of_row[size_t(r)]) = 1.0;
  return m;
}

MappingMatrix build_principal_expansion(int block_length) {
  require(block_length >= 1, "expansion: block length must be positive");
  const int N = block_length;
  const LagIndexSet principal = LagIndexSet::principal(N);
  MappingMatrix P;
  P.rows = Index(N) * N * N;
  P.cols = principal.size();
  P.col_of_row.assign(size_t(P.rows), -1);

  const auto place = [&](Index row_1b, Index col) {
    Index& slot = P.col_of_row[size_t(row_1b - 1)];
    require(slot == -1 || slot == col, "expansion: conflicting row assignment");
    slot = col;
  };

  // For each principal lag (u, v), the rows whose index triple realizes that
  // orbit are the six arrangements of {w, w+u, w+v} as w slides over the
  // block. Together they tile all N^3 rows.
  for (int u = 0; u <= N - 1; ++u)
    for (int v = u; v <= N - 1; ++v) {
      const Index col = principal.index_of({u, v});
      for (int w = 1; w <= N - v; ++w) {
        const Index n2 = Index(N) * N, n1 = N;
        place(Index(w - 1) * n2 + Index(w + v - 1) * n1 + (w + u), col);
        place(Index(w - 1) * n2 + Index(w + u - 1) * n1 + (w + v), col);
        place(Index(w + v - 1) * n2 + Index(w - 1) * n1 + (w + u), col);
        place(Index(w + v - 1) * n2 + Index(w + u - 1) * n1 + w, col);
        place(Index(w + u - 1) * n2 + Index(w - 1) * n1 + (w + v), col);
        place(Index(w + u - 1) * n2 + Index(w + v - 1) * n1 + w, col);
      }
    }
  for (Index r = 0; r < P.rows; ++r)
    require(P.col_of_row[size_t(r)] >= 0, "expansion: uncovered row");
  return P;
}

MappingMatrix build_hexagon_expansion(int block_length) {
  require(block_length >= 1, "expansion: block length must be positive");
  const int N = block_length;
  const LagIndexSet hexagon = LagIndexSet::hexagon(N);
  MappingMatrix T;
  T.rows = Index(N) * N * N;
  T.cols = hexagon.size();
  T.col_of_row.assign(size_t(T.rows), -1);
  for (int i1 = 1; i1 <= N; ++i1)
    for (int i2 = 1; i2 <= N; ++i2)
      for (int i3 = 1; i3 <= N; ++i3)
        T.col_of_row[size_t(vec_index(i1, i2, i3, N) - 1)] =
            hexagon.index_of({i2 - i1, i3 - i1});
  return T;
}

Vector expand(const Vector& compact, const MappingMatrix& map) {
  require(compact.size() == map.cols, "expand: value count must match map columns");
  Vector out(map.rows);
  for (Index r = 0; r < map.rows; ++r) out(r) = compact(map.col_of_row[size_t(r)]);
  return out;
}

Vector compress_to_principal(const StationaryCumulant& c) {
  const LagIndexSet s = LagIndexSet::principal(c.block_length);
  Vector out(s.size());
  for (Index i = 0; i < s.size(); ++i) out(i) = c.at(s.lags[size_t(i)]);
  return out;
}

Vector compress_to_hexagon(const StationaryCumulant& c) {
  const LagIndexSet s = LagIndexSet::hexagon(c.block_length);
  Vector out(s.size());
  for (Index i = 0; i < s.size(); ++i) out(i) = c.at(s.lags[size_t(i)]);
  return out;
}

CumulantVector third_order_vector(const StationaryCumulant& c) {
  const int N = c.block_length;
  CumulantVector out(N);
  for (int i1 = 1; i1 <= N; ++i1)
    for (int i2 = 1; i2 <= N; ++i2)
      for (int i3 = 1; i3 <= N; ++i3) out.at(i1, i2, i3) = c.at({i2 - i1, i3 - i1});
  return out;
}

}  // namespace cumsense
