#pragma once

#include <cstdint>
#include <vector>

#include "cumsense/signal_gen.hpp"

namespace cumsense {

// Marks on [0, length-1] whose pairwise differences cover every value in
// 1..length-1. minimal is true when the mark count is provably smallest.
struct SparseRuler {
  int length = 0;
  std::vector<int> marks;
  bool minimal = false;
};

bool ruler_covers(const SparseRuler& r);

// Exhaustive minimum-cardinality search (iterative deepening over the mark
// count, with counting and reflection pruning). Lengths above exact_limit get
// a covering construction of about 2*sqrt(length) marks flagged non-minimal.
SparseRuler solve_minimal_ruler(int length, int exact_limit = 60);

// Adds `extra` distinct marks drawn uniformly from the unused positions.
SparseRuler augment_ruler(const SparseRuler& r, int extra, std::uint64_t seed);

// M x N compression matrix applied blockwise. Gaussian matrices have i.i.d.
// standard normal entries; ruler matrices keep the rows of the identity
// selected by the marks.
struct SamplingMatrix {
  enum class Kind { gaussian, ruler };
  Kind kind = Kind::gaussian;
  Matrix entries;            // M x N
  std::vector<int> marks;    // populated for ruler kind

  Index output_dim() const { return entries.rows(); }
  Index input_dim() const { return entries.cols(); }
};

SamplingMatrix gaussian_sampler(int output_dim, int input_dim, std::uint64_t seed);
SamplingMatrix ruler_sampler(const SparseRuler& r);

BlockStream compress(const SamplingMatrix& phi, const BlockStream& s);

}  // namespace cumsense
