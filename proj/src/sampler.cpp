#include "cumsense/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cumsense/common.hpp"

namespace cumsense {
namespace {

// Depth-first search for a covering ruler with exactly `target` marks.
// Marks are placed in increasing order; 0 is fixed and length-1 must be the
// last mark. State tracks how many of the 1..length-1 differences are
// already covered.
struct RulerSearch {
  int length;
  int target;
  std::vector<int> marks;
  std::vector<int> cover_count;  // per difference
  int covered = 0;

  explicit RulerSearch(int n, int t) : length(n), target(t), cover_count(size_t(n), 0) {
    push(0);
  }

  void push(int pos) {
    for (int m : marks) {
      if (++cover_count[size_t(pos - m)] == 1) ++covered;
    }
    marks.push_back(pos);
  }
  void pop() {
    const int pos = marks.back();
    marks.pop_back();
    for (int m : marks) {
      if (--cover_count[size_t(pos - m)] == 0) --covered;
    }
  }

  bool solve() {
    const int placed = int(marks.size());
    if (placed == target) return covered == length - 1 && marks.back() == length - 1;
    const int slots = target - placed;
    // Each remaining mark can cover at most (marks placed so far) new
    // differences, so cap the total still reachable.
    const int capacity = slots * placed + slots * (slots - 1) / 2;
    if (covered + capacity < length - 1) return false;

    // A ruler and its reflection cover the same differences; keep only the
    // orientation whose first gap is no larger than its last gap by refusing
    // interior marks inside the final stretch of that size.
    const int first_gap = placed >= 2 ? marks[1] : length - 1;
    const int last_allowed_interior = length - 1 - (placed >= 2 ? first_gap : 0);

    const int lo = slots == 1 ? length - 1 : marks.back() + 1;
    const int hi = slots == 1 ? length - 1 : length - slots;
    for (int pos = lo; pos <= hi; ++pos) {
      if (pos != length - 1 && pos > last_allowed_interior) continue;
      push(pos);
      if (solve()) return true;
      pop();
    }
    return false;
  }
};

SparseRuler covering_fallback(int length) {
  SparseRuler r;
  r.length = length;
  r.minimal = false;
  const int a = std::max(1, int(std::ceil(std::sqrt(double(length - 1)))));
  std::vector<bool> used(size_t(length), false);
  for (int i = 0; i <= a && i < length; ++i) used[size_t(i)] = true;
  for (int j = 2 * a; j < length; j += a) used[size_t(j)] = true;
  used[size_t(length - 1)] = true;
  for (int i = 0; i < length; ++i)
    if (used[size_t(i)]) r.marks.push_back(i);
  // Greedy repair: if any difference is still uncovered, add whichever mark
  // covers the most remaining gaps until none are left.
  while (!ruler_covers(r)) {
    std::vector<bool> covered(size_t(length), false);
    for (size_t i = 0; i < r.marks.size(); ++i)
      for (size_t j = i; j < r.marks.size(); ++j)
        covered[size_t(r.marks[j] - r.marks[i])] = true;
    int best_pos = -1, best_gain = -1;
    for (int pos = 1; pos < length - 1; ++pos) {
      if (used[size_t(pos)]) continue;
      int gain = 0;
      for (int m : r.marks)
        if (!covered[size_t(std::abs(pos - m))]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best_pos = pos;
      }
    }
    require(best_pos >= 0, "ruler fallback: repair failed");
    used[size_t(best_pos)] = true;
    r.marks.insert(std::upper_bound(r.marks.begin(), r.marks.end(), best_pos), best_pos);
  }
  return r;
}

}  // namespace

bool ruler_covers(const SparseRuler& r) {
  if (r.length < 1 || r.marks.empty()) return false;
  for (int m : r.marks)
    if (m < 0 || m >= r.length) return false;
  std::vector<bool> covered(size_t(r.length), false);
  for (size_t i = 0; i < r.marks.size(); ++i)
    for (size_t j = i; j < r.marks.size(); ++j)
      covered[size_t(std::abs(r.marks[j] - r.marks[i]))] = true;
  for (int d = 0; d < r.length; ++d)
    if (!covered[size_t(d)]) return false;
  return true;
}

SparseRuler solve_minimal_ruler(int length, int exact_limit) {
  require(length >= 1, "ruler length must be positive");
  if (length == 1) return SparseRuler{1, {0}, true};
  if (length > exact_limit) return covering_fallback(length);

  // Counting bound: t marks yield at most t(t-1)/2 distinct differences.
  int t = 2;
  while (t * (t - 1) / 2 < length - 1) ++t;
  for (;; ++t) {
    RulerSearch search(length, t);
    if (search.solve()) {
      SparseRuler r;
      r.length = length;
      r.marks = search.marks;
      r.minimal = true;
      return r;
    }
  }
}

SparseRuler augment_ruler(const SparseRuler& r, int extra, std::uint64_t seed) {
  require(ruler_covers(r), "augment: input must be a covering ruler");
  require(extra >= 0, "augment: extra mark count must be nonnegative");
  std::vector<int> unused;
  std::vector<bool> used(size_t(r.length), false);
  for (int m : r.marks) used[size_t(m)] = true;
  for (int p = 0; p < r.length; ++p)
    if (!used[size_t(p)]) unused.push_back(p);
  require(extra <= int(unused.size()), "augment: not enough unused positions");

  std::mt19937_64 rng(derive_seed(seed, {0x72756cULL}));
  std::vector<int> picked;
  std::sample(unused.begin(), unused.end(), std::back_inserter(picked), size_t(extra), rng);

  SparseRuler out;
  out.length = r.length;
  out.minimal = extra == 0 && r.minimal;
  out.marks = r.marks;
  out.marks.insert(out.marks.end(), picked.begin(), picked.end());
  std::sort(out.marks.begin(), out.marks.end());
  return out;
}

SamplingMatrix gaussian_sampler(int output_dim, int input_dim, std::uint64_t seed) {
  require(output_dim >= 1 && input_dim >= 1, "sampler dimensions must be positive");
  SamplingMatrix phi;
  phi.kind = SamplingMatrix::Kind::gaussian;
  phi.entries.resize(output_dim, input_dim);
  std::mt19937_64 rng(derive_seed(seed, {0x706869ULL}));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < output_dim; ++i)
    for (int j = 0; j < input_dim; ++j) phi.entries(i, j) = g(rng);
  return phi;
}

SamplingMatrix ruler_sampler(const SparseRuler& r) {
  require(ruler_covers(r), "ruler sampler: marks must form a covering ruler");
  SamplingMatrix phi;
  phi.kind = SamplingMatrix::Kind::ruler;
  phi.marks = r.marks;
  phi.entries = Matrix::Zero(Index(r.marks.size()), r.length);
  for (size_t i = 0; i < r.marks.size(); ++i) phi.entries(Index(i), r.marks[i]) = 1.0;
  return phi;
}

BlockStream compress(const SamplingMatrix& phi, const BlockStream& s) {
  require(phi.input_dim() == s.block_length(),
          "compress: sampler input length must match block length");
  BlockStream out;
  out.samples = phi.entries * s.samples;
  return out;
}

}  // namespace cumsense
