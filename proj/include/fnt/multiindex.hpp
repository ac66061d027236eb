#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fnt/errors.hpp"

namespace fnt {

// Multi-indices are exponent vectors in N_0^m. Sets of them are kept in
// lexicographic order with the first coordinate most significant, so the last
// coordinate varies fastest and ranks are stable across all modules.

using MultiIndex = std::vector<int>;

// three-way comparison: negative if a < b, 0 if equal, positive if a > b
int lex_compare(const MultiIndex& a, const MultiIndex& b);
int lex_compare(std::span<const int> a, std::span<const int> b);

// Tube projections: row i (1-based) has one entry per prefix of length i-1,
// giving the number of children that prefix has one coordinate further down.
// Row m lists the tube lengths; summing a row gives the next prefix count.
struct TubeProjections {
  std::vector<std::vector<int>> rows;  // rows[i] = t_{i+1}, 0-based

  int dim() const { return static_cast<int>(rows.size()); }
  std::int64_t cardinality() const;  // sum of the last row
  std::int64_t norm() const;         // sum of every entry across rows
};

// total entry sum divided by |A|; in [1, m]
double carry_count(const TubeProjections& t);

// Fiber projections: row i gives |F_{i,beta}(A)| per prefix beta of length i-1.
struct FiberProjections {
  std::vector<std::vector<std::int64_t>> rows;
};

// Fiber-tube projections: level i holds, per prefix of length i-1, the tube
// projections of that fiber's tail set (dimension m-i+1).
struct FiberTubeProjections {
  std::vector<std::vector<TubeProjections>> levels;

  std::int64_t level_norm(int level0) const;  // sum of norms at one level
};

class DownwardClosedSet {
 public:
  // all alpha in {0..n}^m with ||alpha||_p <= n; p in {1,2} and p = infinity
  // are decided in exact integer arithmetic, other p > 0 in floating point
  // with a small relative slack toward inclusion
  static DownwardClosedSet lp_set(int m, int n, double p);

  // validates closedness under decrementing any single coordinate
  static DownwardClosedSet from_indices(int m, std::vector<MultiIndex> indices);

  // rebuilds the unique downward closed set with the given tube projections
  static DownwardClosedSet from_tubes(const TubeProjections& t);

  int dim() const { return m_; }
  std::int64_t size() const { return static_cast<std::int64_t>(flat_.size()) / m_; }

  std::span<const int> row(std::int64_t r0) const {  // 0-based row access
    return {flat_.data() + r0 * m_, static_cast<std::size_t>(m_)};
  }

  // ranks are 1-based
  MultiIndex index(std::int64_t rank) const;
  std::int64_t rank(const MultiIndex& alpha) const;
  bool contains(const MultiIndex& alpha) const;

  const std::vector<int>& max_degrees() const { return max_deg_; }
  int max_degree() const;
  std::int64_t degree_sum() const;
  double mean_degree() const;

  const std::vector<int>& flat() const { return flat_; }

 private:
  DownwardClosedSet(int m, std::vector<int> flat);

  int m_ = 0;
  std::vector<int> flat_;  // size() * m_ entries, lex sorted
  std::vector<int> max_deg_;
};

TubeProjections tube_projections(const DownwardClosedSet& a);
FiberProjections fibers_from_tubes(const TubeProjections& t);
FiberTubeProjections fiber_tubes_from_tubes(const TubeProjections& t);

// order-preserving rank map of a sub set into a super set, computed from tube
// encodings alone; image values are 1-based ranks in the super set
struct RankEmbedding {
  std::int64_t source_size = 0;
  std::int64_t target_size = 0;
  std::vector<std::int64_t> image;  // strictly increasing
};

RankEmbedding rank_embedding(const TubeProjections& sub, const TubeProjections& super);
RankEmbedding rank_embedding(const DownwardClosedSet& sub, const DownwardClosedSet& super);

// pushforward of a value list along a block-size list: one joined value per block
template <class T, class Join>
std::vector<T> block_pushforward(std::span<const T> values, std::span<const int> blocks,
                                 Join join, T unit) {
  std::int64_t total = 0;
  for (int b : blocks) {
    if (b < 0) throw ArgumentError("block_pushforward: negative block size");
    total += b;
  }
  if (total != static_cast<std::int64_t>(values.size()))
    throw ArgumentError("block_pushforward: block sizes do not cover the values");
  std::vector<T> out;
  out.reserve(blocks.size());
  std::size_t pos = 0;
  for (int b : blocks) {
    T acc = unit;
    for (int k = 0; k < b; ++k) acc = join(std::move(acc), values[pos++]);
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<std::int64_t> block_sums(std::span<const std::int64_t> values,
                                     std::span<const int> blocks);
std::vector<std::vector<int>> block_concat(std::span<const std::vector<int>> values,
                                           std::span<const int> blocks);
// componentwise row concatenation; every value inside a block must agree on row count
std::vector<TubeProjections> block_concat_rows(std::span<const TubeProjections> values,
                                               std::span<const int> blocks);

// text form: "m=<int>" then one line per row with space-separated entries
std::string tubes_to_text(const TubeProjections& t);
TubeProjections tubes_from_text(const std::string& text);

}  // namespace fnt
