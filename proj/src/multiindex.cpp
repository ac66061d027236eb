#include "fnt/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace fnt {

namespace {

std::string index_to_string(std::span<const int> a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  s += ")";
  return s;
}

// binary search for a row in a lex-sorted flat array; -1 if absent
std::int64_t find_row(const std::vector<int>& flat, int m, std::span<const int> target) {
  std::int64_t lo = 0, hi = static_cast<std::int64_t>(flat.size()) / m;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    std::span<const int> row{flat.data() + mid * m, static_cast<std::size_t>(m)};
    if (lex_compare(row, target) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < static_cast<std::int64_t>(flat.size()) / m) {
    std::span<const int> row{flat.data() + lo * m, static_cast<std::size_t>(m)};
    if (lex_compare(row, target) == 0) return lo;
  }
  return -1;
}

// every single-coordinate decrement must stay inside the set
void validate_downward_closed(const std::vector<int>& flat, int m) {
  const std::int64_t n = static_cast<std::int64_t>(flat.size()) / m;
  std::vector<int> pred(m);
  for (std::int64_t r = 0; r < n; ++r) {
    const int* a = flat.data() + r * m;
    for (int i = 0; i < m; ++i) {
      if (a[i] == 0) continue;
      pred.assign(a, a + m);
      pred[i] -= 1;
      if (find_row(flat, m, pred) < 0)
        throw ValidationError("set is not downward closed: " +
                              index_to_string({a, static_cast<std::size_t>(m)}) +
                              " present but " + index_to_string(pred) +
                              " missing (axis " + std::to_string(i + 1) + ")");
    }
  }
}

void validate_tubes(const TubeProjections& t) {
  const int m = t.dim();
  if (m < 1) throw ValidationError("tube projections: no rows");
  if (t.rows[0].size() != 1)
    throw ValidationError("tube projections: first row must have exactly one entry");
  for (int i = 0; i < m; ++i) {
    std::int64_t sum = 0;
    for (int v : t.rows[i]) {
      if (v < 1) throw ValidationError("tube projections: entries must be positive");
      sum += v;
    }
    if (i + 1 < m && sum != static_cast<std::int64_t>(t.rows[i + 1].size()))
      throw ValidationError("tube projections: row " + std::to_string(i + 2) +
                            " length does not match the sum of row " + std::to_string(i + 1));
  }
}

}  // namespace

int lex_compare(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ArgumentError("lex_compare: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int lex_compare(const MultiIndex& a, const MultiIndex& b) {
  return lex_compare(std::span<const int>{a}, std::span<const int>{b});
}

std::int64_t TubeProjections::cardinality() const {
  if (rows.empty()) return 0;
  std::int64_t s = 0;
  for (int v : rows.back()) s += v;
  return s;
}

std::int64_t TubeProjections::norm() const {
  std::int64_t s = 0;
  for (const auto& row : rows)
    for (int v : row) s += v;
  return s;
}

double carry_count(const TubeProjections& t) {
  const std::int64_t card = t.cardinality();
  if (card <= 0) throw ArgumentError("carry_count: empty encoding");
  return static_cast<double>(t.norm()) / static_cast<double>(card);
}

std::int64_t FiberTubeProjections::level_norm(int level0) const {
  std::int64_t s = 0;
  for (const auto& t : levels.at(static_cast<std::size_t>(level0))) s += t.norm();
  return s;
}

DownwardClosedSet::DownwardClosedSet(int m, std::vector<int> flat)
    : m_(m), flat_(std::move(flat)), max_deg_(m, 0) {
  const std::int64_t n = size();
  for (std::int64_t r = 0; r < n; ++r)
    for (int i = 0; i < m_; ++i) max_deg_[i] = std::max(max_deg_[i], flat_[r * m_ + i]);
}

DownwardClosedSet DownwardClosedSet::lp_set(int m, int n, double p) {
  if (m < 1) throw ArgumentError("lp_set: dimension must be positive");
  if (n < 0) throw ArgumentError("lp_set: degree must be non-negative");
  if (!(p > 0.0)) throw ArgumentError("lp_set: p must be positive (or infinity)");

  std::vector<int> flat;
  std::vector<int> cur(m, 0);
  const bool inf = std::isinf(p);
  const bool p1 = (p == 1.0);
  const bool p2 = (p == 2.0);

  // precomputed v^p for the general case; slack leans toward inclusion
  std::vector<double> pw;
  double bound = 0.0;
  if (!inf && !p1 && !p2) {
    pw.resize(static_cast<std::size_t>(n) + 1);
    for (int v = 0; v <= n; ++v) pw[static_cast<std::size_t>(v)] = std::pow(static_cast<double>(v), p);
    bound = std::pow(static_cast<double>(n), p) *
            (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
  }

  const std::int64_t in1 = n;
  const std::int64_t in2 = static_cast<std::int64_t>(n) * n;

  auto rec = [&](auto&& self, int axis, std::int64_t isum, double fsum) -> void {
    if (axis == m) {
      flat.insert(flat.end(), cur.begin(), cur.end());
      return;
    }
    for (int v = 0; v <= n; ++v) {
      std::int64_t is = isum;
      double fs = fsum;
      bool ok;
      if (inf) {
        ok = true;
      } else if (p1) {
        is += v;
        ok = is <= in1;
      } else if (p2) {
        is += static_cast<std::int64_t>(v) * v;
        ok = is <= in2;
      } else {
        fs += pw[static_cast<std::size_t>(v)];
        ok = fs <= bound;
      }
      if (!ok) break;  // terms grow with v, nothing further fits
      cur[axis] = v;
      self(self, axis + 1, is, fs);
    }
    cur[axis] = 0;
  };
  rec(rec, 0, 0, 0.0);
  return DownwardClosedSet(m, std::move(flat));
}

DownwardClosedSet DownwardClosedSet::from_indices(int m, std::vector<MultiIndex> indices) {
  if (m < 1) throw ArgumentError("from_indices: dimension must be positive");
  if (indices.empty()) throw ArgumentError("from_indices: empty set");
  for (const auto& a : indices) {
    if (static_cast<int>(a.size()) != m)
      throw ArgumentError("from_indices: index dimension mismatch");
    for (int v : a)
      if (v < 0) throw ArgumentError("from_indices: negative entry in " + index_to_string(a));
  }
  std::sort(indices.begin(), indices.end(),
            [](const MultiIndex& a, const MultiIndex& b) { return lex_compare(a, b) < 0; });
  for (std::size_t r = 1; r < indices.size(); ++r)
    if (lex_compare(indices[r - 1], indices[r]) == 0)
      throw ArgumentError("from_indices: duplicate index " + index_to_string(indices[r]));

  std::vector<int> flat;
  flat.reserve(indices.size() * static_cast<std::size_t>(m));
  for (const auto& a : indices) flat.insert(flat.end(), a.begin(), a.end());
  validate_downward_closed(flat, m);
  return DownwardClosedSet(m, std::move(flat));
}

DownwardClosedSet DownwardClosedSet::from_tubes(const TubeProjections& t) {
  validate_tubes(t);
  const int m = t.dim();

  // child ranges per level via running offsets, then a depth-first rebuild
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(t.cardinality()) * static_cast<std::size_t>(m));
  std::vector<int> cur(m, 0);
  std::vector<std::int64_t> next_child(m, 0);  // next unvisited node per depth

  auto walk = [&](auto&& self, int depth, std::int64_t node) -> void {
    const int count = t.rows[static_cast<std::size_t>(depth)][static_cast<std::size_t>(node)];
    if (depth == m - 1) {
      for (int v = 0; v < count; ++v) {
        cur[depth] = v;
        flat.insert(flat.end(), cur.begin(), cur.end());
      }
      return;
    }
    for (int v = 0; v < count; ++v) {
      cur[depth] = v;
      const std::int64_t child = next_child[static_cast<std::size_t>(depth) + 1]++;
      self(self, depth + 1, child);
    }
  };
  walk(walk, 0, 0);
  validate_downward_closed(flat, m);
  return DownwardClosedSet(m, std::move(flat));
}

MultiIndex DownwardClosedSet::index(std::int64_t rank) const {
  if (rank < 1 || rank > size())
    throw ArgumentError("index: rank " + std::to_string(rank) + " out of range 1.." +
                        std::to_string(size()));
  auto r = row(rank - 1);
  return MultiIndex(r.begin(), r.end());
}

std::int64_t DownwardClosedSet::rank(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != m_) throw ArgumentError("rank: dimension mismatch");
  const std::int64_t r0 = find_row(flat_, m_, alpha);
  if (r0 < 0) throw ArgumentError("rank: index " + index_to_string(alpha) + " not in set");
  return r0 + 1;
}

bool DownwardClosedSet::contains(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != m_) throw ArgumentError("contains: dimension mismatch");
  for (int v : alpha)
    if (v < 0) return false;
  return find_row(flat_, m_, alpha) >= 0;
}

int DownwardClosedSet::max_degree() const {
  int n = 0;
  for (int v : max_deg_) n = std::max(n, v);
  return n;
}

std::int64_t DownwardClosedSet::degree_sum() const {
  std::int64_t s = 0;
  for (int v : max_deg_) s += v;
  return s;
}

double DownwardClosedSet::mean_degree() const {
  return static_cast<double>(degree_sum()) / static_cast<double>(m_);
}

TubeProjections tube_projections(const DownwardClosedSet& a) {
  const int m = a.dim();
  TubeProjections t;
  t.rows.resize(static_cast<std::size_t>(m));

  // carry detection: k tracks, per axis, how many values the current run has
  // consumed; a mismatch flushes the run and resets the deeper counters
  std::vector<int> k(static_cast<std::size_t>(m), 1);
  k[static_cast<std::size_t>(m) - 1] = 0;
  const std::int64_t card = a.size();
  for (std::int64_t r = 0; r < card; ++r) {
    auto row = a.row(r);
    for (int i = m - 1; i >= 0; --i) {
      if (k[static_cast<std::size_t>(i)] == row[static_cast<std::size_t>(i)]) {
        ++k[static_cast<std::size_t>(i)];
        break;
      }
      t.rows[static_cast<std::size_t>(i)].push_back(k[static_cast<std::size_t>(i)]);
      k[static_cast<std::size_t>(i)] = 1;
    }
  }
  for (int i = 0; i < m; ++i) t.rows[static_cast<std::size_t>(i)].push_back(k[static_cast<std::size_t>(i)]);
  return t;
}

FiberProjections fibers_from_tubes(const TubeProjections& t) {
  validate_tubes(t);
  const int m = t.dim();
  FiberProjections f;
  f.rows.resize(static_cast<std::size_t>(m));
  f.rows[static_cast<std::size_t>(m) - 1].assign(t.rows[static_cast<std::size_t>(m) - 1].begin(),
                                                 t.rows[static_cast<std::size_t>(m) - 1].end());
  for (int i = m - 2; i >= 0; --i)
    f.rows[static_cast<std::size_t>(i)] =
        block_sums(f.rows[static_cast<std::size_t>(i) + 1], t.rows[static_cast<std::size_t>(i)]);
  return f;
}

FiberTubeProjections fiber_tubes_from_tubes(const TubeProjections& t) {
  validate_tubes(t);
  const int m = t.dim();
  FiberTubeProjections s;
  s.levels.resize(static_cast<std::size_t>(m));

  auto& last = s.levels[static_cast<std::size_t>(m) - 1];
  last.reserve(t.rows[static_cast<std::size_t>(m) - 1].size());
  for (int v : t.rows[static_cast<std::size_t>(m) - 1]) {
    TubeProjections one;
    one.rows = {{v}};
    last.push_back(std::move(one));
  }

  for (int i = m - 2; i >= 0; --i) {
    const auto& blocks = t.rows[static_cast<std::size_t>(i)];
    auto merged = block_concat_rows(s.levels[static_cast<std::size_t>(i) + 1], blocks);
    for (std::size_t j = 0; j < merged.size(); ++j)
      merged[j].rows.insert(merged[j].rows.begin(), std::vector<int>{blocks[j]});
    s.levels[static_cast<std::size_t>(i)] = std::move(merged);
  }
  return s;
}

namespace {

// depth-first walk over the tube tree, one step per tube, tracking the depth
// at which each step carried
struct TubeWalker {
  const std::vector<std::vector<int>>& rows;
  int m;
  std::vector<std::int64_t> j;  // current node per depth; j[0] = 0 is the root
  std::vector<int> c;           // sibling position per depth

  explicit TubeWalker(const TubeProjections& t)
      : rows(t.rows), m(t.dim()), j(static_cast<std::size_t>(t.dim()), 0),
        c(static_cast<std::size_t>(t.dim()), 0) {}

  int tube_size() const {
    return rows[static_cast<std::size_t>(m) - 1]
               [static_cast<std::size_t>(j[static_cast<std::size_t>(m) - 1])];
  }

  // returns the carry depth (1..m-1), or 0 once every tube has been visited
  int advance() {
    for (int d = m - 1; d >= 1; --d) {
      ++j[static_cast<std::size_t>(d)];
      const int capacity = rows[static_cast<std::size_t>(d) - 1]
                               [static_cast<std::size_t>(j[static_cast<std::size_t>(d) - 1])];
      if (c[static_cast<std::size_t>(d)] + 1 < capacity) {
        ++c[static_cast<std::size_t>(d)];
        for (int e = d + 1; e <= m - 1; ++e) c[static_cast<std::size_t>(e)] = 0;
        return d;
      }
    }
    return 0;
  }
};

}  // namespace

RankEmbedding rank_embedding(const TubeProjections& sub, const TubeProjections& super) {
  validate_tubes(sub);
  validate_tubes(super);
  if (sub.dim() != super.dim())
    throw ArgumentError("rank_embedding: dimension mismatch (" + std::to_string(sub.dim()) +
                        " vs " + std::to_string(super.dim()) + ")");

  RankEmbedding r;
  r.source_size = sub.cardinality();
  r.target_size = super.cardinality();
  if (r.source_size > r.target_size)
    throw ContainmentError("rank_embedding: sub set larger than super set");
  r.image.reserve(static_cast<std::size_t>(r.source_size));

  TubeWalker a(sub), b(super);
  std::int64_t base = 0;  // ranks of the super set consumed so far
  while (true) {
    const int ssub = a.tube_size();
    const int ssup = b.tube_size();
    if (ssub > ssup)
      throw ContainmentError("rank_embedding: sub set not contained in super set (tube overrun)");
    for (int l = 1; l <= ssub; ++l) r.image.push_back(base + l);
    const int dsub = a.advance();
    if (dsub == 0) break;
    // skip super tubes that have no counterpart until both walks carry at the
    // same depth; a shallower or exhausted super carry means non-containment
    while (true) {
      base += b.tube_size();
      const int dsup = b.advance();
      if (dsup == 0 || dsup < dsub)
        throw ContainmentError("rank_embedding: sub set not contained in super set");
      if (dsup == dsub) break;
    }
  }
  return r;
}

RankEmbedding rank_embedding(const DownwardClosedSet& sub, const DownwardClosedSet& super) {
  return rank_embedding(tube_projections(sub), tube_projections(super));
}

std::vector<std::int64_t> block_sums(std::span<const std::int64_t> values,
                                     std::span<const int> blocks) {
  return block_pushforward<std::int64_t>(
      values, blocks, [](std::int64_t acc, std::int64_t v) { return acc + v; }, 0);
}

std::vector<std::vector<int>> block_concat(std::span<const std::vector<int>> values,
                                           std::span<const int> blocks) {
  return block_pushforward<std::vector<int>>(
      values, blocks,
      [](std::vector<int> acc, const std::vector<int>& v) {
        acc.insert(acc.end(), v.begin(), v.end());
        return acc;
      },
      {});
}

std::vector<TubeProjections> block_concat_rows(std::span<const TubeProjections> values,
                                               std::span<const int> blocks) {
  return block_pushforward<TubeProjections>(
      values, blocks,
      [](TubeProjections acc, const TubeProjections& v) {
        if (acc.rows.empty()) {
          acc.rows = v.rows;
          return acc;
        }
        if (acc.rows.size() != v.rows.size())
          throw ArgumentError("block_concat_rows: row count mismatch inside a block");
        for (std::size_t i = 0; i < acc.rows.size(); ++i)
          acc.rows[i].insert(acc.rows[i].end(), v.rows[i].begin(), v.rows[i].end());
        return acc;
      },
      {});
}

std::string tubes_to_text(const TubeProjections& t) {
  std::ostringstream out;
  out << "m=" << t.dim() << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ' ';
      out << row[k];
    }
    out << "\n";
  }
  return out.str();
}

TubeProjections tubes_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("m=", 0) != 0)
    throw IoError("tube text: expected leading 'm=<dim>' line");
  int m = 0;
  try {
    std::size_t used = 0;
    m = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw IoError("tube text: malformed dimension line '" + line + "'");
  }
  if (m < 1) throw IoError("tube text: dimension must be positive");

  TubeProjections t;
  t.rows.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw IoError("tube text: missing row " + std::to_string(i + 1));
    std::istringstream ls(line);
    int v = 0;
    while (ls >> v) t.rows[static_cast<std::size_t>(i)].push_back(v);
    if (!ls.eof()) throw IoError("tube text: malformed row " + std::to_string(i + 1));
    if (t.rows[static_cast<std::size_t>(i)].empty())
      throw IoError("tube text: empty row " + std::to_string(i + 1));
  }
  validate_tubes(t);
  return t;
}

}  // namespace fnt
