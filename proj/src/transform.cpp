#include "fnt/transform.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <numeric>
#include <string>

#include "fnt/errors.hpp"

namespace fnt {

namespace {

bool is_prefix_image(const RankEmbedding& emb) {
  for (std::size_t t = 0; t < emb.image.size(); ++t)
    if (emb.image[t] != static_cast<std::int64_t>(t) + 1) return false;
  return true;
}

}  // namespace

double TransformPlan::carry_count() const {
  return static_cast<double>(tube_norm_) / static_cast<double>(set_->size());
}

const AxisBasis& TransformPlan::axis_basis(int axis) const {
  if (axis < 1 || axis > dim()) throw ArgumentError("axis_basis: axis out of range");
  return bases_[static_cast<std::size_t>(axis) - 1];
}

bool TransformPlan::selection_maps_all_prefix(int axis) const {
  if (axis < 1 || axis > dim()) throw ArgumentError("selection_maps_all_prefix: axis out of range");
  if (axis == dim()) return true;  // tube blocks need no selection maps
  return sweeps_[static_cast<std::size_t>(axis) - 1].all_prefix;
}

const std::vector<std::int64_t>& TransformPlan::diff_permutation(int axis) const {
  if (axis < 1 || axis > dim()) throw ArgumentError("diff_permutation: axis out of range");
  return diff_[static_cast<std::size_t>(axis) - 1].perm;
}

const std::vector<int>& TransformPlan::diff_tube_sizes(int axis) const {
  if (axis < 1 || axis > dim()) throw ArgumentError("diff_tube_sizes: axis out of range");
  return diff_[static_cast<std::size_t>(axis) - 1].tube_sizes;
}

TransformPlan plan(const NonTensorialGrid& grid, BasisKind kind, PlanOptions opts) {
  if (!grid.set) throw ArgumentError("plan: grid carries no index set");
  const DownwardClosedSet& a = *grid.set;
  const int m = a.dim();
  if (static_cast<int>(grid.axes.size()) != m)
    throw ArgumentError("plan: grid axis count does not match the set dimension");

  TransformPlan p;
  p.set_ = grid.set;
  p.grid_ = grid;
  p.kind_ = kind;
  p.opts_ = opts;
  p.tubes_ = tube_projections(a);
  p.fibers_ = fibers_from_tubes(p.tubes_);
  p.fiber_tubes_ = fiber_tubes_from_tubes(p.tubes_);
  p.tube_norm_ = p.tubes_.norm();

  const std::vector<int>& maxdeg = a.max_degrees();
  p.bases_.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const std::vector<double>& pts = grid.axes[static_cast<std::size_t>(i)].points;
    if (static_cast<int>(pts.size()) != maxdeg[static_cast<std::size_t>(i)] + 1)
      throw ArgumentError("plan: axis " + std::to_string(i + 1) + " needs " +
                          std::to_string(maxdeg[static_cast<std::size_t>(i)] + 1) + " nodes, got " +
                          std::to_string(pts.size()));
    p.bases_.push_back(make_axis_basis(kind, pts));
    const Matrix& l = p.bases_.back().L;
    for (std::size_t d = 0; d < l.rows(); ++d)
      if (l(d, d) == 0.0)
        throw FactorizationError("plan: repeated node on axis " + std::to_string(i + 1));
  }
  if (opts.precompute_inverses) {
    for (int i = 0; i < m; ++i) {
      const AxisBasis& b = p.bases_[static_cast<std::size_t>(i)];
      p.lower_inv_.push_back(tri_inverse(b.L, Triangle::lower));
      p.upper_inv_.push_back(b.unit_upper ? Matrix() : tri_inverse(b.U, Triangle::upper));
    }
  }

  // nested-block sweep tables for axes 1..m-1
  p.sweeps_.resize(static_cast<std::size_t>(m) - 1);
  for (int i = 1; i <= m - 1; ++i) {
    TransformPlan::AxisSweep& sw = p.sweeps_[static_cast<std::size_t>(i) - 1];
    const std::vector<int>& trow = p.tubes_.rows[static_cast<std::size_t>(i) - 1];
    const std::vector<std::int64_t>& frow = p.fibers_.rows[static_cast<std::size_t>(i) - 1];
    const std::vector<std::int64_t>& srow = p.fibers_.rows[static_cast<std::size_t>(i)];
    const std::vector<TubeProjections>& tails = p.fiber_tubes_.levels[static_cast<std::size_t>(i)];

    sw.sub_sizes.assign(srow.begin(), srow.end());
    sw.sub_offs.resize(srow.size());
    std::int64_t run = 0;
    for (std::size_t b = 0; b < srow.size(); ++b) {
      sw.sub_offs[b] = run;
      run += srow[b];
    }

    const bool tail_is_1d = (m - i == 1);
    sw.all_prefix = true;
    sw.fibers.reserve(trow.size());
    std::int64_t g = 0, roff = 0;
    for (std::size_t j = 0; j < trow.size(); ++j) {
      const int k = trow[j];
      TransformPlan::FiberChain fc;
      fc.rank_off = roff;
      fc.sub_off = g;
      fc.nblocks = k;
      fc.pair_off = static_cast<std::int64_t>(sw.pair_refs.size());
      if (!tail_is_1d) {
        for (int l = 1; l < k; ++l) {
          for (int s = 0; s < l; ++s) {
            RankEmbedding emb = rank_embedding(tails[static_cast<std::size_t>(g + l)],
                                               tails[static_cast<std::size_t>(g + s)]);
            if (is_prefix_image(emb)) {
              sw.pair_refs.push_back(-1);
            } else {
              sw.all_prefix = false;
              sw.pair_refs.push_back(static_cast<std::int64_t>(sw.gather_idx.size()));
              for (std::int64_t v : emb.image)
                sw.gather_idx.push_back(static_cast<std::int32_t>(v - 1));
            }
          }
        }
      }
      sw.fibers.push_back(fc);
      g += k;
      roff += frow[j];
    }
  }

  // child offsets per tree depth (trailing total included)
  p.level_offsets_.resize(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) {
    const std::vector<int>& row = p.tubes_.rows[static_cast<std::size_t>(d)];
    std::vector<std::int64_t>& offs = p.level_offsets_[static_cast<std::size_t>(d)];
    offs.resize(row.size() + 1);
    offs[0] = 0;
    for (std::size_t g2 = 0; g2 < row.size(); ++g2) offs[g2 + 1] = offs[g2] + row[g2];
  }

  // right-rotated copies of the set drive differentiation along each axis:
  // after j rotations the last coordinate is the original axis m-j, and one
  // stable counting sort per step keeps the rotated set in its own lex order
  const std::int64_t n = a.size();
  p.diff_.resize(static_cast<std::size_t>(m));
  p.diff_[static_cast<std::size_t>(m) - 1].tube_sizes = p.tubes_.rows[static_cast<std::size_t>(m) - 1];
  if (m > 1) {
    std::vector<int> cur(a.flat());
    std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), std::int64_t{0});
    std::vector<int> next(cur.size());
    std::vector<std::int64_t> nperm(perm.size());
    const std::size_t um = static_cast<std::size_t>(m);
    for (int j = 1; j <= m - 1; ++j) {
      int maxv = 0;
      for (std::int64_t r = 0; r < n; ++r)
        maxv = std::max(maxv, cur[static_cast<std::size_t>(r) * um + um - 1]);
      std::vector<std::int64_t> start(static_cast<std::size_t>(maxv) + 2, 0);
      for (std::int64_t r = 0; r < n; ++r)
        ++start[static_cast<std::size_t>(cur[static_cast<std::size_t>(r) * um + um - 1]) + 1];
      for (std::size_t v = 1; v < start.size(); ++v) start[v] += start[v - 1];
      for (std::int64_t r = 0; r < n; ++r) {
        const int v = cur[static_cast<std::size_t>(r) * um + um - 1];
        const std::int64_t pos = start[static_cast<std::size_t>(v)]++;
        int* dst = next.data() + static_cast<std::size_t>(pos) * um;
        const int* src = cur.data() + static_cast<std::size_t>(r) * um;
        dst[0] = v;
        for (std::size_t c = 0; c + 1 < um; ++c) dst[c + 1] = src[c];
        nperm[static_cast<std::size_t>(pos)] = perm[static_cast<std::size_t>(r)];
      }
      cur.swap(next);
      perm.swap(nperm);

      TransformPlan::DiffAxis& da = p.diff_[static_cast<std::size_t>(m - j) - 1];
      da.perm = perm;
      da.tube_sizes.clear();
      for (std::int64_t r = 0; r < n; ++r) {
        bool same = r > 0;
        if (same) {
          const int* prev = cur.data() + static_cast<std::size_t>(r - 1) * um;
          const int* now = cur.data() + static_cast<std::size_t>(r) * um;
          for (std::size_t c = 0; c + 1 < um; ++c)
            if (prev[c] != now[c]) {
              same = false;
              break;
            }
        }
        if (same)
          ++da.tube_sizes.back();
        else
          da.tube_sizes.push_back(1);
      }
    }
  }

  return p;
}

void TransformPlan::run_tube_axis(const Matrix& mat, Triangle shape, Mode mode, const double* in,
                                  double* out) const {
  const std::vector<int>& tubes = tubes_.rows[static_cast<std::size_t>(set_->dim()) - 1];
  std::int64_t off = 0;
  for (int szi : tubes) {
    const std::size_t sz = static_cast<std::size_t>(szi);
    const double* x = in + off;
    double* y = out + off;
    if (shape == Triangle::lower) {
      if (mode == Mode::apply) {
        for (std::size_t i = 0; i < sz; ++i) {
          const double* r = mat.row_ptr(i);
          double acc = 0.0;
          for (std::size_t j = 0; j <= i; ++j) acc += r[j] * x[j];
          y[i] = acc;
        }
      } else {
        for (std::size_t i = 0; i < sz; ++i) {
          const double* r = mat.row_ptr(i);
          double acc = x[i];
          for (std::size_t j = 0; j < i; ++j) acc -= r[j] * y[j];
          if (r[i] == 0.0) throw FactorizationError("transform: zero diagonal in triangular factor");
          y[i] = acc / r[i];
        }
      }
    } else {
      if (mode == Mode::apply) {
        for (std::size_t i = 0; i < sz; ++i) {
          const double* r = mat.row_ptr(i);
          double acc = 0.0;
          for (std::size_t j = i; j < sz; ++j) acc += r[j] * x[j];
          y[i] = acc;
        }
      } else {
        for (std::size_t i = sz; i-- > 0;) {
          const double* r = mat.row_ptr(i);
          double acc = x[i];
          for (std::size_t j = i + 1; j < sz; ++j) acc -= r[j] * y[j];
          if (r[i] == 0.0) throw FactorizationError("transform: zero diagonal in triangular factor");
          y[i] = acc / r[i];
        }
      }
    }
    off += szi;
  }
}

void TransformPlan::run_block_axis(int axis0, const Matrix& mat, Triangle shape, Mode mode,
                                   const double* in, double* out) const {
  const AxisSweep& sw = sweeps_[static_cast<std::size_t>(axis0)];
  // selection map for the ordered pair (hi, lo), hi > lo; nullptr means prefix
  auto pair_index = [&sw](const FiberChain& fc, int hi, int lo) -> const std::int32_t* {
    if (sw.pair_refs.empty()) return nullptr;
    const std::int64_t slot = fc.pair_off + static_cast<std::int64_t>(hi) * (hi - 1) / 2 + lo;
    const std::int64_t off = sw.pair_refs[static_cast<std::size_t>(slot)];
    return off < 0 ? nullptr : sw.gather_idx.data() + off;
  };
  for (const FiberChain& fc : sw.fibers) {
    const int k = fc.nblocks;
    const std::int64_t* bs = sw.sub_sizes.data() + fc.sub_off;
    const std::int64_t* bo = sw.sub_offs.data() + fc.sub_off;
    if (shape == Triangle::lower) {
      if (mode == Mode::apply) {
        for (int l = 0; l < k; ++l) {
          const std::int64_t nl = bs[l];
          const double dl = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(l));
          double* yl = out + bo[l];
          const double* xl = in + bo[l];
          for (std::int64_t t = 0; t < nl; ++t) yl[t] = dl * xl[t];
          for (int s = 0; s < l; ++s) {
            const double c = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(s));
            if (c == 0.0) continue;
            const double* xs = in + bo[s];
            const std::int32_t* idx = pair_index(fc, l, s);
            if (idx == nullptr)
              for (std::int64_t t = 0; t < nl; ++t) yl[t] += c * xs[t];
            else
              for (std::int64_t t = 0; t < nl; ++t) yl[t] += c * xs[idx[t]];
          }
        }
      } else {
        for (int l = 0; l < k; ++l) {
          const std::int64_t nl = bs[l];
          double* xl = out + bo[l];
          const double* yl = in + bo[l];
          for (std::int64_t t = 0; t < nl; ++t) xl[t] = yl[t];
          for (int s = 0; s < l; ++s) {
            const double c = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(s));
            if (c == 0.0) continue;
            const double* xs = out + bo[s];
            const std::int32_t* idx = pair_index(fc, l, s);
            if (idx == nullptr)
              for (std::int64_t t = 0; t < nl; ++t) xl[t] -= c * xs[t];
            else
              for (std::int64_t t = 0; t < nl; ++t) xl[t] -= c * xs[idx[t]];
          }
          const double dl = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(l));
          if (dl == 0.0) throw FactorizationError("transform: zero diagonal in triangular factor");
          const double inv = 1.0 / dl;
          for (std::int64_t t = 0; t < nl; ++t) xl[t] *= inv;
        }
      }
    } else {
      if (mode == Mode::apply) {
        for (int l = 0; l < k; ++l) {
          const std::int64_t nl = bs[l];
          const double dl = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(l));
          double* yl = out + bo[l];
          const double* xl = in + bo[l];
          for (std::int64_t t = 0; t < nl; ++t) yl[t] = dl * xl[t];
          for (int s = l + 1; s < k; ++s) {
            const double c = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(s));
            if (c == 0.0) continue;
            const std::int64_t ns = bs[s];
            const double* xs = in + bo[s];
            const std::int32_t* idx = pair_index(fc, s, l);
            if (idx == nullptr)
              for (std::int64_t t = 0; t < ns; ++t) yl[t] += c * xs[t];
            else
              for (std::int64_t t = 0; t < ns; ++t) yl[idx[t]] += c * xs[t];
          }
        }
      } else {
        for (int l = k; l-- > 0;) {
          const std::int64_t nl = bs[l];
          double* xl = out + bo[l];
          const double* yl = in + bo[l];
          for (std::int64_t t = 0; t < nl; ++t) xl[t] = yl[t];
          for (int s = l + 1; s < k; ++s) {
            const double c = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(s));
            if (c == 0.0) continue;
            const std::int64_t ns = bs[s];
            const double* xs = out + bo[s];
            const std::int32_t* idx = pair_index(fc, s, l);
            if (idx == nullptr)
              for (std::int64_t t = 0; t < ns; ++t) xl[t] -= c * xs[t];
            else
              for (std::int64_t t = 0; t < ns; ++t) xl[idx[t]] -= c * xs[t];
          }
          const double dl = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(l));
          if (dl == 0.0) throw FactorizationError("transform: zero diagonal in triangular factor");
          const double inv = 1.0 / dl;
          for (std::int64_t t = 0; t < nl; ++t) xl[t] *= inv;
        }
      }
    }
  }
}

void TransformPlan::run_axis(int axis0, const Matrix& mat, Triangle shape, Mode mode,
                             const double* in, double* out) const {
  if (axis0 == set_->dim() - 1)
    run_tube_axis(mat, shape, mode, in, out);
  else
    run_block_axis(axis0, mat, shape, mode, in, out);
}

namespace {

struct Step {
  int axis0;
  const Matrix* mat;
  Triangle shape;
};

}  // namespace

void fnt_inverse(const TransformPlan& p, std::span<const double> coeffs, std::span<double> out,
                 Workspace& ws) {
  const std::int64_t n = p.size();
  if (static_cast<std::int64_t>(coeffs.size()) != n || static_cast<std::int64_t>(out.size()) != n)
    throw ArgumentError("fnt_inverse: vector length must equal the set size");
  const int m = p.dim();
  std::vector<Step> steps;
  if (p.kind() == BasisKind::newton) {
    for (int i = m; i >= 1; --i)
      steps.push_back({i - 1, &p.bases_[static_cast<std::size_t>(i) - 1].V, Triangle::lower});
  } else {
    for (int i = m; i >= 1; --i)
      steps.push_back({i - 1, &p.bases_[static_cast<std::size_t>(i) - 1].U, Triangle::upper});
    for (int i = m; i >= 1; --i)
      steps.push_back({i - 1, &p.bases_[static_cast<std::size_t>(i) - 1].L, Triangle::lower});
  }
  ws.a.resize(static_cast<std::size_t>(n));
  ws.b.resize(static_cast<std::size_t>(n));
  const double* src = coeffs.data();
  double* bufs[2] = {ws.a.data(), ws.b.data()};
  int cur = 0;
  for (const Step& st : steps) {
    p.run_axis(st.axis0, *st.mat, st.shape, TransformPlan::Mode::apply, src, bufs[cur]);
    src = bufs[cur];
    cur ^= 1;
  }
  std::copy(src, src + n, out.data());
}

void fnt_forward(const TransformPlan& p, std::span<const double> values, std::span<double> out,
                 Workspace& ws) {
  const std::int64_t n = p.size();
  if (static_cast<std::int64_t>(values.size()) != n || static_cast<std::int64_t>(out.size()) != n)
    throw ArgumentError("fnt_forward: vector length must equal the set size");
  const int m = p.dim();
  const bool inv = p.options().precompute_inverses;
  std::vector<Step> steps;
  auto lower_of = [&](int i) -> const Matrix* {
    return inv ? &p.lower_inv_[static_cast<std::size_t>(i) - 1]
               : &p.bases_[static_cast<std::size_t>(i) - 1].L;
  };
  if (p.kind() == BasisKind::newton) {
    for (int i = m; i >= 1; --i) steps.push_back({i - 1, lower_of(i), Triangle::lower});
  } else {
    for (int i = m; i >= 1; --i) steps.push_back({i - 1, lower_of(i), Triangle::lower});
    for (int i = m; i >= 1; --i)
      steps.push_back({i - 1,
                       inv ? &p.upper_inv_[static_cast<std::size_t>(i) - 1]
                           : &p.bases_[static_cast<std::size_t>(i) - 1].U,
                       Triangle::upper});
  }
  const TransformPlan::Mode mode =
      inv ? TransformPlan::Mode::apply : TransformPlan::Mode::solve;
  ws.a.resize(static_cast<std::size_t>(n));
  ws.b.resize(static_cast<std::size_t>(n));
  const double* src = values.data();
  double* bufs[2] = {ws.a.data(), ws.b.data()};
  int cur = 0;
  for (const Step& st : steps) {
    p.run_axis(st.axis0, *st.mat, st.shape, mode, src, bufs[cur]);
    src = bufs[cur];
    cur ^= 1;
  }
  std::copy(src, src + n, out.data());
}

void diff_coeffs(const TransformPlan& p, std::span<const double> coeffs, std::span<double> out,
                 int axis, Workspace& ws) {
  const std::int64_t n = p.size();
  if (static_cast<std::int64_t>(coeffs.size()) != n || static_cast<std::int64_t>(out.size()) != n)
    throw ArgumentError("diff_coeffs: vector length must equal the set size");
  if (axis < 1 || axis > p.dim()) throw ArgumentError("diff_coeffs: axis out of range");
  const TransformPlan::DiffAxis& da = p.diff_[static_cast<std::size_t>(axis) - 1];
  const Matrix& g = p.bases_[static_cast<std::size_t>(axis) - 1].G;
  ws.a.resize(static_cast<std::size_t>(n));
  ws.b.resize(static_cast<std::size_t>(n));
  double* t0 = ws.a.data();
  double* t1 = ws.b.data();
  if (da.perm.empty())
    std::copy(coeffs.begin(), coeffs.end(), t0);
  else
    for (std::int64_t r = 0; r < n; ++r)
      t0[r] = coeffs[static_cast<std::size_t>(da.perm[static_cast<std::size_t>(r)])];
  std::int64_t off = 0;
  for (int szi : da.tube_sizes) {
    for (int t = 0; t < szi; ++t) {
      const double* gr = g.row_ptr(static_cast<std::size_t>(t));
      double acc = 0.0;
      for (int v = t + 1; v < szi; ++v) acc += gr[v] * t0[off + v];
      t1[off + t] = acc;
    }
    off += szi;
  }
  if (da.perm.empty())
    std::copy(t1, t1 + n, out.data());
  else
    for (std::int64_t r = 0; r < n; ++r)
      out[static_cast<std::size_t>(da.perm[static_cast<std::size_t>(r)])] = t1[r];
}

std::vector<double> fnt_forward(const TransformPlan& p, std::span<const double> values) {
  Workspace ws;
  std::vector<double> out(values.size());
  fnt_forward(p, values, out, ws);
  return out;
}

std::vector<double> fnt_inverse(const TransformPlan& p, std::span<const double> coeffs) {
  Workspace ws;
  std::vector<double> out(coeffs.size());
  fnt_inverse(p, coeffs, out, ws);
  return out;
}

std::vector<double> diff_coeffs(const TransformPlan& p, std::span<const double> coeffs, int axis) {
  Workspace ws;
  std::vector<double> out(coeffs.size());
  diff_coeffs(p, coeffs, out, axis, ws);
  return out;
}

std::vector<double> lower_block_product(const Matrix& l, std::span<const double> x,
                                        const std::vector<std::int64_t>& sizes,
                                        const std::vector<TubeProjections>& tails) {
  const std::size_t k = sizes.size();
  if (k == 0) throw ArgumentError("lower_block_product: need at least one block");
  if (tails.size() != k) throw ArgumentError("lower_block_product: one tail set per block");
  if (l.rows() < k || l.cols() < k)
    throw ArgumentError("lower_block_product: matrix is smaller than the block count");
  std::vector<std::int64_t> off(k + 1, 0);
  for (std::size_t b = 0; b < k; ++b) {
    if (sizes[b] < 0) throw ArgumentError("lower_block_product: negative block size");
    if (tails[b].cardinality() != sizes[b])
      throw ArgumentError("lower_block_product: block size disagrees with its tail set");
    off[b + 1] = off[b] + sizes[b];
  }
  if (off[k] != static_cast<std::int64_t>(x.size()))
    throw ArgumentError("lower_block_product: blocks do not cover the input");
  std::vector<double> y(x.size());
  for (std::size_t b = 0; b < k; ++b) {
    const std::int64_t nb = sizes[b];
    double* yb = y.data() + off[b];
    const double* xb = x.data() + off[b];
    const double db = l(b, b);
    for (std::int64_t t = 0; t < nb; ++t) yb[t] = db * xb[t];
    for (std::size_t s = 0; s < b; ++s) {
      RankEmbedding emb = rank_embedding(tails[b], tails[s]);  // also validates nesting
      const double c = l(b, s);
      if (c == 0.0) continue;
      const double* xs = x.data() + off[s];
      for (std::int64_t t = 0; t < nb; ++t)
        yb[t] += c * xs[emb.image[static_cast<std::size_t>(t)] - 1];
    }
  }
  return y;
}

}  // namespace fnt
