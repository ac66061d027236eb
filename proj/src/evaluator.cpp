#include "fnt/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "fnt/errors.hpp"

namespace fnt {

namespace {

struct EvalCtx {
  const std::vector<std::vector<int>>* rows;
  const std::vector<std::vector<std::int64_t>>* offs;
  const std::vector<const std::vector<double>*> nodes;  // per axis
  const double* c;
  const double* x;
  int m;
  BasisKind kind;
};

double eval_node(const EvalCtx& ctx, int d, std::int64_t g) {
  const int count = (*ctx.rows)[static_cast<std::size_t>(d)][static_cast<std::size_t>(g)];
  const std::int64_t first = (*ctx.offs)[static_cast<std::size_t>(d)][static_cast<std::size_t>(g)];
  const double xv = ctx.x[d];
  const std::vector<double>& nd = *ctx.nodes[static_cast<std::size_t>(d)];
  const bool leaf = (d == ctx.m - 1);
  double acc = 0.0;
  if (ctx.kind == BasisKind::newton) {
    double q = 1.0;
    for (int v = 0; v < count; ++v) {
      const double inner = leaf ? ctx.c[first + v] : eval_node(ctx, d + 1, first + v);
      acc += q * inner;
      q *= xv - nd[static_cast<std::size_t>(v)];
    }
  } else {
    double tm1 = 0.0, tm2 = 0.0;
    for (int v = 0; v < count; ++v) {
      const double tv = v == 0 ? 1.0 : (v == 1 ? xv : 2.0 * xv * tm1 - tm2);
      const double inner = leaf ? ctx.c[first + v] : eval_node(ctx, d + 1, first + v);
      acc += tv * inner;
      tm2 = tm1;
      tm1 = tv;
    }
  }
  return acc;
}

}  // namespace

double eval_point(const TransformPlan& p, std::span<const double> coeffs,
                  std::span<const double> x) {
  const int m = p.dim();
  if (static_cast<std::int64_t>(coeffs.size()) != p.size())
    throw ArgumentError("eval_point: coefficient length must equal the set size");
  if (static_cast<int>(x.size()) != m)
    throw ArgumentError("eval_point: point dimension mismatch");
  EvalCtx ctx{&p.tubes().rows,
              &p.level_offsets(),
              [&] {
                std::vector<const std::vector<double>*> n;
                n.reserve(static_cast<std::size_t>(m));
                for (int i = 1; i <= m; ++i) n.push_back(&p.axis_basis(i).nodes);
                return n;
              }(),
              coeffs.data(),
              x.data(),
              m,
              p.kind()};
  return eval_node(ctx, 0, 0);
}

std::vector<double> eval_points(const TransformPlan& p, std::span<const double> coeffs,
                                std::span<const double> pts) {
  const int m = p.dim();
  if (pts.size() % static_cast<std::size_t>(m) != 0)
    throw ArgumentError("eval_points: point buffer is not a multiple of the dimension");
  const std::size_t npts = pts.size() / static_cast<std::size_t>(m);
  std::vector<double> out(npts);
  for (std::size_t s = 0; s < npts; ++s)
    out[s] = eval_point(p, coeffs, pts.subspan(s * static_cast<std::size_t>(m),
                                               static_cast<std::size_t>(m)));
  return out;
}

double max_rel_error(const TransformPlan& p, std::span<const double> coeffs,
                     const std::function<double(std::span<const double>)>& f,
                     std::int64_t samples, std::uint64_t seed) {
  if (samples <= 0) throw ArgumentError("max_rel_error: need a positive sample count");
  const int m = p.dim();
  SplitMix64 rng(seed);
  std::vector<double> x(static_cast<std::size_t>(m));
  double maxdiff = 0.0, maxf = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = rng.uniform_pm1();
    const double fe = f(x);
    const double q = eval_point(p, coeffs, x);
    maxdiff = std::max(maxdiff, std::abs(q - fe));
    maxf = std::max(maxf, std::abs(fe));
  }
  return maxdiff / std::max(maxf, 1e-300);
}

}  // namespace fnt
