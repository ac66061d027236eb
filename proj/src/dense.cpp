#include "fnt/dense.hpp"

#include <string>
#include <vector>

#include "fnt/errors.hpp"

namespace fnt {

namespace {

void check_inputs(const DownwardClosedSet& a, const NonTensorialGrid& grid, std::int64_t cap,
                  const char* who) {
  if (a.size() > cap)
    throw ArgumentError(std::string(who) + ": set of size " + std::to_string(a.size()) +
                        " exceeds the dense cap " + std::to_string(cap));
  if (static_cast<int>(grid.axes.size()) != a.dim())
    throw ArgumentError(std::string(who) + ": grid axis count does not match the set dimension");
  const std::vector<int>& maxdeg = a.max_degrees();
  for (int i = 0; i < a.dim(); ++i)
    if (static_cast<int>(grid.axes[static_cast<std::size_t>(i)].points.size()) <
        maxdeg[static_cast<std::size_t>(i)] + 1)
      throw ArgumentError(std::string(who) + ": axis " + std::to_string(i + 1) +
                          " has fewer nodes than degrees");
}

std::vector<Matrix> axis_vandermondes(const NonTensorialGrid& grid, BasisKind kind) {
  std::vector<Matrix> v;
  v.reserve(grid.axes.size());
  for (const AxisNodes& ax : grid.axes)
    v.push_back(kind == BasisKind::newton ? newton_vandermonde(ax.points)
                                          : chebyshev_vandermonde(ax.points));
  return v;
}

}  // namespace

Matrix dense_vandermonde(const DownwardClosedSet& a, const NonTensorialGrid& grid, BasisKind kind,
                         std::int64_t cap) {
  check_inputs(a, grid, cap, "dense_vandermonde");
  const std::vector<Matrix> v = axis_vandermondes(grid, kind);
  const std::int64_t n = a.size();
  const int m = a.dim();
  Matrix k(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    std::span<const int> alpha = a.row(r);
    for (std::int64_t c = 0; c < n; ++c) {
      std::span<const int> beta = a.row(c);
      double prod = 1.0;
      for (int i = 0; i < m; ++i)
        prod *= v[static_cast<std::size_t>(i)](static_cast<std::size_t>(alpha[static_cast<std::size_t>(i)]),
                                               static_cast<std::size_t>(beta[static_cast<std::size_t>(i)]));
      k(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = prod;
    }
  }
  return k;
}

Matrix dense_diff_matrix(const DownwardClosedSet& a, const NonTensorialGrid& grid, BasisKind kind,
                         int axis, std::int64_t cap) {
  check_inputs(a, grid, cap, "dense_diff_matrix");
  if (axis < 1 || axis > a.dim()) throw ArgumentError("dense_diff_matrix: axis out of range");
  const std::vector<Matrix> v = axis_vandermondes(grid, kind);
  const std::vector<double>& pts = grid.axes[static_cast<std::size_t>(axis) - 1].points;
  const Matrix d =
      kind == BasisKind::newton ? newton_diff_matrix(pts) : chebyshev_diff_matrix(pts);
  const std::int64_t n = a.size();
  const int m = a.dim();
  Matrix k(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    std::span<const int> alpha = a.row(r);
    for (std::int64_t c = 0; c < n; ++c) {
      std::span<const int> beta = a.row(c);
      double prod = 1.0;
      for (int i = 0; i < m; ++i) {
        const std::size_t ai = static_cast<std::size_t>(alpha[static_cast<std::size_t>(i)]);
        const std::size_t bi = static_cast<std::size_t>(beta[static_cast<std::size_t>(i)]);
        prod *= (i == axis - 1) ? d(ai, bi) : v[static_cast<std::size_t>(i)](ai, bi);
      }
      k(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = prod;
    }
  }
  return k;
}

Matrix dense_diff_coeff_matrix(const DownwardClosedSet& a, const NonTensorialGrid& grid,
                               BasisKind kind, int axis, std::int64_t cap) {
  check_inputs(a, grid, cap, "dense_diff_coeff_matrix");
  if (axis < 1 || axis > a.dim())
    throw ArgumentError("dense_diff_coeff_matrix: axis out of range");
  const std::vector<double>& pts = grid.axes[static_cast<std::size_t>(axis) - 1].points;
  const Matrix g = kind == BasisKind::newton ? newton_diff_coeff_matrix(pts)
                                             : chebyshev_diff_coeff_matrix(pts.size());
  const std::int64_t n = a.size();
  const int m = a.dim();
  Matrix k(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    std::span<const int> gamma = a.row(r);
    for (std::int64_t c = 0; c < n; ++c) {
      std::span<const int> beta = a.row(c);
      bool match = true;
      for (int i = 0; i < m && match; ++i)
        if (i != axis - 1 &&
            gamma[static_cast<std::size_t>(i)] != beta[static_cast<std::size_t>(i)])
          match = false;
      if (!match) continue;
      k(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          g(static_cast<std::size_t>(gamma[static_cast<std::size_t>(axis) - 1]),
            static_cast<std::size_t>(beta[static_cast<std::size_t>(axis) - 1]));
    }
  }
  return k;
}

}  // namespace fnt
