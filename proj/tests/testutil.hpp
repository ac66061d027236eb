#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "fnt/dense.hpp"
#include "fnt/errors.hpp"
#include "fnt/evaluator.hpp"
#include "fnt/matrix.hpp"
#include "fnt/multiindex.hpp"
#include "fnt/nodes.hpp"

namespace testutil {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline fnt::Matrix matmul(const fnt::Matrix& a, const fnt::Matrix& b) {
  fnt::Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double v = a(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

inline std::vector<double> matvec(const fnt::Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

inline double max_abs(const fnt::Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

// max entrywise difference over the larger of the two matrix scales
inline double rel_mat_diff(const fnt::Matrix& a, const fnt::Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d / std::max({max_abs(a), max_abs(b), 1e-300});
}

// sup-norm difference relative to the sup norm of the reference
inline double rel_vec_diff(const std::vector<double>& got, const std::vector<double>& want) {
  double d = 0.0, w = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    d = std::max(d, std::abs(got[i] - want[i]));
    w = std::max(w, std::abs(want[i]));
  }
  return d / std::max(w, 1e-300);
}

// partial-pivot LU solve, used as the dense interpolation oracle
inline std::vector<double> dense_solve(fnt::Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(best, col))) best = r;
    if (a(best, col) == 0.0) throw fnt::FactorizationError("dense_solve: singular matrix");
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(best, j));
      std::swap(b[col], b[best]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      a(r, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

inline fnt::Matrix dense_inverse(const fnt::Matrix& a) {
  const std::size_t n = a.rows();
  fnt::Matrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    const std::vector<double> x = dense_solve(a, std::move(e));
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = x[r];
  }
  return inv;
}

// random anisotropic downward closed set: a weighted ball
//   { alpha : alpha_i <= b_i,  sum_i (alpha_i / (b_i + eps))^q <= 1 },
// occasionally unioned with a second ball (unions preserve closedness),
// occasionally replaced by a plain lp set
inline fnt::DownwardClosedSet random_lower_set(fnt::SplitMix64& rng, int m,
                                               std::int64_t max_card, int max_axis_degree) {
  auto ball_indices = [&](const std::vector<int>& b, double q) {
    std::vector<fnt::MultiIndex> out;
    std::vector<int> alpha(static_cast<std::size_t>(m), 0);
    std::vector<double> weight(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) weight[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] + 0.35;
    // depth-first over coordinates with the monotone partial-sum bound
    std::vector<double> partial(static_cast<std::size_t>(m) + 1, 0.0);
    std::int64_t guard = 0;
    std::function<void(int)> rec = [&](int d) {
      if (guard > 4 * max_card) return;  // runaway ball; caller shrinks and retries
      if (d == m) {
        ++guard;
        out.push_back(alpha);
        return;
      }
      for (int v = 0;; ++v) {
        if (v > b[static_cast<std::size_t>(d)]) break;
        const double term = std::pow(v / weight[static_cast<std::size_t>(d)], q);
        if (partial[static_cast<std::size_t>(d)] + term > 1.0 + 1e-12) break;
        alpha[static_cast<std::size_t>(d)] = v;
        partial[static_cast<std::size_t>(d) + 1] = partial[static_cast<std::size_t>(d)] + term;
        rec(d + 1);
        if (guard > 4 * max_card) return;
      }
      alpha[static_cast<std::size_t>(d)] = 0;
    };
    rec(0);
    return out;
  };

  const std::uint64_t style = rng.next() % 5;
  if (style == 0) {
    const int n = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_axis_degree));
    const double ps[] = {1.0, 2.0, std::numeric_limits<double>::infinity(), 1.5, 0.8};
    double p = ps[rng.next() % 5];
    fnt::DownwardClosedSet s = fnt::DownwardClosedSet::lp_set(m, n, p);
    if (s.size() <= max_card) return s;
    // fall through to a ball when the lp set is too big
  }

  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<int> b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      b[static_cast<std::size_t>(i)] =
          static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_axis_degree + 1));
    const double q = 0.6 + 3.0 * rng.uniform01();
    std::vector<fnt::MultiIndex> idx = ball_indices(b, q);
    if (rng.next() % 3 == 0) {
      std::vector<int> b2(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        b2[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] / 2;
      const double q2 = 0.6 + 3.0 * rng.uniform01();
      for (fnt::MultiIndex& a2 : ball_indices(b2, q2)) idx.push_back(std::move(a2));
      std::sort(idx.begin(), idx.end(),
                [](const fnt::MultiIndex& x, const fnt::MultiIndex& y) {
                  return fnt::lex_compare(x, y) < 0;
                });
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    if (static_cast<std::int64_t>(idx.size()) <= max_card && !idx.empty())
      return fnt::DownwardClosedSet::from_indices(m, std::move(idx));
  }
  // tiny deterministic fallback
  return fnt::DownwardClosedSet::lp_set(m, 1, 1.0);
}

inline std::vector<double> random_vector(fnt::SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform_pm1();
  return v;
}

}  // namespace testutil
