#include "fnt/nodes.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

namespace fnt {

std::vector<double> chebyshev_lobatto(int n) {
  if (n < 0) throw ArgumentError("chebyshev_lobatto: degree must be non-negative");
  if (n == 0) return {1.0};
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  // sin form keeps the set exactly antisymmetric and the midpoint exactly zero
  for (int k = 0; k <= n; ++k)
    p[static_cast<std::size_t>(k)] = std::sin(M_PI * (n - 2.0 * k) / (2.0 * n));
  return p;
}

std::vector<int> leja_permutation(const std::vector<double>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw ArgumentError("leja_permutation: empty node list");
  const bool logspace = n > 64;

  std::vector<int> order;
  order.reserve(n);
  std::vector<char> used(n, 0);
  // running products of distances to the selected prefix (log-sums when large)
  std::vector<double> score(n);
  for (std::size_t k = 0; k < n; ++k)
    score[k] = logspace ? std::log(std::abs(points[k])) : std::abs(points[k]);

  const double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    double best_score = worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      if (best == n || score[k] > best_score) {  // strict: ties keep the first
        best = k;
        best_score = score[k];
      }
    }
    if (step > 0 && (logspace ? std::isinf(best_score) && best_score < 0 : best_score == 0.0))
      throw ArgumentError("leja_permutation: duplicate nodes");
    used[best] = 1;
    order.push_back(static_cast<int>(best));
    const double y = points[best];
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      const double d = std::abs(points[k] - y);
      // the magnitude seed only elects the first point; the products start
      // from the distance to that point, or a zero score could never recover
      if (step == 0)
        score[k] = logspace ? std::log(d) : d;
      else if (logspace)
        score[k] += std::log(d);
      else
        score[k] *= d;
    }
  }
  return order;
}

std::vector<double> leja_order(const std::vector<double>& points) {
  auto perm = leja_permutation(points);
  std::vector<double> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k)
    out[k] = points[static_cast<std::size_t>(perm[k])];
  return out;
}

AxisNodes leja_chebyshev_axis(int n) {
  AxisNodes a;
  auto cl = chebyshev_lobatto(n);
  a.leja_permutation = leja_permutation(cl);
  a.points.resize(cl.size());
  for (std::size_t k = 0; k < cl.size(); ++k)
    a.points[k] = cl[static_cast<std::size_t>(a.leja_permutation[k])];
  a.family = AxisNodes::Family::chebyshev_lobatto;
  return a;
}

std::vector<double> NonTensorialGrid::point(std::int64_t rank) const {
  auto alpha = set->index(rank);
  std::vector<double> x(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    x[i] = axes[i].points[static_cast<std::size_t>(alpha[i])];
  return x;
}

NonTensorialGrid make_grid(std::shared_ptr<const DownwardClosedSet> set,
                           std::vector<AxisNodes> axes) {
  if (!set) throw ArgumentError("make_grid: null set");
  if (static_cast<int>(axes.size()) != set->dim())
    throw ArgumentError("make_grid: expected " + std::to_string(set->dim()) + " axes, got " +
                        std::to_string(axes.size()));
  for (int i = 0; i < set->dim(); ++i) {
    auto& axis = axes[static_cast<std::size_t>(i)];
    const std::size_t need = static_cast<std::size_t>(set->max_degrees()[static_cast<std::size_t>(i)]) + 1;
    if (axis.points.size() < need)
      throw ArgumentError("make_grid: axis " + std::to_string(i + 1) + " needs at least " +
                          std::to_string(need) + " nodes, got " +
                          std::to_string(axis.points.size()));
    if (axis.points.size() > need) axis.points.resize(need);
  }
  return NonTensorialGrid{std::move(set), std::move(axes)};
}

NonTensorialGrid leja_chebyshev_grid(std::shared_ptr<const DownwardClosedSet> set) {
  if (!set) throw ArgumentError("leja_chebyshev_grid: null set");
  std::vector<AxisNodes> axes;
  axes.reserve(static_cast<std::size_t>(set->dim()));
  for (int i = 0; i < set->dim(); ++i)
    axes.push_back(leja_chebyshev_axis(set->max_degrees()[static_cast<std::size_t>(i)]));
  return make_grid(std::move(set), std::move(axes));
}

std::string nodes_to_text(const std::vector<double>& nodes) {
  std::string out;
  char buf[64];
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", nodes[k]);
    if (k) out += ' ';
    out += buf;
  }
  return out;
}

std::vector<double> nodes_from_text(const std::string& line) {
  std::istringstream in(line);
  std::vector<double> out;
  double v = 0.0;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw IoError("nodes_from_text: malformed node list '" + line + "'");
  return out;
}

}  // namespace fnt
