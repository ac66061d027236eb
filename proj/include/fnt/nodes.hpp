#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fnt/multiindex.hpp"

namespace fnt {

// n+1 points cos(k*pi/n), k = 0..n, from 1 down to -1; exactly antisymmetric
std::vector<double> chebyshev_lobatto(int n);

// greedy ordering maximizing the product of distances to already chosen
// points, seeded with the largest magnitude; ties keep the earlier input
// point. Runs in O(n^2) with running products, switching to log accumulation
// for more than 64 points to dodge under/overflow.
std::vector<int> leja_permutation(const std::vector<double>& points);
std::vector<double> leja_order(const std::vector<double>& points);

struct AxisNodes {
  enum class Family { chebyshev_lobatto, custom };

  std::vector<double> points;        // in usage order
  std::vector<int> leja_permutation; // empty when no reordering was applied
  Family family = Family::custom;
};

// Leja-ordered Chebyshev-Lobatto axis with n+1 points
AxisNodes leja_chebyshev_axis(int n);

// Per-axis node lists tied to a lower set: the grid point of a multi-index
// takes, on axis i, the node whose position equals the i-th exponent.
struct NonTensorialGrid {
  std::shared_ptr<const DownwardClosedSet> set;
  std::vector<AxisNodes> axes;

  std::vector<double> point(std::int64_t rank) const;  // 1-based rank
};

// checks one axis per dimension with at least max_degree+1 nodes; extra nodes
// beyond that are dropped
NonTensorialGrid make_grid(std::shared_ptr<const DownwardClosedSet> set,
                           std::vector<AxisNodes> axes);
NonTensorialGrid leja_chebyshev_grid(std::shared_ptr<const DownwardClosedSet> set);

// one line of space-separated decimals, 17 significant digits (binary64 exact)
std::string nodes_to_text(const std::vector<double>& nodes);
std::vector<double> nodes_from_text(const std::string& line);

}  // namespace fnt
