#pragma once

#include <cstdint>

#include "fnt/basis1d.hpp"
#include "fnt/matrix.hpp"
#include "fnt/multiindex.hpp"
#include "fnt/nodes.hpp"

namespace fnt {

// Brute-force reference operators on the full |A| x |A| scale. They exist to
// cross-check the fast sweeps and to serve small problems; the cap guards
// against accidentally quadratic usage.

// row alpha (grid point), column beta (basis polynomial), lex rank order both ways
Matrix dense_vandermonde(const DownwardClosedSet& a, const NonTensorialGrid& grid, BasisKind kind,
                         std::int64_t cap = 5000);

// values of the axis derivative of every basis polynomial at every grid point
Matrix dense_diff_matrix(const DownwardClosedSet& a, const NonTensorialGrid& grid, BasisKind kind,
                         int axis, std::int64_t cap = 5000);

// coefficient-space derivative: column beta holds the expansion of the axis
// derivative of basis polynomial beta; nonzero only where the off-axis
// exponents agree
Matrix dense_diff_coeff_matrix(const DownwardClosedSet& a, const NonTensorialGrid& grid,
                               BasisKind kind, int axis, std::int64_t cap = 5000);

}  // namespace fnt
