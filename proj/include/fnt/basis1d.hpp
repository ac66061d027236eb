#pragma once

#include <vector>

#include "fnt/matrix.hpp"

namespace fnt {

enum class BasisKind { newton, chebyshev };

// Newton polynomials for an ordered node list: Q_k(x) = prod_{l<k} (x - p_l).
// V(j,k) = Q_k(p_j) is lower triangular with nonzero diagonal for distinct nodes.
Matrix newton_vandermonde(const std::vector<double>& nodes);

// solves V c = values by forward substitution with running row products, O(n^2)
std::vector<double> newton_coefficients(const std::vector<double>& nodes,
                                        const std::vector<double>& values);

// derivative values D(j,l) = Q'_l(p_j), via Q'_{l+1}(x) = Q_l(x) + (x-p_l) Q'_l(x)
Matrix newton_diff_matrix(const std::vector<double>& nodes);

// derivative coefficients: strictly upper G with Q'_l = sum_{r<l} G(r,l) Q_r
Matrix newton_diff_coeff_matrix(const std::vector<double>& nodes);

// V(j,k) = T_k(p_j) by the three-term recurrence
Matrix chebyshev_vandermonde(const std::vector<double>& nodes);

// derivative values D(j,l) = T'_l(p_j) = l * U_{l-1}(p_j)
Matrix chebyshev_diff_matrix(const std::vector<double>& nodes);

// derivative coefficients G with T'_l = sum G(r,l) T_r; node independent
Matrix chebyshev_diff_coeff_matrix(std::size_t size);

struct LuFactors {
  Matrix L;  // unit lower triangular
  Matrix U;
};

// Doolittle without pivoting; a zero pivot raises FactorizationError since row
// exchanges would break the nested-block structure the transforms rely on
LuFactors lu_factorize(const Matrix& v);

enum class Triangle { lower, upper };

// solves the leading r-by-r block of a triangular matrix against rhs
std::vector<double> tri_block_solve(const Matrix& t, Triangle shape, std::size_t r,
                                    std::vector<double> rhs);

// inverse of a triangular matrix by columnwise substitution
Matrix tri_inverse(const Matrix& t, Triangle shape);

// per-axis bundle used by the transform plans; for the Newton kind V itself is
// the lower factor and the upper factor is the identity
struct AxisBasis {
  BasisKind kind = BasisKind::newton;
  std::vector<double> nodes;
  Matrix V;
  Matrix L;
  Matrix U;
  Matrix D;  // derivative values
  Matrix G;  // derivative coefficient map
  bool unit_upper = false;
};

AxisBasis make_axis_basis(BasisKind kind, const std::vector<double>& nodes);

}  // namespace fnt
