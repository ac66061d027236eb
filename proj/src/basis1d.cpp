#include "fnt/basis1d.hpp"

#include <cmath>
#include <string>

namespace fnt {

namespace {

void check_nodes(const std::vector<double>& nodes, const char* who) {
  if (nodes.empty()) throw ArgumentError(std::string(who) + ": empty node list");
  for (double p : nodes)
    if (!std::isfinite(p)) throw ArgumentError(std::string(who) + ": non-finite node");
}

}  // namespace

Matrix newton_vandermonde(const std::vector<double>& nodes) {
  check_nodes(nodes, "newton_vandermonde");
  const std::size_t n1 = nodes.size();
  Matrix v(n1, n1);
  for (std::size_t j = 0; j < n1; ++j) {
    double q = 1.0;
    v(j, 0) = 1.0;
    for (std::size_t k = 1; k < n1; ++k) {
      q *= nodes[j] - nodes[k - 1];
      v(j, k) = q;  // zero once k exceeds j, so the matrix is lower triangular
    }
  }
  return v;
}

std::vector<double> newton_coefficients(const std::vector<double>& nodes,
                                        const std::vector<double>& values) {
  check_nodes(nodes, "newton_coefficients");
  if (values.size() != nodes.size())
    throw ArgumentError("newton_coefficients: values/nodes length mismatch");
  const std::size_t n1 = nodes.size();
  std::vector<double> c(n1);
  for (std::size_t j = 0; j < n1; ++j) {
    double q = 1.0;  // running Q_k(p_j)
    double acc = values[j];
    for (std::size_t k = 0; k < j; ++k) {
      acc -= q * c[k];
      q *= nodes[j] - nodes[k];
    }
    if (q == 0.0) throw FactorizationError("newton_coefficients: repeated node");
    c[j] = acc / q;
  }
  return c;
}

Matrix newton_diff_matrix(const std::vector<double>& nodes) {
  check_nodes(nodes, "newton_diff_matrix");
  const std::size_t n1 = nodes.size();
  Matrix d(n1, n1);
  for (std::size_t j = 0; j < n1; ++j) {
    double q = 1.0;   // Q_l(p_j)
    double dq = 0.0;  // Q'_l(p_j)
    d(j, 0) = 0.0;
    for (std::size_t l = 1; l < n1; ++l) {
      dq = q + (nodes[j] - nodes[l - 1]) * dq;
      q *= nodes[j] - nodes[l - 1];
      d(j, l) = dq;
    }
  }
  return d;
}

Matrix newton_diff_coeff_matrix(const std::vector<double>& nodes) {
  check_nodes(nodes, "newton_diff_coeff_matrix");
  const std::size_t n1 = nodes.size();
  Matrix g(n1, n1);
  // column recurrence from Q_{l+1} = (x - p_l) Q_l:
  //   G(r, l+1) = [r == l] + G(r-1, l) + (p_r - p_l) G(r, l)
  for (std::size_t l = 0; l + 1 < n1; ++l) {
    g(l, l + 1) = 1.0 + (l > 0 ? g(l - 1, l) : 0.0) + (nodes[l] - nodes[l]) * g(l, l);
    for (std::size_t r = 0; r < l; ++r)
      g(r, l + 1) = (r > 0 ? g(r - 1, l) : 0.0) + (nodes[r] - nodes[l]) * g(r, l);
  }
  return g;
}

Matrix chebyshev_vandermonde(const std::vector<double>& nodes) {
  check_nodes(nodes, "chebyshev_vandermonde");
  const std::size_t n1 = nodes.size();
  Matrix v(n1, n1);
  for (std::size_t j = 0; j < n1; ++j) {
    const double x = nodes[j];
    double tkm1 = 1.0, tk = x;
    v(j, 0) = 1.0;
    for (std::size_t k = 1; k < n1; ++k) {
      v(j, k) = tk;
      const double tnext = 2.0 * x * tk - tkm1;
      tkm1 = tk;
      tk = tnext;
    }
  }
  return v;
}

Matrix chebyshev_diff_matrix(const std::vector<double>& nodes) {
  check_nodes(nodes, "chebyshev_diff_matrix");
  const std::size_t n1 = nodes.size();
  Matrix d(n1, n1);
  for (std::size_t j = 0; j < n1; ++j) {
    const double x = nodes[j];
    double ukm1 = 1.0, uk = 2.0 * x;  // U_0, U_1
    d(j, 0) = 0.0;
    for (std::size_t l = 1; l < n1; ++l) {
      d(j, l) = static_cast<double>(l) * ukm1;  // T'_l = l U_{l-1}
      const double unext = 2.0 * x * uk - ukm1;
      ukm1 = uk;
      uk = unext;
    }
  }
  return d;
}

Matrix chebyshev_diff_coeff_matrix(std::size_t size) {
  Matrix g(size, size);
  // T'_l = l T_0 + 2l T_2 + ... for odd l, 2l T_1 + 2l T_3 + ... for even l
  for (std::size_t l = 1; l < size; ++l)
    for (std::size_t r = (l - 1) % 2; r < l; r += 2)
      g(r, l) = (r == 0 ? 1.0 : 2.0) * static_cast<double>(l);
  return g;
}

LuFactors lu_factorize(const Matrix& v) {
  if (v.rows() != v.cols()) throw ArgumentError("lu_factorize: matrix not square");
  const std::size_t n = v.rows();
  LuFactors f{Matrix(n, n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k; j < n; ++j) {
      double s = v(k, j);
      for (std::size_t t = 0; t < k; ++t) s -= f.L(k, t) * f.U(t, j);
      f.U(k, j) = s;
    }
    if (f.U(k, k) == 0.0)
      throw FactorizationError("lu_factorize: zero pivot at position " + std::to_string(k) +
                               "; reorder the nodes");
    f.L(k, k) = 1.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      double s = v(i, k);
      for (std::size_t t = 0; t < k; ++t) s -= f.L(i, t) * f.U(t, k);
      f.L(i, k) = s / f.U(k, k);
    }
  }
  return f;
}

std::vector<double> tri_block_solve(const Matrix& t, Triangle shape, std::size_t r,
                                    std::vector<double> rhs) {
  if (t.rows() != t.cols()) throw ArgumentError("tri_block_solve: matrix not square");
  if (r > t.rows()) throw ArgumentError("tri_block_solve: block exceeds matrix");
  if (rhs.size() != r) throw ArgumentError("tri_block_solve: rhs length mismatch");
  if (shape == Triangle::lower) {
    for (std::size_t i = 0; i < r; ++i) {
      double s = rhs[i];
      for (std::size_t j = 0; j < i; ++j) s -= t(i, j) * rhs[j];
      if (t(i, i) == 0.0) throw FactorizationError("tri_block_solve: zero diagonal");
      rhs[i] = s / t(i, i);
    }
  } else {
    for (std::size_t ii = r; ii-- > 0;) {
      double s = rhs[ii];
      for (std::size_t j = ii + 1; j < r; ++j) s -= t(ii, j) * rhs[j];
      if (t(ii, ii) == 0.0) throw FactorizationError("tri_block_solve: zero diagonal");
      rhs[ii] = s / t(ii, ii);
    }
  }
  return rhs;
}

Matrix tri_inverse(const Matrix& t, Triangle shape) {
  if (t.rows() != t.cols()) throw ArgumentError("tri_inverse: matrix not square");
  const std::size_t n = t.rows();
  Matrix inv(n, n);
  std::vector<double> e(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(e.begin(), e.end(), 0.0);
    e[c] = 1.0;
    auto col = tri_block_solve(t, shape, n, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

AxisBasis make_axis_basis(BasisKind kind, const std::vector<double>& nodes) {
  AxisBasis b;
  b.kind = kind;
  b.nodes = nodes;
  if (kind == BasisKind::newton) {
    b.V = newton_vandermonde(nodes);
    b.L = b.V;
    b.U = Matrix::identity(nodes.size());
    b.unit_upper = true;
    b.D = newton_diff_matrix(nodes);
    b.G = newton_diff_coeff_matrix(nodes);
  } else {
    b.V = chebyshev_vandermonde(nodes);
    auto lu = lu_factorize(b.V);
    b.L = std::move(lu.L);
    b.U = std::move(lu.U);
    b.unit_upper = false;
    b.D = chebyshev_diff_matrix(nodes);
    b.G = chebyshev_diff_coeff_matrix(nodes.size());
  }
  return b;
}

}  // namespace fnt
