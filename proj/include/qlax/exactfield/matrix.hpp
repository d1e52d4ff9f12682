#pragma once

#include <Eigen/Core>
#include <complex>

#include "qlax/exactfield/rational_expr.hpp"

namespace Eigen {

template <>
struct NumTraits<qlax::RationalExpr> : GenericNumTraits<qlax::RationalExpr> {
  using Real = qlax::RationalExpr;
  using NonInteger = qlax::RationalExpr;
  using Nested = qlax::RationalExpr;
  using Literal = qlax::RationalExpr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 100,
  };
};

}  // namespace Eigen

namespace qlax {

template <typename S>
using Matrix2 = Eigen::Matrix<S, 2, 2>;

using ExactMatrix = Matrix2<RationalExpr>;
using FloatMatrix = Matrix2<std::complex<double>>;

template <typename S>
Matrix2<S> make_matrix(S a, S b, S c, S d) {
  Matrix2<S> m;
  m(0, 0) = std::move(a);
  m(0, 1) = std::move(b);
  m(1, 0) = std::move(c);
  m(1, 1) = std::move(d);
  return m;
}

/// Product without Eigen's expression templates; keeps the exact kernels in control of the
/// operation order.
template <typename S>
Matrix2<S> mul(const Matrix2<S>& a, const Matrix2<S>& b) {
  return make_matrix<S>(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                        a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
}

template <typename S>
S det(const Matrix2<S>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <typename S>
Matrix2<S> scaled(const Matrix2<S>& m, const S& c) {
  return make_matrix<S>(m(0, 0) * c, m(0, 1) * c, m(1, 0) * c, m(1, 1) * c);
}

inline bool is_zero(const ExactMatrix& m) {
  return m(0, 0).is_zero() && m(0, 1).is_zero() && m(1, 0).is_zero() && m(1, 1).is_zero();
}

inline ExactMatrix substitute(const ExactMatrix& m, const Bindings& b) {
  return make_matrix(substitute(m(0, 0), b), substitute(m(0, 1), b), substitute(m(1, 0), b), substitute(m(1, 1), b));
}

inline bool equal(const ExactMatrix& a, const ExactMatrix& b) {
  return a(0, 0) == b(0, 0) && a(0, 1) == b(0, 1) && a(1, 0) == b(1, 0) && a(1, 1) == b(1, 1);
}

/// Coefficient matrices of m in powers of s (all entries must have s-free denominators).
std::vector<ExactMatrix> matrix_coefficients(const ExactMatrix& m, Symbol s);

}  // namespace qlax
