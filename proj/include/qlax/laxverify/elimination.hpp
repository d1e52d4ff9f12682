#pragma once

#include <optional>
#include <vector>

#include "qlax/exactfield/rational_expr.hpp"

namespace qlax {

/// Sylvester resultant of a and b with respect to s (fraction-free elimination).
Polynomial resultant(const Polynomial& a, const Polynomial& b, Symbol s);

/// p with its monomial content removed.
Polynomial strip_monomial_content(const Polynomial& p);

struct TwoUnknownSolution {
  RationalExpr first, second;
  bool unique = false;  // some eliminant has degree one in the second unknown
};

/// Common root (u, v) of a polynomial system by eliminating u through resultants against
/// the lowest-degree pivot, solving a degree-one eliminant for v, then back-substituting.
/// Roots with u = 0 or v = 0 are discarded with the monomial content.
std::optional<TwoUnknownSolution> solve_two_unknowns(const std::vector<Polynomial>& eqs, Symbol u, Symbol v);

}  // namespace qlax
