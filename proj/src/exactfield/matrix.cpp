#include "qlax/exactfield/matrix.hpp"

#include <algorithm>

namespace qlax {

std::vector<ExactMatrix> matrix_coefficients(const ExactMatrix& m, Symbol s) {
  std::vector<std::vector<RationalExpr>> entries;
  std::size_t n = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      entries.push_back(coefficients_in(m(r, c), s));
      n = std::max(n, entries.back().size());
    }
  std::vector<ExactMatrix> out(n, ExactMatrix::Constant(RationalExpr(0)));
  for (int k = 0; k < 4; ++k)
    for (std::size_t p = 0; p < entries[k].size(); ++p) out[p](k / 2, k % 2) = entries[k][p];
  return out;
}

}  // namespace qlax
