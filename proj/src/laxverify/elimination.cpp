#include "qlax/laxverify/elimination.hpp"

#include <algorithm>
#include <stdexcept>

namespace qlax {

Polynomial strip_monomial_content(const Polynomial& p) {
  if (p.is_zero()) return p;
  Monomial m = p.monomial_content();
  return m.is_one() ? p : p.divided_by(m);
}

namespace {

Polynomial bareiss_det(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(1);
  bool negate = false;
  Polynomial prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return Polynomial();
      std::swap(m[k], m[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto quot = t.try_divide(prev);
        if (!quot) throw std::logic_error("inexact Bareiss step");
        m[i][j] = std::move(*quot);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

Polynomial resultant(const Polynomial& a, const Polynomial& b, Symbol s) {
  auto ca = a.coefficients_in(s);
  auto cb = b.coefficients_in(s);
  const std::size_t m = ca.size() - 1, n = cb.size() - 1;
  if (m == 0) return a.pow(static_cast<std::uint32_t>(n));
  if (n == 0) return b.pow(static_cast<std::uint32_t>(m));
  if (m == 1 && n == 1) return ca[1] * cb[0] - ca[0] * cb[1];
  const std::size_t size = m + n;
  std::vector<std::vector<Polynomial>> syl(size, std::vector<Polynomial>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) syl[r][r + k] = ca[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) syl[n + r][r + k] = cb[n - k];
  return bareiss_det(std::move(syl));
}

std::optional<TwoUnknownSolution> solve_two_unknowns(const std::vector<Polynomial>& input, Symbol u, Symbol v) {
  std::vector<Polynomial> eqs;
  for (const auto& e : input) {
    Polynomial s = strip_monomial_content(e);
    if (s.is_zero()) continue;
    if (std::none_of(eqs.begin(), eqs.end(), [&](const Polynomial& o) { return o == s; })) eqs.push_back(std::move(s));
  }
  auto by_cost = [&](const Polynomial& a, const Polynomial& b) {
    auto da = a.degree(u), db = b.degree(u);
    if (da != db) return da < db;
    return a.size() < b.size();
  };
  std::vector<Polynomial> with_u, without_u;
  for (auto& e : eqs) (e.contains(u) ? with_u : without_u).push_back(e);
  if (with_u.empty()) return std::nullopt;
  std::sort(with_u.begin(), with_u.end(), by_cost);
  const Polynomial& pivot = with_u.front();

  std::vector<Polynomial> elim = without_u;
  for (std::size_t k = 1; k < with_u.size(); ++k) {
    Polynomial r = strip_monomial_content(resultant(pivot, with_u[k], u));
    if (!r.is_zero()) elim.push_back(std::move(r));
  }
  std::sort(elim.begin(), elim.end(), [](const Polynomial& a, const Polynomial& b) { return a.size() < b.size(); });

  TwoUnknownSolution sol;
  const Polynomial* linear = nullptr;
  for (const auto& e : elim)
    if (e.degree(v) == 1) {
      linear = &e;
      break;
    }
  if (!linear) return std::nullopt;
  auto vroot = solve_affine(RationalExpr(*linear), v);
  if (!vroot) return std::nullopt;
  sol.second = *vroot;
  for (const auto& e : elim)
    if (!substitute(RationalExpr(e), Bindings{{v, sol.second}}).is_zero()) return std::nullopt;

  for (const auto& e : with_u) {
    RationalExpr sub = substitute(RationalExpr(e), Bindings{{v, sol.second}});
    Polynomial n = sub.numerator();
    n = n.divided_by(Monomial::of(u, n.monomial_content().degree(u)));
    if (n.degree(u) != 1) continue;
    auto uroot = solve_affine(RationalExpr(n), u);
    if (!uroot) continue;
    sol.first = *uroot;
    sol.unique = true;
    return sol;
  }
  return std::nullopt;
}

}  // namespace qlax
