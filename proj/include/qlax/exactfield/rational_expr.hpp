#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlax/exactfield/polynomial.hpp"

namespace qlax {

/// Multivariate rational function over Q(i).
///
/// The numerator is kept fully expanded. The denominator is kept as a monomial times a
/// list of polynomial factors with multiplicities; factors are monic, free of monomial
/// content and never constant. No polynomial GCD is computed: common factors are removed
/// by trial division against the known denominator factors, which is enough to keep
/// the expressions of this library small. Zero-ness is exact (empty numerator), so
/// equality is decided by cross-multiplication: a == b iff a - b has a zero numerator.
class RationalExpr {
 public:
  struct Factor {
    Polynomial poly;
    std::uint32_t multiplicity;
  };

  RationalExpr() = default;
  RationalExpr(GaussianRational c) : num_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  RationalExpr(long c) : num_(c) {}                          // NOLINT
  RationalExpr(int c) : num_(static_cast<long>(c)) {}        // NOLINT
  RationalExpr(Symbol s) : num_(s) {}                        // NOLINT
  RationalExpr(Polynomial p) : num_(std::move(p)) {}         // NOLINT

  /// num/den; throws DivisionByZero when den is the zero polynomial.
  static RationalExpr fraction(const Polynomial& num, const Polynomial& den);
  static RationalExpr i() { return RationalExpr(GaussianRational::i()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_mono_.is_one() && den_.empty(); }
  bool is_polynomial() const { return den_mono_.is_one() && den_.empty(); }
  GaussianRational constant_value() const;

  /// Expanded numerator and denominator (the pair is defined up to the cancellations
  /// performed so far).
  const Polynomial& numerator() const { return num_; }
  Polynomial denominator() const;
  const Monomial& denominator_monomial() const { return den_mono_; }
  const std::vector<Factor>& denominator_factors() const { return den_; }

  bool contains(Symbol s) const;
  bool denominator_contains(Symbol s) const;
  std::vector<Symbol> free_symbols() const;

  RationalExpr operator-() const;
  RationalExpr& operator+=(const RationalExpr& o);
  RationalExpr& operator-=(const RationalExpr& o);
  RationalExpr& operator*=(const RationalExpr& o);
  RationalExpr& operator/=(const RationalExpr& o);
  friend RationalExpr operator+(RationalExpr a, const RationalExpr& b) { return a += b; }
  friend RationalExpr operator-(RationalExpr a, const RationalExpr& b) { return a -= b; }
  friend RationalExpr operator*(RationalExpr a, const RationalExpr& b) { return a *= b; }
  friend RationalExpr operator/(RationalExpr a, const RationalExpr& b) { return a /= b; }
  friend bool operator==(const RationalExpr& a, const RationalExpr& b);

  RationalExpr inverse() const;
  RationalExpr pow(long e) const;

  /// Value at a point, or nullopt when the denominator vanishes there.
  std::optional<GaussianRational> evaluate(const Point& point) const;

  std::string to_string() const;

 private:
  friend class Substituter;
  void normalize();
  void cancel_factors();

  Polynomial num_;
  Monomial den_mono_;
  std::vector<Factor> den_;
};

std::ostream& operator<<(std::ostream& os, const RationalExpr& e);

using Bindings = std::map<Symbol, RationalExpr>;

enum class ArithOp { add, sub, mul, div };

/// Exact field arithmetic; div throws DivisionByZero when b is the zero expression.
RationalExpr combine(ArithOp op, const RationalExpr& a, const RationalExpr& b);

/// Simultaneous substitution. Binding values must not contain any bound symbol.
/// Throws SubstitutionSingular if a denominator becomes identically zero.
RationalExpr substitute(const RationalExpr& e, const Bindings& bindings);

/// Substitutes exact constants for symbols.
RationalExpr substitute(const RationalExpr& e, const Point& point);

/// Exact zero test: true only if the expanded numerator has no terms.
bool is_zero(const RationalExpr& e);

/// c_0..c_d with e = sum c_k s^k. Throws DenominatorContainsSymbol.
std::vector<RationalExpr> coefficients_in(const RationalExpr& e, Symbol s);

/// Degree of the numerator in s.
std::uint32_t numerator_degree(const RationalExpr& e, Symbol s);

/// Rebuilds sum c_k s^k.
RationalExpr from_coefficients(const std::vector<RationalExpr>& coeffs, Symbol s);

/// Root of an expression affine in s (a*s + b with a != 0); nullopt if the s-coefficient
/// vanishes identically or the numerator has degree > 1 in s.
std::optional<RationalExpr> solve_affine(const RationalExpr& e, Symbol s);

}  // namespace qlax
