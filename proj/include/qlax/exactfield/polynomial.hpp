#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlax/exactfield/gaussian_rational.hpp"
#include "qlax/exactfield/symbol.hpp"

namespace qlax {

/// Power product of symbols with non-negative exponents, stored sparsely by symbol id.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (symbol id, exponent > 0)

  Monomial() = default;
  static Monomial of(Symbol s, std::uint32_t exponent = 1);

  bool is_one() const { return factors_.empty(); }
  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree(Symbol s) const;
  std::uint32_t total_degree() const;

  Monomial operator*(const Monomial& o) const;
  Monomial pow(std::uint32_t e) const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial without(Symbol s) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  /// Lexicographic order, lower symbol id most significant: +1 if a > b.
  static int compare(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Strict "greater" in lex order; terms are stored leading-first.
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) > 0; }
};

struct Term {
  Monomial monomial;
  GaussianRational coeff;
};

using Point = std::map<Symbol, GaussianRational>;

/// Sparse multivariate polynomial over Q(i). Canonical: terms sorted leading-first,
/// no zero coefficients, no repeated monomials; equal polynomials have identical terms.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(GaussianRational c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(GaussianRational(c)) {}  // NOLINT
  Polynomial(Symbol s);  // NOLINT
  Polynomial(const Monomial& m, GaussianRational c);

  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  GaussianRational constant_value() const;  // requires is_constant()
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const GaussianRational& c) const;
  Polynomial times(const Monomial& m) const;
  Polynomial pow(std::uint32_t e) const;

  std::uint32_t degree(Symbol s) const;
  bool contains(Symbol s) const { return degree(s) > 0; }
  std::vector<Symbol> free_symbols() const;
  /// c_0..c_d with p = sum c_k s^k, d = degree(s).
  std::vector<Polynomial> coefficients_in(Symbol s) const;

  /// Largest monomial dividing every term (one for the zero polynomial).
  Monomial monomial_content() const;
  Polynomial divided_by(const Monomial& m) const;  // requires m | every term
  /// Exact quotient if d divides *this, else nullopt. d must be nonzero.
  std::optional<Polynomial> try_divide(const Polynomial& d) const;

  /// Full evaluation; throws std::out_of_range if a symbol is unbound.
  GaussianRational evaluate(const Point& point) const;
  /// Binds whichever symbols the point provides.
  Polynomial partial_evaluate(const Point& point) const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace qlax
