#include "qlax/exactfield/rational_expr.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "qlax/errors.hpp"

namespace qlax {

namespace {

using Factor = RationalExpr::Factor;

struct Split {
  GaussianRational coeff;
  Monomial mono;
  Polynomial monic;  // content-free, leading coefficient 1
};

Split split_content(const Polynomial& p) {
  Split s;
  s.mono = p.monomial_content();
  Polynomial r = s.mono.is_one() ? p : p.divided_by(s.mono);
  s.coeff = r.leading().coeff;
  s.monic = s.coeff.is_one() ? std::move(r) : r.scaled(s.coeff.inverse());
  return s;
}

bool same_poly(const Polynomial& a, const Polynomial& b) {
  return a.size() == b.size() && a == b;
}

// Appends monic^mult to a factor list, splitting off known factors that divide it.
void add_factor(std::vector<Factor>& den, Polynomial monic, std::uint32_t mult) {
  if (mult == 0 || monic.is_constant()) return;
  for (auto& f : den) {
    if (same_poly(f.poly, monic)) {
      f.multiplicity += mult;
      return;
    }
  }
  for (auto& f : den) {
    if (f.poly.size() >= monic.size()) continue;
    while (auto quot = monic.try_divide(f.poly)) {
      f.multiplicity += mult;
      monic = std::move(*quot);
      if (monic.is_constant()) return;
    }
  }
  for (auto& f : den) {
    if (same_poly(f.poly, monic)) {
      f.multiplicity += mult;
      return;
    }
  }
  den.push_back(Factor{std::move(monic), mult});
}

void merge_sum(std::vector<Factor>& den, const std::vector<Factor>& other, std::uint32_t scale = 1) {
  for (const auto& g : other) {
    bool found = false;
    for (auto& f : den) {
      if (same_poly(f.poly, g.poly)) {
        f.multiplicity += g.multiplicity * scale;
        found = true;
        break;
      }
    }
    if (!found) den.push_back(Factor{g.poly, g.multiplicity * scale});
  }
}

// Divides num by as many copies of the factors in den as possible.
void cross_cancel(Polynomial& num, std::vector<Factor>& den) {
  for (auto& f : den) {
    while (f.multiplicity > 0) {
      auto quot = num.try_divide(f.poly);
      if (!quot) break;
      num = std::move(*quot);
      --f.multiplicity;
    }
  }
  std::erase_if(den, [](const Factor& f) { return f.multiplicity == 0; });
}

void cancel_monomial(Polynomial& num, Monomial& den_mono) {
  if (den_mono.is_one() || num.is_zero()) return;
  Monomial g = Monomial::gcd(num.monomial_content(), den_mono);
  if (g.is_one()) return;
  num = num.divided_by(g);
  den_mono = g.quotient_of(den_mono);
}

Polynomial expand_factors(const Monomial& mono, const std::vector<Factor>& den) {
  Polynomial d(mono, GaussianRational(1));
  for (const auto& f : den) d *= f.poly.pow(f.multiplicity);
  return d;
}

}  // namespace

// ---------------------------------------------------------------- basics

RationalExpr RationalExpr::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("fraction with zero denominator");
  if (num.is_zero()) return {};
  Split s = split_content(den);
  std::vector<Factor> factors;
  add_factor(factors, std::move(s.monic), 1);
  RationalExpr r;
  r.num_ = s.coeff.is_one() ? num : num.scaled(s.coeff.inverse());
  r.den_mono_ = std::move(s.mono);
  r.den_ = std::move(factors);
  r.normalize();
  return r;
}

void RationalExpr::normalize() {
  if (num_.is_zero()) {
    den_mono_ = Monomial();
    den_.clear();
    return;
  }
  cancel_monomial(num_, den_mono_);
  cancel_factors();
}

void RationalExpr::cancel_factors() {
  cross_cancel(num_, den_);
}

GaussianRational RationalExpr::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value of a non-constant expression");
  return num_.constant_value();
}

Polynomial RationalExpr::denominator() const { return expand_factors(den_mono_, den_); }

bool RationalExpr::denominator_contains(Symbol s) const {
  if (den_mono_.degree(s) > 0) return true;
  return std::any_of(den_.begin(), den_.end(), [&](const Factor& f) { return f.poly.contains(s); });
}

bool RationalExpr::contains(Symbol s) const { return num_.contains(s) || denominator_contains(s); }

std::vector<Symbol> RationalExpr::free_symbols() const {
  std::set<Symbol> all;
  for (Symbol s : num_.free_symbols()) all.insert(s);
  for (const auto& [id, e] : den_mono_.factors()) all.insert(Symbol::from_id(id));
  for (const auto& f : den_)
    for (Symbol s : f.poly.free_symbols()) all.insert(s);
  return {all.begin(), all.end()};
}

// ---------------------------------------------------------------- arithmetic

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalExpr& RationalExpr::operator+=(const RationalExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (is_polynomial() && o.is_polynomial()) {
    num_ += o.num_;
    return *this;
  }
  bool same_den = den_mono_ == o.den_mono_ && den_.size() == o.den_.size() &&
                  std::equal(den_.begin(), den_.end(), o.den_.begin(), [](const Factor& a, const Factor& b) {
                    return a.multiplicity == b.multiplicity && same_poly(a.poly, b.poly);
                  });
  if (same_den) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  Monomial lmono = Monomial::lcm(den_mono_, o.den_mono_);
  std::vector<Factor> common = den_;
  for (const auto& g : o.den_) {
    auto it = std::find_if(common.begin(), common.end(), [&](const Factor& f) { return same_poly(f.poly, g.poly); });
    if (it == common.end()) {
      common.push_back(g);
    } else {
      it->multiplicity = std::max(it->multiplicity, g.multiplicity);
    }
  }
  auto multiplier = [&](const Monomial& mono, const std::vector<Factor>& den) {
    Polynomial m(mono.quotient_of(lmono), GaussianRational(1));
    for (const auto& f : common) {
      std::uint32_t have = 0;
      for (const auto& g : den)
        if (same_poly(f.poly, g.poly)) have = g.multiplicity;
      if (f.multiplicity > have) m *= f.poly.pow(f.multiplicity - have);
    }
    return m;
  };
  Polynomial a = num_ * multiplier(den_mono_, den_);
  Polynomial b = o.num_ * multiplier(o.den_mono_, o.den_);
  num_ = std::move(a) + b;
  den_mono_ = std::move(lmono);
  den_ = std::move(common);
  normalize();
  return *this;
}

RationalExpr& RationalExpr::operator-=(const RationalExpr& o) { return *this += -o; }

RationalExpr& RationalExpr::operator*=(const RationalExpr& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalExpr();
  if (o.is_constant()) {
    num_ = num_.scaled(o.num_.constant_value());
    return *this;
  }
  if (is_constant()) {
    GaussianRational c = num_.constant_value();
    *this = o;
    num_ = num_.scaled(c);
    return *this;
  }
  Polynomial bnum = o.num_;
  Monomial bmono = o.den_mono_;
  std::vector<Factor> bden = o.den_;
  cancel_monomial(num_, bmono);
  cancel_monomial(bnum, den_mono_);
  cross_cancel(num_, bden);
  cross_cancel(bnum, den_);
  num_ *= bnum;
  den_mono_ = den_mono_ * bmono;
  merge_sum(den_, bden);
  return *this;
}

RationalExpr RationalExpr::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero expression");
  Split s = split_content(num_);
  RationalExpr r;
  r.num_ = denominator();
  if (!s.coeff.is_one()) r.num_ = r.num_.scaled(s.coeff.inverse());
  r.den_mono_ = std::move(s.mono);
  add_factor(r.den_, std::move(s.monic), 1);
  return r;
}

RationalExpr& RationalExpr::operator/=(const RationalExpr& o) {
  if (o.is_zero()) throw DivisionByZero("division by the zero expression");
  if (o.is_constant()) {
    num_ = num_.scaled(o.num_.constant_value().inverse());
    return *this;
  }
  return *this *= o.inverse();
}

RationalExpr RationalExpr::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) return RationalExpr(1);
  auto ue = static_cast<std::uint32_t>(e);
  RationalExpr r;
  r.num_ = num_.pow(ue);
  r.den_mono_ = den_mono_.pow(ue);
  r.den_ = den_;
  for (auto& f : r.den_) f.multiplicity *= ue;
  return r;
}

bool operator==(const RationalExpr& a, const RationalExpr& b) {
  if (a.is_polynomial() && b.is_polynomial()) return a.num_ == b.num_;
  return (a - b).is_zero();
}

std::optional<GaussianRational> RationalExpr::evaluate(const Point& point) const {
  GaussianRational den = Polynomial(den_mono_, GaussianRational(1)).evaluate(point);
  for (const auto& f : den_) den *= f.poly.evaluate(point).pow(f.multiplicity);
  if (den.is_zero()) return std::nullopt;
  return num_.evaluate(point) / den;
}

std::string RationalExpr::to_string() const {
  if (is_polynomial()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  std::vector<std::string> parts;
  if (!den_mono_.is_one()) parts.push_back(den_mono_.to_string());
  for (const auto& f : den_) {
    std::string p = "(" + f.poly.to_string() + ")";
    if (f.multiplicity > 1) p += "^" + std::to_string(f.multiplicity);
    parts.push_back(p);
  }
  std::string d;
  for (std::size_t k = 0; k < parts.size(); ++k) d += (k ? "*" : "") + parts[k];
  if (parts.size() > 1 || (den_.empty() && den_mono_.factors().size() > 1)) d = "(" + d + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const RationalExpr& e) { return os << e.to_string(); }

// ---------------------------------------------------------------- substitution

class Substituter {
 public:
  explicit Substituter(const Bindings& b) {
    for (const auto& [s, v] : b) {
      if (v.is_constant()) {
        constants_.emplace(s, v.constant_value());
      } else {
        values_.emplace(s, v);
      }
    }
  }

  RationalExpr poly(const Polynomial& p) const {
    Polynomial n = constants_.empty() ? p : p.partial_evaluate(constants_);
    Monomial dm;
    std::vector<Factor> df;
    for (const auto& [s, v] : values_) {
      std::uint32_t d = n.degree(s);
      if (d == 0) continue;
      auto c = n.coefficients_in(s);
      const Polynomial& vn = v.num_;
      if (v.is_polynomial()) {
        Polynomial acc = c[d];
        for (std::uint32_t k = d; k-- > 0;) acc = acc * vn + c[k];
        n = std::move(acc);
        continue;
      }
      Polynomial vd = v.denominator();
      std::vector<Polynomial> dpow{Polynomial(1)};
      for (std::uint32_t k = 1; k <= d; ++k) dpow.push_back(dpow.back() * vd);
      Polynomial acc = c[d];
      for (std::uint32_t k = d; k-- > 0;) acc = acc * vn + c[k] * dpow[d - k];
      n = std::move(acc);
      dm = dm * v.den_mono_.pow(d);
      merge_sum(df, v.den_, d);
    }
    RationalExpr r;
    r.num_ = std::move(n);
    r.den_mono_ = std::move(dm);
    r.den_ = std::move(df);
    r.normalize();
    return r;
  }

  RationalExpr expr(const RationalExpr& e) const {
    RationalExpr num = poly(e.num_);
    RationalExpr den = poly(Polynomial(e.den_mono_, GaussianRational(1)));
    if (den.is_zero()) throw SubstitutionSingular("denominator monomial vanishes under substitution");
    for (const auto& f : e.den_) {
      RationalExpr g = poly(f.poly);
      if (g.is_zero()) throw SubstitutionSingular("denominator factor " + f.poly.to_string() + " vanishes");
      den *= g.pow(f.multiplicity);
    }
    return num / den;
  }

 private:
  Point constants_;
  std::map<Symbol, RationalExpr> values_;
};

RationalExpr combine(ArithOp op, const RationalExpr& a, const RationalExpr& b) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      return a / b;
  }
  return {};
}

RationalExpr substitute(const RationalExpr& e, const Bindings& bindings) {
  Bindings used;
  for (const auto& [s, v] : bindings)
    if (e.contains(s)) used.emplace(s, v);
  if (used.empty()) return e;
  return Substituter(used).expr(e);
}

RationalExpr substitute(const RationalExpr& e, const Point& point) {
  Bindings b;
  for (const auto& [s, v] : point)
    if (e.contains(s)) b.emplace(s, RationalExpr(v));
  if (b.empty()) return e;
  return Substituter(b).expr(e);
}

bool is_zero(const RationalExpr& e) { return e.is_zero(); }

std::vector<RationalExpr> coefficients_in(const RationalExpr& e, Symbol s) {
  if (e.denominator_contains(s)) throw DenominatorContainsSymbol("denominator contains " + s.name());
  std::vector<RationalExpr> out;
  Polynomial den = e.denominator();
  RationalExpr inv = RationalExpr(1) / RationalExpr(den);
  for (auto& c : e.numerator().coefficients_in(s)) out.push_back(RationalExpr(std::move(c)) * inv);
  if (out.empty()) out.emplace_back(0);
  return out;
}

std::uint32_t numerator_degree(const RationalExpr& e, Symbol s) { return e.numerator().degree(s); }

RationalExpr from_coefficients(const std::vector<RationalExpr>& coeffs, Symbol s) {
  RationalExpr acc;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * RationalExpr(s) + coeffs[k];
  return acc;
}

std::optional<RationalExpr> solve_affine(const RationalExpr& e, Symbol s) {
  auto c = e.numerator().coefficients_in(s);
  if (c.size() != 2 || c[1].is_zero()) return std::nullopt;
  return -RationalExpr(c[0]) / RationalExpr(c[1]);
}

}  // namespace qlax
