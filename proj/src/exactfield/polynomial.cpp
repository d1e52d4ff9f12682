#include "qlax/exactfield/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qlax {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Symbol s, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(s.id(), exponent);
  return m;
}

std::uint32_t Monomial::degree(Symbol s) const {
  for (const auto& [id, e] : factors_) {
    if (id == s.id()) return e;
    if (id > s.id()) break;
  }
  return 0;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() && b != o.factors_.end()) {
    if (a->first < b->first) {
      r.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.factors_.insert(r.factors_.end(), a, factors_.end());
  r.factors_.insert(r.factors_.end(), b, o.factors_.end());
  return r;
}

Monomial Monomial::pow(std::uint32_t e) const {
  if (e == 0) return {};
  Monomial r = *this;
  for (auto& f : r.factors_) f.second *= e;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  auto b = o.factors_.begin();
  for (const auto& [id, e] : factors_) {
    while (b != o.factors_.end() && b->first < id) ++b;
    if (b == o.factors_.end() || b->first != id || b->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  auto a = factors_.begin();
  for (const auto& [id, e] : o.factors_) {
    while (a != factors_.end() && a->first < id) ++a;
    std::uint32_t sub = (a != factors_.end() && a->first == id) ? a->second : 0;
    if (e > sub) r.factors_.emplace_back(id, e - sub);
  }
  return r;
}

Monomial Monomial::without(Symbol s) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first != s.id()) r.factors_.push_back(f);
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto j = b.factors_.begin();
  for (const auto& [id, e] : a.factors_) {
    while (j != b.factors_.end() && j->first < id) ++j;
    if (j != b.factors_.end() && j->first == id) r.factors_.emplace_back(id, std::min(e, j->second));
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first < j->first) {
      r.factors_.push_back(*i++);
    } else if (j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, std::max(i->second, j->second));
      ++i;
      ++j;
    }
  }
  r.factors_.insert(r.factors_.end(), i, a.factors_.end());
  r.factors_.insert(r.factors_.end(), j, b.factors_.end());
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first != j->first) return i->first < j->first ? 1 : -1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i != a.factors_.end()) return 1;
  if (j != b.factors_.end()) return -1;
  return 0;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [id, e] : factors_) {
    h ^= (static_cast<std::size_t>(id) * 0x100000001b3ULL + e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [id, e] : factors_) {
    if (!out.empty()) out += '*';
    out += Symbol::from_id(id).name();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------- Polynomial

namespace {

void normalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return Monomial::compare(a.monomial, b.monomial) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  terms = std::move(out);
}

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    int c = Monomial::compare(i->monomial, j->monomial);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back(subtract ? Term{j->monomial, -j->coeff} : *j);
      ++j;
    } else {
      GaussianRational s = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
      if (!s.is_zero()) out.push_back(Term{i->monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i != a.end(); ++i) out.push_back(*i);
  for (; j != b.end(); ++j) out.push_back(subtract ? Term{j->monomial, -j->coeff} : *j);
  return out;
}

}  // namespace

Polynomial::Polynomial(GaussianRational c) {
  if (!c.is_zero()) terms_.push_back(Term{Monomial(), std::move(c)});
}

Polynomial::Polynomial(Symbol s) { terms_.push_back(Term{Monomial::of(s), GaussianRational(1)}); }

Polynomial::Polynomial(const Monomial& m, GaussianRational c) {
  if (!c.is_zero()) terms_.push_back(Term{m, std::move(c)});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  Polynomial p;
  normalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

GaussianRational Polynomial::constant_value() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant: " + to_string());
  return terms_.empty() ? GaussianRational(0) : terms_[0].coeff;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.is_zero()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.is_zero()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 && a.terms_[0].monomial.is_one()) return b.scaled(a.terms_[0].coeff);
  if (b.size() == 1 && b.terms_[0].monomial.is_one()) return a.scaled(b.terms_[0].coeff);
  if (a.size() == 1 || b.size() == 1) {
    // A single term preserves the order of the other factor.
    const Polynomial& single = a.size() == 1 ? a : b;
    const Polynomial& other = a.size() == 1 ? b : a;
    Polynomial r;
    r.terms_.reserve(other.size());
    for (const auto& t : other.terms_) {
      r.terms_.push_back(Term{t.monomial * single.terms_[0].monomial, t.coeff * single.terms_[0].coeff});
    }
    return r;
  }
  std::unordered_map<Monomial, GaussianRational, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial);
      if (inserted) {
        it->second = s.coeff * t.coeff;
      } else {
        it->second += s.coeff * t.coeff;
      }
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) terms.push_back(Term{m, std::move(c)});
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return Monomial::compare(x.monomial, y.monomial) > 0; });
  Polynomial r;
  r.terms_ = std::move(terms);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (!(a.terms_[k].monomial == b.terms_[k].monomial) || !(a.terms_[k].coeff == b.terms_[k].coeff)) {
      return false;
    }
  }
  return true;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return {};
  Polynomial r = *this;
  if (c.is_one()) return r;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times(const Monomial& m) const {
  Polynomial r = *this;
  if (m.is_one()) return r;
  for (auto& t : r.terms_) t.monomial = t.monomial * m;
  return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

std::uint32_t Polynomial::degree(Symbol s) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree(s));
  return d;
}

std::vector<Symbol> Polynomial::free_symbols() const {
  std::set<std::uint32_t> ids;
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) ids.insert(f.first);
  }
  std::vector<Symbol> out;
  for (auto id : ids) out.push_back(Symbol::from_id(id));
  return out;
}

std::vector<Polynomial> Polynomial::coefficients_in(Symbol s) const {
  std::vector<std::vector<Term>> buckets(degree(s) + 1);
  for (const auto& t : terms_) buckets[t.monomial.degree(s)].push_back(Term{t.monomial.without(s), t.coeff});
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_[0].monomial;
  for (std::size_t k = 1; k < terms_.size() && !g.is_one(); ++k) g = Monomial::gcd(g, terms_[k].monomial);
  return g;
}

Polynomial Polynomial::divided_by(const Monomial& m) const {
  Polynomial r = *this;
  if (m.is_one()) return r;
  for (auto& t : r.terms_) t.monomial = m.quotient_of(t.monomial);
  return r;
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Polynomial();
  if (d.is_constant()) return scaled(d.constant_value().inverse());
  const Term& lead = d.leading();
  if (!lead.monomial.divides(leading().monomial)) return std::nullopt;
  GaussianRational lead_inv = lead.coeff.inverse();
  std::map<Monomial, GaussianRational, MonomialGreater> rem;
  for (const auto& t : terms_) rem.emplace(t.monomial, t.coeff);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.monomial.divides(top->first)) return std::nullopt;
    Monomial qm = lead.monomial.quotient_of(top->first);
    GaussianRational qc = top->second * lead_inv;
    for (const auto& t : d.terms_) {
      Monomial m = t.monomial * qm;
      GaussianRational c = t.coeff * qc;
      auto [it, inserted] = rem.try_emplace(std::move(m));
      if (inserted) {
        it->second = -c;
      } else {
        it->second -= c;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quotient.push_back(Term{std::move(qm), std::move(qc)});
  }
  Polynomial q;
  q.terms_ = std::move(quotient);  // generated in decreasing order
  return q;
}

GaussianRational Polynomial::evaluate(const Point& point) const {
  GaussianRational sum;
  std::map<std::pair<std::uint32_t, std::uint32_t>, GaussianRational> powers;
  for (const auto& t : terms_) {
    GaussianRational v = t.coeff;
    for (const auto& [id, e] : t.monomial.factors()) {
      auto key = std::make_pair(id, e);
      auto it = powers.find(key);
      if (it == powers.end()) {
        auto found = point.find(Symbol::from_id(id));
        if (found == point.end()) throw std::out_of_range("unbound symbol " + Symbol::from_id(id).name());
        it = powers.emplace(key, found->second.pow(e)).first;
      }
      v *= it->second;
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::partial_evaluate(const Point& point) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term r{Monomial(), t.coeff};
    for (const auto& [id, e] : t.monomial.factors()) {
      auto found = point.find(Symbol::from_id(id));
      if (found == point.end()) {
        r.monomial = r.monomial * Monomial::of(Symbol::from_id(id), e);
      } else {
        r.coeff *= found->second.pow(e);
      }
    }
    out.push_back(std::move(r));
  }
  return from_terms(std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coeff.to_string();
    bool complex = !t.coeff.is_real() && sgn(t.coeff.re()) != 0;
    if (!first) os << " + ";
    first = false;
    if (t.monomial.is_one()) {
      os << (complex ? "(" + c + ")" : c);
      continue;
    }
    if (!t.coeff.is_one()) os << (complex ? "(" + c + ")" : c) << "*";
    os << t.monomial.to_string();
  }
  return os.str();
}

std::size_t Polynomial::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) h = h * 31 + t.monomial.hash();
  return h;
}

}  // namespace qlax
