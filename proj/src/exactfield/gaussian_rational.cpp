#include "qlax/exactfield/gaussian_rational.hpp"

#include <functional>
#include <ostream>
#include <regex>

#include "qlax/errors.hpp"

namespace qlax {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero Gaussian rational");
  if (sgn(im_) == 0) return GaussianRational(mpq_class(1) / re_);
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero Gaussian rational");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  GaussianRational result(1);
  GaussianRational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string out;
  if (sgn(re_) != 0) {
    out = re_.get_str();
    out += sgn(im_) > 0 ? "+" : "-";
    mpq_class mag = abs(im_);
    out += mag.get_str();
  } else {
    out = im_.get_str();
  }
  out += "*i";
  return out;
}

namespace {

mpq_class parse_rational(std::string_view text, std::string_view whole) {
  static const std::regex pattern(R"([+-]?[0-9]+(/[0-9]+)?)");
  std::string s(text);
  if (!std::regex_match(s, pattern)) {
    throw LiteralParseError("malformed exact literal '" + std::string(whole) + "'");
  }
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  if (slash != std::string::npos && mpz_class(s.substr(slash + 1)) == 0) {
    throw LiteralParseError("zero denominator in literal '" + std::string(whole) + "'");
  }
  mpq_class q(s, 10);
  q.canonicalize();
  return q;
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  if (text.empty()) throw LiteralParseError("empty exact literal");
  constexpr std::string_view suffix = "*i";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix) {
    return GaussianRational(parse_rational(text, text));
  }
  std::string_view body = text.substr(0, text.size() - suffix.size());
  // The separating sign is the last '+' or '-' that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {mpq_class(0), parse_rational(body, text)};
  return {parse_rational(body.substr(0, split), text), parse_rational(body.substr(split), text)};
}

std::size_t GaussianRational::hash() const {
  std::hash<std::string> h;
  // Cheap enough: only used for hashing monomial-free constants in tests.
  return h(to_string());
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

GaussianRational random_gaussian_rational(std::mt19937_64& rng, long bound, bool complex) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  mpq_class re(num(rng), den(rng));
  re.canonicalize();
  if (!complex) return GaussianRational(re);
  mpq_class im(num(rng), den(rng));
  im.canonicalize();
  return {re, im};
}

GaussianRational random_nonzero_gaussian_rational(std::mt19937_64& rng, long bound, bool complex) {
  for (;;) {
    GaussianRational z = random_gaussian_rational(rng, bound, complex);
    if (!z.is_zero()) return z;
  }
}

}  // namespace qlax
