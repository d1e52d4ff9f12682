#include <doctest.h>

#include <random>

#include "qlax/errors.hpp"
#include "qlax/exactfield/linear.hpp"
#include "qlax/exactfield/matrix.hpp"
#include "qlax/exactfield/rational_expr.hpp"

using namespace qlax;

namespace {

RationalExpr random_expr(std::mt19937_64& rng, const std::vector<Symbol>& syms) {
  // small random rational function: (c0 + c1*s_a + c2*s_b*s_c) / (1 + c3*s_d)
  std::uniform_int_distribution<std::size_t> pick(0, syms.size() - 1);
  auto c = [&] { return RationalExpr(random_gaussian_rational(rng, 9)); };
  RationalExpr num = c() + c() * RationalExpr(syms[pick(rng)]) + c() * RationalExpr(syms[pick(rng)]) * RationalExpr(syms[pick(rng)]);
  RationalExpr den = RationalExpr(1) + c() * RationalExpr(syms[pick(rng)]);
  if (den.is_zero()) den = RationalExpr(1);
  return num / den;
}

}  // namespace

TEST_CASE("gaussian rationals: unit and literals") {
  auto i = GaussianRational::i();
  CHECK(i * i == GaussianRational(-1));
  CHECK(GaussianRational::parse("3/4").to_string() == "3/4");
  CHECK(GaussianRational::parse("1/2+3/5*i") == GaussianRational(mpq_class(1, 2), mpq_class(3, 5)));
  CHECK(GaussianRational::parse("-2/3*i") == GaussianRational(mpq_class(0), mpq_class(-2, 3)));
  CHECK(GaussianRational::parse("-7") == GaussianRational(-7));
  CHECK_THROWS_AS(GaussianRational::parse("1/0"), LiteralParseError);
  CHECK_THROWS_AS(GaussianRational::parse("1 /2"), LiteralParseError);
  CHECK_THROWS_AS(GaussianRational::parse("x"), LiteralParseError);
  for (const char* lit : {"0", "5", "-5/3", "1/2+3/5*i", "1/2-3/5*i", "1*i", "-1*i", "4*i", "3/2-1*i"}) {
    auto z = GaussianRational::parse(lit);
    CHECK(GaussianRational::parse(z.to_string()) == z);
  }
}

TEST_CASE("combine examples") {
  Symbol x("x"), q("q");
  RationalExpr X(x), Q(q);
  CHECK(combine(ArithOp::add, X, -X).is_zero());
  CHECK(combine(ArithOp::mul, RationalExpr::i(), RationalExpr::i()) == RationalExpr(-1));
  RationalExpr r = combine(ArithOp::div, 1 - Q * Q * X * X, 1 - Q * X);
  CHECK(r == 1 + Q * X);
  CHECK(r.is_polynomial());
  CHECK_THROWS_AS(combine(ArithOp::div, X, X - X), DivisionByZero);
}

TEST_CASE("substitute examples") {
  Symbol a0("a0"), a1("a1"), a2("a2"), q("q"), f0("f0"), f1("f1"), f2("f2"), lam("lambda"), x("x");
  RationalExpr A0(a0), A1(a1), A2(a2), Q(q), F0(f0), F1(f1), F2(f2), L(lam), X(x);
  CHECK(substitute(A0 * A1 * A2 - Q, {{a2, Q / (A0 * A1)}}).is_zero());
  CHECK(substitute(F0 * F1 * F2, {{f2, L * L / (F0 * F1)}}) == L * L);
  CHECK(substitute(X * X, {{x, Q * X}}) == Q * Q * X * X);
  CHECK_THROWS_AS(substitute(1 / (A0 - A1), {{a0, A1}}), SubstitutionSingular);
  CHECK(substitute(A0 - 2 * A1, {{a0, Q}, {a1, X / Q}}) == Q - 2 * X / Q);
}

TEST_CASE("is_zero and coefficients_in examples") {
  Symbol x("x"), q("q"), a0("a0"), a1("a1");
  RationalExpr X(x), Q(q), A0(a0), A1(a1);
  CHECK(is_zero((1 - Q * X) * (1 + Q * X) - (1 - Q * Q * X * X)));
  CHECK_FALSE(is_zero(A0 - A1));

  auto c = coefficients_in(X * X, x);
  REQUIRE(c.size() == 3);
  CHECK(c[0].is_zero());
  CHECK(c[1].is_zero());
  CHECK(c[2] == RationalExpr(1));

  c = coefficients_in(1 + A0 * X + A1 * X, x);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == RationalExpr(1));
  CHECK(c[1] == A0 + A1);

  c = coefficients_in((1 - Q * Q * X * X) / Q, x);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1 / Q);
  CHECK(c[1].is_zero());
  CHECK(c[2] == -Q);

  CHECK_THROWS_AS(coefficients_in(1 / (1 - X), x), DenominatorContainsSymbol);
}

TEST_CASE("field axioms on random exact inputs") {
  std::mt19937_64 rng(11);
  std::vector<Symbol> syms{Symbol("u"), Symbol("v"), Symbol("w")};
  for (int t = 0; t < 1000; ++t) {
    auto a = random_expr(rng, syms), b = random_expr(rng, syms), c = random_expr(rng, syms);
    REQUIRE(((a + b) + c) == (a + (b + c)));
    REQUIRE(((a * b) * c) == (a * (b * c)));
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) REQUIRE((a / b) * b == a);
  }
}

TEST_CASE("substitute is a homomorphism") {
  std::mt19937_64 rng(12);
  Symbol u("u"), v("v"), w("w"), s("s");
  std::vector<Symbol> syms{u, v, w};
  for (int t = 0; t < 200; ++t) {
    auto a = random_expr(rng, syms), b = random_expr(rng, syms);
    Bindings bind{{u, RationalExpr(s) + random_gaussian_rational(rng, 5)}, {v, 1 / (RationalExpr(s) + 7)}};
    try {
      REQUIRE(substitute(a + b, bind) == substitute(a, bind) + substitute(b, bind));
      REQUIRE(substitute(a * b, bind) == substitute(a, bind) * substitute(b, bind));
    } catch (const SubstitutionSingular&) {
    }
  }
}

TEST_CASE("is_zero agrees with evaluation") {
  std::mt19937_64 rng(13);
  Symbol u("u"), v("v"), w("w");
  std::vector<Symbol> syms{u, v, w};
  int nonzero_seen = 0;
  for (int t = 0; t < 100; ++t) {
    auto a = random_expr(rng, syms), b = random_expr(rng, syms);
    RationalExpr zero = (a + b) * (a - b) - (a * a - b * b);
    CHECK(is_zero(zero));
    Point p{{u, random_gaussian_rational(rng)}, {v, random_gaussian_rational(rng)}, {w, random_gaussian_rational(rng)}};
    auto val = zero.evaluate(p);
    if (val) CHECK(val->is_zero());
    auto nz = a - b + 1;
    auto valnz = nz.evaluate(p);
    if (valnz && !valnz->is_zero()) {
      CHECK_FALSE(is_zero(nz));
      ++nonzero_seen;
    }
  }
  CHECK(nonzero_seen > 0);
}

TEST_CASE("coefficients_in round trip") {
  std::mt19937_64 rng(14);
  Symbol u("u"), v("v"), s("s");
  for (int t = 0; t < 100; ++t) {
    RationalExpr e = 0;
    for (int k = 0; k < 4; ++k) e += RationalExpr(random_gaussian_rational(rng, 20)) * RationalExpr(s).pow(k) * (RationalExpr(u) + k);
    e /= (RationalExpr(v) + 3);
    CHECK(from_coefficients(coefficients_in(e, s), s) == e);
  }
}

TEST_CASE("exact nullspace") {
  std::vector<ExactRow> rows{{1, 2, 3}, {2, 4, 6}};
  auto ns = nullspace(rows, 3);
  CHECK(ns.size() == 2);
  for (auto& v : ns) CHECK((v[0] + 2 * v[1] + 3 * v[2]).is_zero());
}

TEST_CASE("matrix helpers") {
  Symbol x("x");
  RationalExpr X(x);
  auto m = make_matrix<RationalExpr>(X, 1, -1, X * X);
  CHECK(det(m) == X * X * X + 1);
  auto coeffs = matrix_coefficients(m, x);
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[1](0, 0) == RationalExpr(1));
  CHECK(coeffs[0](1, 0) == RationalExpr(-1));
}
