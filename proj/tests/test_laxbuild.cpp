#include <doctest.h>

#include "qlax/laxbuild/laxbuild.hpp"

using namespace qlax;

TEST_CASE("four-dimensional Lax pair") {
  auto r = verify_lax4d();
  for (int k = 0; k < 6; ++k) {
    CHECK(r.residual_zero[k]);
    CHECK(r.delta_constraint[k]);
  }
  for (int d = 0; d < 4; ++d) {
    CHECK(r.riccati[d]);
    CHECK(r.direction[d].degree_at_most_one);
    CHECK(r.direction[d].leading_diagonal);
    CHECK(r.direction[d].constant_antidiagonal);
  }
  CHECK(r.direction[0].leading_invertible);
  CHECK_FALSE(r.direction[3].leading_invertible);
  CHECK(r.free_value_recovered);
  CHECK(r.perturbed_delta_detected);
  CHECK(r.verified());
}

TEST_CASE("direction matrix values") {
  std::array<std::map<long, RationalExpr>, 4> v;
  v[0][0] = 2;
  v[3][0] = 3;
  LatticePatch p(PatchKind::unreduced_u, ParameterSequences::explicit_values(v));
  p.set(LatticePoint{}, 5);
  p.set(point(1, 0, 0, 0), 7);
  p.set(point(0, 0, 0, 1), 11);
  RationalExpr mu(sym("mu"));
  ExactMatrix l1 = build_direction_matrix(1, LatticePoint{}, p, mu);
  CHECK(equal(l1, make_matrix<RationalExpr>(mu / 2, -7, RationalExpr(1) / 5, -mu * 7 / 10)));
  ExactMatrix l4 = build_direction_matrix(4, LatticePoint{}, p, mu);
  CHECK(equal(l4, make_matrix<RationalExpr>(-3 * mu, -11, RationalExpr(1) / 5, 0)));
  p.set(LatticePoint{}, 0);
  CHECK_THROWS_AS(build_direction_matrix(1, LatticePoint{}, p, mu), ZeroDenominator);
}

TEST_CASE("reduced decoupling factors") {
  PainleveSymbols s;
  ExactConfig c = s.generic();
  RationalExpr x(sym("x"));
  auto b = reduced_delta_bridge(c, x);
  CHECK(b.sp == (1 - c.q * c.q * x * x) * (1 - c.a0 * c.a0 * c.a2 * c.a2 * x * x) * (1 - c.a0 * c.a0 * x * x));
  CHECK(b.iii == (1 - c.a0 * c.a0 * c.a2 * c.a2 * x * x) * (1 - c.a0 * c.a0 * x * x));
  CHECK(b.siii == 1 - c.a0 * c.a0 * x * x);
  CHECK(b.iv == RationalExpr(1));
  CHECK(b.delta1 == 1 / (1 - x * x));
}

TEST_CASE("lattice decoupling factors reduce to the reduced ones") {
  auto seq = ParameterSequences::reduced(RationalExpr(sym("alpha_hat")), RationalExpr(sym("beta_hat")),
                                         RationalExpr(sym("gamma_hat")), RationalExpr(sym("lambda")),
                                         RationalExpr(sym("q")));
  RationalExpr ah(sym("alpha_hat")), bh(sym("beta_hat")), gh(sym("gamma_hat")), q(sym("q")), lam(sym("lambda"));
  RationalExpr x(sym("x"));
  RationalExpr mu = x * ah;
  ExactConfig c = ExactConfig::make(RationalExpr(sym("f0")), RationalExpr(sym("f1")), q * ah / gh, bh / ah, lam, q);
  auto b = reduced_delta_bridge(c, x);
  auto d = DecouplingFactors::lattice();
  LatticePoint o;
  CHECK(d.value(1, o, seq, mu) == b.delta1);
  CHECK(d.value(2, o, seq, mu) == b.delta2);
  CHECK(d.value(3, o, seq, mu) == b.delta3);
  CHECK(d.value(4, o, seq, mu) == RationalExpr(1));
}
