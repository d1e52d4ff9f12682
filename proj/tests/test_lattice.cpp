#include <doctest.h>

#include "qlax/lattice4d/lattice.hpp"

using namespace qlax;

namespace {

ParameterSequences constant_params(long alpha, long beta, long gamma, long k) {
  std::array<std::map<long, RationalExpr>, 4> v;
  for (long l = -3; l <= 6; ++l) {
    v[0][l] = alpha;
    v[1][l] = beta;
    v[2][l] = gamma;
    v[3][l] = k;
  }
  return ParameterSequences::explicit_values(v);
}

}  // namespace

TEST_CASE("h3 step example") {
  auto params = constant_params(1, 2, 3, 1);
  LatticePoint l;
  CHECK(step_equation({1, 2}, 1, 2, 3, l, params) == RationalExpr(-4));
}

TEST_CASE("d4 step example") {
  auto params = constant_params(1, 2, 3, 1);
  CHECK(step_equation({1, 4}, 1, 2, 4, LatticePoint{}, params) == RationalExpr(-3));
}

TEST_CASE("steps satisfy the relations") {
  auto params = ParameterSequences::free();
  RationalExpr u0(sym("U0")), ui(sym("Ui")), uj(sym("Uj"));
  LatticePoint l = point(1, -2, 0, 3);
  for (const auto& pr : all_pairs()) {
    RationalExpr uij = step_equation(pr, u0, ui, uj, l, params);
    CHECK(equation_residual(pr, u0, ui, uj, uij, l, params).is_zero());
  }
}

TEST_CASE("singular step") {
  auto params = constant_params(1, 1, 1, 1);
  // r = 1 and u_i = u_j makes the denominator vanish
  CHECK_THROWS_AS(step_equation({1, 2}, 1, 5, 5, LatticePoint{}, params), SingularStep);
  CHECK_THROWS_AS(step_equation({2, 4}, 1, 0, 5, LatticePoint{}, params), SingularStep);
}

TEST_CASE("missing values") {
  auto params = constant_params(1, 2, 3, 1);
  LatticePatch p(PatchKind::unreduced_u, params);
  p.set(LatticePoint{}, 1);
  CHECK_THROWS_AS(step_equation({1, 2}, p, LatticePoint{}), MissingValue);
  CHECK_THROWS_AS(params.alpha(40), MissingValue);
}

TEST_CASE("region membership") {
  CHECK(point(0, 1, 0, 0).in_r1());
  CHECK(point(0, 1, 1, 0).in_r2());
  CHECK_FALSE(point(0, 1, 3, 0).in_region());
}

TEST_CASE("point transformations") {
  LatticePoint p = point(0, 2, 2, 1);
  CHECK(apply_transform(TransformWord::parse("T1"), p) == point(1, 2, 2, 1));
  CHECK(apply_transform(TransformWord::parse("R1"), p) == point(0, 2, 1, 1));
  CHECK(apply_transform(TransformWord::parse("R1"), point(0, 2, 1, 1)) == point(0, 1, 1, 1));
  CHECK_THROWS_AS(apply_transform(TransformWord::parse("R1"), point(0, 0, 3, 0)), OutOfDomain);
  for (const auto& q : {point(0, 2, 2, 1), point(3, 2, 1, -1)}) {
    CHECK(apply_transform(TransformWord::parse("R1 R1"), q) == apply_transform(TransformWord::parse("T2^-1 T3^-1"), q));
    TransformWord w = TransformWord::parse("T2 R1 T4^-1 R1^-1");
    CHECK(apply_transform(w.inverse() * w, q) == q);
  }
}

TEST_CASE("parameter transformations") {
  auto ps = ParameterSequences::free();
  auto t1 = apply_transform(TransformWord::parse("T1"), ps);
  CHECK(t1.alpha(0) == ps.alpha(1));
  CHECK(t1.beta(0) == ps.beta(0));
  auto r1 = apply_transform(TransformWord::parse("R1"), ps);
  CHECK(r1.beta(5) == ps.gamma(4));
  CHECK(r1.gamma(5) == ps.beta(5));
  CHECK(r1.alpha(5) == ps.alpha(5));
  // R1^2 = T2^-1 T3^-1 composed with the double swap (the identity on slots)
  auto sq = apply_transform(TransformWord::parse("R1 R1"), ps);
  auto tt = apply_transform(TransformWord::parse("T2^-1 T3^-1"), ps);
  for (long l = -2; l <= 2; ++l)
    for (int s = 0; s < 4; ++s) CHECK(sq.value(s, l) == tt.value(s, l));
  // composition: (R1 T2)(beta_l) = R1(beta_(l+1)) = gamma_l
  CHECK(apply_transform(TransformWord::parse("R1 T2"), ps).beta(3) == ps.gamma(3));
}

TEST_CASE("patch transformation pulls values back") {
  LatticePatch p(PatchKind::unreduced_u, ParameterSequences::free());
  p.set(point(1, 1, 1, 0), 7);
  p.set(point(1, 1, 0, 0), 9);
  auto t = apply_transform(TransformWord::parse("T1"), p);
  CHECK(t.at(point(0, 1, 1, 0)) == RationalExpr(7));
  auto r = apply_transform(TransformWord::parse("R1"), p);
  // R1(1,2,1,0) = (1,1,1,0) on r1; R1(1,1,1,0) = (1,1,0,0) on r2
  CHECK(r.at(point(1, 2, 1, 0)) == RationalExpr(7));
  CHECK(r.at(point(1, 1, 1, 0)) == RationalExpr(9));
}

TEST_CASE("evolution audit on random exact data") {
  std::mt19937_64 rng(11);
  Box box = Box::sized(3, 3, 3, 2);
  for (int k = 0; k < 5; ++k) {
    std::array<std::map<long, RationalExpr>, 4> v;
    for (long l = 0; l <= 3; ++l)
      for (int s = 0; s < 4; ++s) v[s][l] = RationalExpr(random_nonzero_gaussian_rational(rng, 9));
    auto init = random_initial_patch(box, ParameterSequences::explicit_values(v), rng);
    auto [patch, audit] = evolve_patch(init, box);
    CHECK(audit.passed());
    CHECK(audit.audited > 0);
    CHECK(audit.agreeing == audit.audited);
    CHECK(patch.values().size() == box.points().size());
  }
}

TEST_CASE("corrupted equation is detected") {
  std::mt19937_64 rng(3);
  Box box = Box::sized(2, 2, 2, 2);
  auto params = constant_params(2, 3, 5, 7);
  params.corrupt_equation({1, 4}, LatticePoint{}, 1);
  auto init = random_initial_patch(box, params, rng);
  auto [patch, audit] = evolve_patch(init, box);
  CHECK_FALSE(audit.passed());
  CHECK(audit.disagreements.front().point == point(1, 0, 1, 1));
}

TEST_CASE("symbolic evolution with constant data") {
  Box box = Box::sized(2, 2, 2, 2);
  LatticePatch init(PatchKind::unreduced_u, ParameterSequences::free());
  RationalExpr c(sym("c"));
  for (const auto& p : initial_points(box)) init.set(p, c);
  auto [patch, audit] = evolve_patch(init, box);
  CHECK(audit.passed());
  CHECK(audit.audited == 5);
}

TEST_CASE("invalid initial data") {
  Box box = Box::sized(2, 2, 2, 2);
  LatticePatch init(PatchKind::unreduced_u, constant_params(1, 2, 3, 1));
  init.set(LatticePoint{}, 1);
  CHECK_THROWS_AS(evolve_patch(init, box), InvalidInitialData);
  for (const auto& p : initial_points(box)) init.set(p, 2);
  init.set(point(1, 1, 0, 0), 3);
  CHECK_THROWS_AS(evolve_patch(init, box), InvalidInitialData);
}

TEST_CASE("singular routes are recorded") {
  Box box = Box::sized(2, 2, 1, 1);
  LatticePatch init(PatchKind::unreduced_u, constant_params(1, 1, 1, 1));
  for (const auto& p : initial_points(box)) init.set(p, 5);
  auto [patch, audit] = evolve_patch(init, box);
  CHECK(audit.singular.size() == 1);
  CHECK(audit.undefined.size() == 1);
  CHECK(patch.is_undefined(point(1, 1, 0, 0)));
}

TEST_CASE("patch json round trip") {
  std::mt19937_64 rng(5);
  Box box = Box::sized(2, 2, 1, 2);
  auto params = ParameterSequences::reduced(2, 3, GaussianRational(mpq_class(1, 2), mpq_class(1)), 5, 7);
  auto init = random_initial_patch(box, params, rng);
  auto [patch, audit] = evolve_patch(init, box);
  auto back = LatticePatch::from_json(nlohmann::json::parse(patch.to_json().dump()));
  CHECK(back.values().size() == patch.values().size());
  for (const auto& [p, v] : patch.values()) CHECK(back.at(p) == v);
  CHECK(back.params().K(3) == params.K(3));
  CHECK(back.params().gamma(-2) == params.gamma(-2));
}

TEST_CASE("reduced periodicity conflicts") {
  LatticePatch p(PatchKind::reduced_omega, ParameterSequences::free());
  p.set(point(0, 0, 0, 0), 1);
  p.set(point(1, 1, 1, 0), 1);
  CHECK(p.periodicity_conflicts().empty());
  p.set(point(2, 2, 2, 0), 4);
  CHECK(p.periodicity_conflicts().size() == 1);
  CHECK(p.canonical(point(-1, 0, -1, 0)) == p.canonical(point(0, 1, 0, 0)));
}
