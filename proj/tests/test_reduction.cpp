#include <doctest.h>

#include "qlax/reduction/reduction.hpp"

using namespace qlax;

TEST_CASE("gauge cocycle") {
  auto rp = ReducedParameters::symbolic();
  for (const auto& l : {point(0, 0, 0, 0), point(1, -2, 3, 2), point(-1, 1, 0, -3)}) CHECK(check_cocycle(l, rp));
  CHECK(gauge(point(0, 1, 0, 0), rp) == RationalExpr::i() * rp.lambda);
  CHECK(gauge(point(0, 1, 0, 1), rp) * gauge(point(0, 0, 0, -1), rp) != RationalExpr(0));
}

TEST_CASE("reduced parameters") {
  auto rp = ReducedParameters::symbolic();
  CHECK(rp.a0() * rp.a1() * rp.a2() == rp.q);
  auto seq = rp.sequences();
  CHECK(seq.alpha(2) == rp.q * rp.q * rp.alpha_hat);
  CHECK(seq.K(0) == (rp.q * rp.lambda * rp.lambda - 1) / rp.lambda);
}

TEST_CASE("gauge-transformed equations are the omega equations") {
  auto r = verify_reduction_equivalence();
  CHECK(r.checked == 96);
  CHECK(r.verified());
}

TEST_CASE("parameter actions") {
  auto r = verify_actions();
  CHECK(r.identity_t123);
  CHECK(r.constraint_preserved);
  CHECK(r.r1_square);
  CHECK(r.matches_sequences);
  CHECK(r.matches_maps);
}

TEST_CASE("level step reproduces the IV map") {
  auto r = verify_iv_bridge(3, 4, 17);
  CHECK(r.symbolic);
  CHECK(r.agreeing == 12);
}

TEST_CASE("lifted omega patches satisfy the lattice equations") {
  std::mt19937_64 rng(23);
  auto rp = ReducedParameters::random(rng);
  auto draw = [&] { return RationalExpr(random_nonzero_gaussian_rational(rng, 20)); };
  auto ev = evolve_omega(rp, {draw(), draw(), draw()}, 2, 2);
  CHECK(ev.singular.empty());
  CHECK(ev.inconsistent.empty());
  auto lr = lift_check(ev.patch, rp, {point(0, 0, 0, 0), point(2, 2, 2, 1)});
  CHECK(lr.verified());
  CHECK(lr.checked > 100);
}

TEST_CASE("broken periodicity is rejected") {
  std::mt19937_64 rng(29);
  auto rp = ReducedParameters::random(rng);
  auto draw = [&] { return RationalExpr(random_nonzero_gaussian_rational(rng, 20)); };
  auto ev = evolve_omega(rp, {draw(), draw(), draw()}, 1, 1);
  LatticePoint p = point(1, 2, 1, 0);
  ev.patch.set(p.shifted(1).shifted(2).shifted(3), ev.patch.at(p) + 1);
  CHECK_THROWS_AS(lift_check(ev.patch, rp, {point(0, 0, 0, 0), point(1, 1, 1, 0)}), PeriodicityViolation);
}

TEST_CASE("f from omega") {
  RationalExpr w0(2), w1(3), w12(5), lam(7);
  auto f = f_from_omega({w0, w1, w12}, lam);
  CHECK(f.f0 * f.f1 * f.f2 == lam * lam);
  CHECK_THROWS_AS(f_from_omega({0, w1, w12}, lam), ZeroOmega);
}
