#include <doctest.h>

#include <random>

#include "qlax/painleve/painleve.hpp"

using namespace qlax;

namespace {

GaussianRational gr(long n, long d = 1) { return GaussianRational::fraction(n, d); }

ExactConfig exact_config(GaussianRational f0, GaussianRational f1, GaussianRational a0, GaussianRational a1,
                         GaussianRational lambda, GaussianRational q) {
  return ExactConfig::make(f0, f1, a0, a1, lambda, q);
}

ExactConfig random_config(std::mt19937_64& rng) {
  auto r = [&] { return random_nonzero_gaussian_rational(rng, 9, false); };
  return exact_config(r(), r(), r(), r(), r(), r());
}

}  // namespace

TEST_CASE("IV symmetric fixed point") {
  auto c = exact_config(1, 1, 1, 1, 1, 1);
  auto n = step(MapId::IV, c);
  CHECK(n.f0 == RationalExpr(1));
  CHECK(n.f1 == RationalExpr(1));
  CHECK(n.f2 == RationalExpr(1));
}

TEST_CASE("IV worked value") {
  auto c = exact_config(1, 2, 2, 3, 1, 2);
  CHECK(c.a2 == RationalExpr(gr(1, 3)));
  CHECK(c.f2 == RationalExpr(gr(1, 2)));
  auto n = step(MapId::IV, c);
  CHECK(n.f0 == RationalExpr(gr(6, 5)));
  CHECK(n.lambda == RationalExpr(2));
}

TEST_CASE("SIII first relation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto c = random_config(rng);
    try {
      CHECK(step(MapId::SIII, c).f1 == c.f0);
    } catch (const BasePointHit&) {
    }
  }
  PainleveSymbols s;
  CHECK(step(MapId::SIII, s.generic()).f1 == RationalExpr(s.f0));
}

TEST_CASE("base point hit names the factor") {
  // 1 + a0 f0 (a1 f1 + 1) = 0 with a0 = 1, a1 = 1, f1 = 1 forces f0 = -1/2
  auto c = exact_config(gr(-1, 2), 1, 1, 1, 1, 2);
  try {
    step(MapId::IV, c);
    FAIL("expected a base point");
  } catch (const BasePointHit& hit) {
    CHECK(hit.factor() == "1+a0*f0*(a1*f1+1)");
  }
  auto rec = orbit(MapId::IV, c, 5);
  REQUIRE(rec.size() == 2);
  CHECK(rec.back().singular);
}

TEST_CASE("orbits") {
  std::mt19937_64 rng(5);
  auto c0 = random_config(rng);
  CHECK(orbit(MapId::IV, c0, 0).size() == 1);

  for (int t = 0; t < 3; ++t) {
    auto c = random_config(rng);
    auto o = orbit(MapId::IV, c, 20);
    RationalExpr lam = c.lambda;
    for (const auto& rec : o) {
      if (rec.singular) break;
      CHECK(check_invariants(rec.config).holds());
      CHECK(rec.config.lambda == lam);
      lam = lam * c.q;
    }
  }
}

TEST_CASE("float and exact backends agree") {
  std::mt19937_64 rng(8);
  for (MapId id : {MapId::IV, MapId::III, MapId::SIII}) {
    auto c = random_config(rng);
    auto ex = orbit(id, c, 10);
    auto fl = orbit(id, to_float(c), 10);
    REQUIRE(ex.size() == fl.size());
    for (std::size_t k = 0; k < ex.size(); ++k) {
      auto fe = to_float(ex[k].config);
      CHECK(std::abs(fe.f0 - fl[k].config.f0) <= 1e-10 * std::abs(fe.f0));
      CHECK(std::abs(fe.f1 - fl[k].config.f1) <= 1e-10 * std::abs(fe.f1));
    }
  }
}

TEST_CASE("invariant reports") {
  auto c = exact_config(gr(3, 2), 2, 2, 3, gr(5, 7), 2);
  CHECK(check_invariants(c).holds());
  auto bad = c;
  bad.f2 = bad.f2 + 1;
  CHECK_FALSE(check_invariants(bad).f_residual.is_zero());
  CHECK(check_invariants(bad).a_residual.is_zero());

  auto fc = to_float(exact_config(gr(3, 2), gr(4, 5), gr(6, 5), gr(9, 10), gr(1, 2), gr(21, 20)));
  auto o = orbit(MapId::IV, fc, 100);
  REQUIRE_FALSE(o.back().singular);
  CHECK(max_drift(o).holds(1e-9));
}

TEST_CASE("symbolic constraint preservation and inverses") {
  auto r = check_constraint_preservation();
  CHECK(r.a_preserved[0]);
  CHECK(r.a_preserved[1]);
  CHECK(r.a_preserved[2]);
  CHECK(r.f_iv_scales);
  CHECK(r.f_iii_preserved);
  CHECK(r.f_siii_preserved);
  CHECK(r.inverses);
  CHECK_THROWS_AS(step_inverse(MapId::IV, PainleveSymbols().generic()), std::invalid_argument);
}

TEST_CASE("classical dictionary") {
  auto r = check_dictionary();
  CHECK(r.iv);
  CHECK(r.iii);
  CHECK(r.siii);
}

TEST_CASE("projective reduction") {
  auto c0 = projective_config(RationalExpr(gr(3, 2)), RationalExpr(gr(2, 3)), RationalExpr(gr(5, 4)),
                              RationalExpr(gr(1, 3)), RationalExpr(gr(7, 5)));
  CHECK(c0.a2 == RationalExpr(gr(3, 2)));
  CHECK(c0.q == RationalExpr(gr(9, 4)));
  auto r = projective_reduction_compare(c0, 10);
  CHECK(r.params_square);
  CHECK(r.maps_square);
  CHECK(r.orbit_match);
  CHECK(r.g_readoff);
  CHECK(r.verified());
}

TEST_CASE("map id parsing") {
  CHECK(parse_map_id("IV") == MapId::IV);
  CHECK(parse_map_id("siii") == MapId::SIII);
  CHECK_FALSE(parse_map_id("ii").has_value());
}
