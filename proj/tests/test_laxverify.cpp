#include <doctest.h>

#include <chrono>

#include "qlax/laxverify/elimination.hpp"
#include "qlax/laxverify/laxverify.hpp"

using namespace qlax;

namespace {

ExactConfig example_config() {
  return ExactConfig::make(RationalExpr(1), RationalExpr(1), RationalExpr(1), RationalExpr(1), RationalExpr(1),
                           RationalExpr(2));
}

}  // namespace

TEST_CASE("spectral matrix at x = 0") {
  RationalExpr zero(0);
  ExactMatrix a = build_A(example_config(), zero);
  CHECK(equal(a, make_matrix<RationalExpr>(0, -1, 1, 0)));
  ExactMatrix b = build_B(MapId::IV, example_config(), zero);
  CHECK(equal(b, make_matrix<RationalExpr>(0, -1, 1, 0)));
}

TEST_CASE("spectral factor rejects zero f") {
  RationalExpr x(sym("x"));
  CHECK_THROWS_AS(spectral_factor(1, 1, 0, x), ZeroDenominator);
}

TEST_CASE("theorem: symbolic verification") {
  for (MapId id : {MapId::IV, MapId::III, MapId::SIII}) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = verify_theorem(id);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    INFO(to_string(id) << " took " << ms << " ms");
    CHECK(r.verified);
    CHECK(r.negative_control);
    CHECK_FALSE(r.entries.empty());
    for (const auto& e : r.entries) CHECK(e.zero);
    CHECK(ms < 30000);
  }
}

TEST_CASE("theorem: sampled verification") {
  VerifyOptions opt;
  opt.sampled = true;
  opt.samples = 100;
  opt.seed = 7;
  auto r = verify_theorem(MapId::SIII, opt);
  CHECK(r.verified);
  CHECK(r.samples == 100);
  auto again = verify_theorem(MapId::SIII, opt);
  CHECK(to_json(again).dump() == to_json(r).dump());
}

TEST_CASE("wrong update leaves a residual") {
  PainleveSymbols s;
  ExactConfig c = s.generic();
  ExactConfig next = step(MapId::IV, c);
  next.f0 = next.f0 + 1;
  CHECK_FALSE(is_zero(compat_residual(MapId::IV, c, next, spectral_symbol())));
}

TEST_CASE("converse direction") {
  for (MapId id : {MapId::IV, MapId::III, MapId::SIII}) {
    auto r = verify_converse(id);
    INFO(to_string(id) << ": " << r.note);
    CHECK(r.solved);
    CHECK(r.unique);
    CHECK(r.consistent);
    CHECK(r.matches_map);
  }
}

TEST_CASE("single unknown form of SIII") {
  auto r = verify_siii_single_unknown();
  CHECK(r.verified());
}

TEST_CASE("regularity") {
  PainleveSymbols s;
  auto r = regularity_report(s.generic());
  CHECK(r.a0_is_antisymmetric_block);
  CHECK(r.det_a0_is_one);
  CHECK(r.leading_diagonal);
  CHECK(r.leading_invertible);
  CHECK(r.det_factorizes);
  CHECK(r.delta_sp_matches);
  ExactConfig c = s.generic();
  CHECK(r.leading_det == -c.q * c.q * c.a0.pow(4) * c.a2 * c.a2);
  auto e = regularity_report(example_config());
  CHECK(e.verified());
}

TEST_CASE("factorization of the deformation matrices") {
  auto r = factorization_report();
  CHECK(r.b_siii_is_third_factor);
  CHECK(r.b_iii_is_shifted_product);
  CHECK(r.det_b_iv_is_one);
  CHECK(r.shared_spectral_matrix);
}

TEST_CASE("resultant") {
  Symbol u("u"), v("v");
  RationalExpr U(u), V(v);
  // u^2 - v and u - 2: resultant in u is 4 - v (up to sign)
  RationalExpr r(resultant((U * U - V).numerator(), (U - 2).numerator(), u));
  CHECK((r == 4 - V || r == V - 4));
  auto sol = solve_two_unknowns({(U * V - 6).numerator(), (U + V - 5).numerator(), (U - 2).numerator()}, u, v);
  REQUIRE(sol);
  CHECK(sol->first == RationalExpr(2));
  CHECK(sol->second == RationalExpr(3));
}
