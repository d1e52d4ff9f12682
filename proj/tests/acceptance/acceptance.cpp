#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "qlax/laxbuild/laxbuild.hpp"
#include "qlax/laxverify/laxverify.hpp"
#include "qlax/painleve/painleve.hpp"
#include "qlax/quadcat/quadcat.hpp"
#include "qlax/reduction/reduction.hpp"

using namespace qlax;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr MapId kMaps[] = {MapId::IV, MapId::III, MapId::SIII};

RationalExpr q_(long n, long d = 1) { return RationalExpr(GaussianRational(mpq_class(n, d), mpq_class(0))); }

Outcome theorem() {
  std::string d;
  bool ok = true;
  for (MapId id : kMaps) {
    VerificationReport r = verify_theorem(id);
    ok = ok && r.verified && r.negative_control;
    if (!d.empty()) d += ", ";
    d += to_string(id) + (r.verified ? " zero" : " NONZERO") + (r.negative_control ? "/control nonzero" : "/control ZERO");
  }
  return {ok, d};
}

Outcome converse() {
  std::string d;
  bool ok = true;
  for (MapId id : kMaps) {
    ConverseReport r = verify_converse(id);
    ok = ok && r.verified();
    if (!d.empty()) d += ", ";
    d += to_string(id) + (r.verified() ? " unique" : " FAILED");
  }
  return {ok, d};
}

Outcome regularity() {
  RegularityReport r = regularity_report(PainleveSymbols{}.generic());
  return {r.verified(), "leading det " + r.leading_det.to_string()};
}

Outcome factorization() {
  FactorizationReport r = factorization_report();
  return {r.verified(), std::string("B_SIII third factor ") + (r.b_siii_is_third_factor ? "yes" : "no") +
                            ", B_III product " + (r.b_iii_is_shifted_product ? "yes" : "no") + ", det B_IV = 1 " +
                            (r.det_b_iv_is_one ? "yes" : "no")};
}

Outcome lax4d() {
  Lax4dReport r = verify_lax4d();
  int zero = 0, delta = 0;
  for (int k = 0; k < 6; ++k) {
    zero += r.residual_zero[k];
    delta += r.delta_constraint[k];
  }
  return {r.verified(), std::to_string(zero) + "/6 residuals zero, " + std::to_string(delta) + "/6 delta constraints"};
}

Outcome lattice_consistency() {
  std::mt19937_64 rng(2024);
  Box box = Box::sized(3, 3, 3, 2);
  const int instances = 50;
  int passed = 0, audited = 0;
  for (int k = 0; k < instances; ++k) {
    std::array<std::map<long, RationalExpr>, 4> v;
    for (long l = 0; l <= 3; ++l)
      for (int s = 0; s < 4; ++s) v[s][l] = RationalExpr(random_nonzero_gaussian_rational(rng, 20));
    auto init = random_initial_patch(box, ParameterSequences::explicit_values(v), rng);
    auto [patch, audit] = evolve_patch(init, box);
    audited += audit.audited;
    if (audit.passed() && audit.audited > 0 && audit.singular.empty()) ++passed;
  }
  std::array<std::map<long, RationalExpr>, 4> v;
  for (long l = 0; l <= 3; ++l)
    for (int s = 0; s < 4; ++s) v[s][l] = RationalExpr(random_nonzero_gaussian_rational(rng, 20));
  auto params = ParameterSequences::explicit_values(v);
  params.corrupt_equation({2, 4}, LatticePoint{}, 1);
  auto [bad, bad_audit] = evolve_patch(random_initial_patch(box, params, rng), box);
  bool control = !bad_audit.passed();
  return {passed == instances && control, std::to_string(passed) + "/" + std::to_string(instances) + " instances, " +
                                               std::to_string(audited) + " multi-route points; corrupted control " +
                                               (control ? "fails" : "PASSES")};
}

Outcome reduction() {
  ReductionReport r = verify_reduction(20, 1, 7);
  bool ok = r.equivalence.verified() && r.cocycle && r.lift_instances == 20 && r.lift_passed == 20;
  return {ok, std::to_string(r.equivalence.agreeing) + "/" + std::to_string(r.equivalence.checked) +
                  " symbolic unit-cell equations, " + std::to_string(r.lift_passed) + "/20 omega patches lift"};
}

Outcome bridge() {
  BridgeReport r = verify_iv_bridge(10, 5, 11);
  bool ok = r.verified() && r.instances == 10 && r.steps == 5;
  return {ok, std::string("symbolic ") + (r.symbolic ? "yes" : "no") + ", " + std::to_string(r.agreeing) +
                  "/50 exact steps"};
}

Outcome projective() {
  ExactConfig c = projective_config(q_(3, 2), q_(2), q_(5, 7), q_(3), q_(1, 4));
  ProjectiveReport r = projective_reduction_compare(c, 10);
  return {r.verified() && r.steps == 10,
          std::string("SIII^2 = III ") + (r.params_square && r.maps_square ? "yes" : "no") +
              ", 10-step even subsequence " + (r.orbit_match ? "matches" : "DIFFERS")};
}

Outcome invariants() {
  ConstraintReport cr = check_constraint_preservation();
  bool ok = cr.all();
  double worst = 0;
  ExactConfig c = ExactConfig::make(q_(5), q_(-2, 3), q_(2), q_(3, 5),
                                    RationalExpr(GaussianRational(mpq_class(1, 3), mpq_class(1))), q_(7, 4));
  for (MapId id : kMaps) {
    auto recs = orbit(id, to_float(c), 100);
    if (recs.size() != 101 || recs.back().singular) ok = false;
    auto d = max_drift(recs);
    worst = std::max({worst, d.a_drift, d.f_drift});
  }
  ok = ok && worst <= 1e-9;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", worst);
  return {ok, std::string("symbolic ") + (cr.all() ? "exact" : "FAILED") + ", float drift " + buf + " over 100 steps"};
}

Outcome catalog() {
  NamedEquationReport named = check_named_equations();
  RationalExpr a(sym("alpha")), b(sym("beta"));
  int affine = 0;
  for (const auto& k : {QuadKind::q1(a, b, sym("epsilon")), QuadKind::h3(a, b, sym("delta"), sym("epsilon")),
                        QuadKind::h1(a, b, sym("epsilon")), QuadKind::d4(sym("delta1"), sym("delta2"), sym("delta3"))})
    affine += check_multiaffine(k);
  return {named.all() && affine == 4, std::to_string(affine) + "/4 multi-affine, named equations " +
                                          (named.all() ? "reproduced" : "DIFFER")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"compatibility of the Lax pair, three maps", theorem},
      {"converse: residual determines the updates", converse},
      {"spectral regularity", regularity},
      {"factorization of the deformation matrices", factorization},
      {"4D Lax consistency", lax4d},
      {"multidimensional consistency of the 4D system", lattice_consistency},
      {"geometric reduction", reduction},
      {"dynamics bridge to the IV map", bridge},
      {"projective reduction SIII^2 = III", projective},
      {"invariant suite", invariants},
      {"quad catalog fidelity", catalog},
  };
  int failures = 0, n = 0;
  for (const auto& c : criteria) {
    ++n;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", n, c.name, o.detail.c_str(), s);
    failures += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
