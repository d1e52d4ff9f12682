#include "qlax/laxverify/laxverify.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "qlax/laxbuild/laxbuild.hpp"
#include "qlax/laxverify/elimination.hpp"

namespace qlax {

Symbol spectral_symbol() {
  static const Symbol x("x");
  return x;
}

ExactMatrix spectral_factor(const RationalExpr& c, const RationalExpr& lambda, const RationalExpr& f,
                            const RationalExpr& x) {
  if (f.is_zero()) throw ZeroDenominator("spectral factor with f = 0");
  if (lambda.is_zero()) throw ZeroDenominator("spectral factor with lambda = 0");
  RationalExpr mi = -RationalExpr::i();
  return make_matrix<RationalExpr>(mi * c * lambda / f * x, 1, -1, mi * c * f / lambda * x);
}

SpectralFactors build_A_factors(const ExactConfig& c, const RationalExpr& x) {
  return {spectral_factor(c.q, c.lambda, c.f2, x), spectral_factor(c.a0 * c.a2, c.lambda, c.f0, x),
          spectral_factor(c.a0, c.lambda, c.f1, x)};
}

ExactMatrix build_A(const ExactConfig& c, const RationalExpr& x) {
  auto f = build_A_factors(c, x);
  return mul(mul(f.first, f.second), f.third);
}

ExactMatrix build_B(MapId id, const ExactConfig& c, const RationalExpr& x) {
  switch (id) {
    case MapId::IV: {
      RationalExpr den = c.lambda * (1 + c.a1 * (1 + c.a2 * c.f2) * c.f1);
      if (den.is_zero()) throw ZeroDenominator("lambda*(1+a1*(1+a2*f2)*f1) vanishes");
      return make_matrix<RationalExpr>(RationalExpr::i() * (c.q * c.lambda * c.lambda - 1) * c.f2 / den * x, -1, 1,
                                       0);
    }
    case MapId::III: {
      auto f = build_A_factors(c, x);
      return mul(f.second, f.third);
    }
    case MapId::SIII:
      return build_A_factors(c, x).third;
  }
  throw std::logic_error("unknown map");
}

ExactMatrix compat_residual(MapId id, const ExactConfig& c, const ExactConfig& next, Symbol x) {
  RationalExpr X(x);
  ExactMatrix a = build_A(c, X);
  ExactMatrix ta = build_A(next, X);
  ExactMatrix b = build_B(id, c, X);
  ExactMatrix bq = build_B(id, c, c.q * X);
  ExactMatrix lhs = mul(ta, b);
  ExactMatrix rhs = mul(bq, a);
  return make_matrix<RationalExpr>(lhs(0, 0) - rhs(0, 0), lhs(0, 1) - rhs(0, 1), lhs(1, 0) - rhs(1, 0),
                                   lhs(1, 1) - rhs(1, 1));
}

ExactConfig with_unknown_updates(MapId id, const ExactConfig& c, const RationalExpr& F0, const RationalExpr& F1) {
  switch (id) {
    case MapId::IV:
      return ExactConfig::make(F0, F1, c.a0, c.a1, c.q * c.lambda, c.q);
    case MapId::III:
      return ExactConfig::make(F0, F1, c.q * c.a0, c.a1 / c.q, c.lambda, c.q);
    case MapId::SIII:
      return ExactConfig::make(F0, F1, c.a0 * c.a2, c.a1 * c.a2 / c.q, c.lambda, c.q);
  }
  throw std::logic_error("unknown map");
}

namespace {

int xdegree_bound(MapId id) { return id == MapId::III ? 5 : 4; }

// Per-entry, per-power verdicts; returns true when every coefficient is zero.
bool collect_verdicts(const ExactMatrix& r, Symbol x, std::vector<EntryVerdict>& out, int& max_deg, int bound) {
  bool all = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto coeffs = coefficients_in(r(i, j), x);
      int deg = static_cast<int>(r(i, j).numerator().degree(x));
      if (deg > bound) throw std::logic_error("residual exceeds its x-degree bound");
      max_deg = std::max(max_deg, deg);
      for (int k = 0; k <= bound; ++k) {
        bool z = k >= static_cast<int>(coeffs.size()) || coeffs[k].is_zero();
        out.push_back({i, j, k, z});
        all = all && z;
      }
    }
  return all;
}

ExactConfig random_exact_config(std::mt19937_64& rng) {
  auto r = [&] { return RationalExpr(random_nonzero_gaussian_rational(rng, 100)); };
  return ExactConfig::make(r(), r(), r(), r(), r(), r());
}

std::vector<std::pair<std::string, std::string>> describe(const ExactConfig& c) {
  return {{"f0", c.f0.to_string()}, {"f1", c.f1.to_string()}, {"f2", c.f2.to_string()},
          {"a0", c.a0.to_string()}, {"a1", c.a1.to_string()}, {"a2", c.a2.to_string()},
          {"lambda", c.lambda.to_string()}, {"q", c.q.to_string()}};
}

// Identity update: parameters move, f0 and f1 do not.
bool negative_control(MapId id, std::mt19937_64& rng, Symbol x) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    ExactConfig c = random_exact_config(rng);
    try {
      ExactMatrix r = compat_residual(id, c, with_unknown_updates(id, c, c.f0, c.f1), x);
      return !is_zero(r);
    } catch (const Error&) {
    }
  }
  return false;
}

// Numeric probe at three points: a cheap early exit if the identity is false.
bool probe_finds_nonzero(MapId id, std::uint64_t seed, Symbol x) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int k = 0; k < 3; ++k) {
    ExactConfig c = random_exact_config(rng);
    try {
      ExactConfig next = step(id, c);
      if (!is_zero(compat_residual(id, c, next, x))) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

}  // namespace

VerificationReport verify_theorem(MapId id, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.id = id;
  rep.mode = opt.sampled ? "sampled" : "symbolic";
  rep.seed = opt.seed;
  Symbol x = spectral_symbol();
  std::mt19937_64 rng(opt.seed);

  rep.probe_nonzero = probe_finds_nonzero(id, opt.seed, x);
  if (rep.probe_nonzero) {
    rep.verified = false;
    rep.negative_control = negative_control(id, rng, x);
    return rep;
  }

  int bound = xdegree_bound(id);
  if (!opt.sampled) {
    PainleveSymbols s;
    ExactConfig c = s.generic();
    rep.parameters = describe(c);
    Symbol F0("T(f0)"), F1("T(f1)");
    ExactMatrix pre = compat_residual(id, c, with_unknown_updates(id, c, RationalExpr(F0), RationalExpr(F1)), x);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) rep.residual_terms[i][j] = pre(i, j).numerator().size();
    ExactConfig next = step(id, c);
    ExactMatrix r = substitute(pre, Bindings{{F0, next.f0}, {F1, next.f1}});
    rep.verified = collect_verdicts(r, x, rep.entries, rep.max_xdegree, bound);
    rep.samples = 1;
  } else {
    std::vector<EntryVerdict> merged;
    bool all = true;
    for (int k = 0; k < opt.samples; ++k) {
      ExactConfig c = random_exact_config(rng);
      ExactMatrix r;
      try {
        r = compat_residual(id, c, step(id, c), x);
      } catch (const Error&) {
        ++rep.samples_skipped;
        continue;
      }
      if (rep.parameters.empty()) rep.parameters = describe(c);
      std::vector<EntryVerdict> v;
      all = collect_verdicts(r, x, v, rep.max_xdegree, bound) && all;
      if (merged.empty()) {
        merged = v;
      } else {
        for (std::size_t e = 0; e < v.size(); ++e) merged[e].zero = merged[e].zero && v[e].zero;
      }
      ++rep.samples;
    }
    rep.entries = std::move(merged);
    rep.verified = all && rep.samples > 0;
  }
  rep.negative_control = negative_control(id, rng, x);
  rep.verified = rep.verified && rep.negative_control;
  return rep;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["case"] = to_string(r.id);
  j["mode"] = r.mode;
  j["verified"] = r.verified;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries)
    j["entries"].push_back({{"row", e.row + 1}, {"col", e.col + 1}, {"xpower", e.xpower}, {"zero", e.zero}});
  j["negative_control"] = r.negative_control;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["samples_skipped"] = r.samples_skipped;
  j["max_xdegree"] = r.max_xdegree;
  j["probe_nonzero"] = r.probe_nonzero;
  j["residual_numerator_terms"] = {{r.residual_terms[0][0], r.residual_terms[0][1]},
                                   {r.residual_terms[1][0], r.residual_terms[1][1]}};
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  if (r.elapsed_ms >= 0) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

// ---------------------------------------------------------------- converse

ConverseReport verify_converse(MapId id) {
  ConverseReport rep;
  rep.id = id;
  PainleveSymbols s;
  ExactConfig c = s.generic();
  Symbol x = spectral_symbol();
  Symbol F0("T(f0)"), F1("T(f1)");
  ExactMatrix r = compat_residual(id, c, with_unknown_updates(id, c, RationalExpr(F0), RationalExpr(F1)), x);

  std::vector<Polynomial> eqs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (auto& coeff : coefficients_in(r(i, j), x))
        if (!coeff.is_zero()) eqs.push_back(coeff.numerator());
  rep.equations = eqs.size();
  rep.note = "generic parameters; T(f0), T(f1) nonzero; pivot coefficient nonzero at the solution";

  auto sol = solve_two_unknowns(eqs, F0, F1);
  if (!sol) return rep;
  rep.solved = true;
  rep.unique = sol->unique;
  Bindings b{{F0, sol->first}, {F1, sol->second}};
  bool consistent = true;
  for (const auto& e : eqs) consistent = consistent && substitute(RationalExpr(e), b).is_zero();
  rep.consistent = consistent;
  ExactConfig next = step(id, c);
  rep.matches_map = sol->first == next.f0 && sol->second == next.f1;
  return rep;
}

SingleUnknownReport verify_siii_single_unknown() {
  SingleUnknownReport rep;
  PainleveSymbols s;
  ExactConfig c = s.generic();
  Symbol x = spectral_symbol();
  Symbol F0("T(f0)");
  ExactMatrix r = compat_residual(MapId::SIII, c, with_unknown_updates(MapId::SIII, c, RationalExpr(F0), c.f0), x);
  RationalExpr expected = step(MapId::SIII, c).f0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (auto& coeff : coefficients_in(r(i, j), x)) {
        if (coeff.is_zero()) continue;
        ++rep.coefficients;
        Polynomial n = coeff.numerator();
        n = n.divided_by(Monomial::of(F0, n.monomial_content().degree(F0)));
        auto root = solve_affine(RationalExpr(n), F0);
        if (root && *root == expected) ++rep.agreeing;
      }
  return rep;
}

// ---------------------------------------------------------------- regularity

RegularityReport regularity_report(const ExactConfig& c) {
  RegularityReport rep;
  Symbol x = spectral_symbol();
  RationalExpr X(x);
  ExactMatrix a = build_A(c, X);
  auto coeffs = matrix_coefficients(a, x);
  const ExactMatrix& a0 = coeffs[0];
  rep.a0_is_antisymmetric_block = equal(a0, make_matrix<RationalExpr>(0, -1, 1, 0));
  rep.det_a0_is_one = det(a0) == RationalExpr(1);
  if (coeffs.size() == 4) {
    const ExactMatrix& lead = coeffs[3];
    rep.leading_diagonal = lead(0, 1).is_zero() && lead(1, 0).is_zero();
    rep.leading_det = det(lead);
    rep.leading_invertible = !rep.leading_det.is_zero();
  }
  RationalExpr expected = (1 - c.q * c.q * X * X) * (1 - c.a0 * c.a0 * c.a2 * c.a2 * X * X) * (1 - c.a0 * c.a0 * X * X);
  rep.det_factorizes = det(a) == expected;
  rep.delta_sp_matches = reduced_delta_bridge(c, RationalExpr(x)).sp == det(a);
  return rep;
}

FactorizationReport factorization_report() {
  FactorizationReport rep;
  PainleveSymbols s;
  ExactConfig c = s.generic();
  RationalExpr X(spectral_symbol());
  auto f = build_A_factors(c, X);
  rep.b_siii_is_third_factor = equal(build_B(MapId::SIII, c, X), f.third);
  ExactMatrix shifted = build_A_factors(step(MapId::SIII, c), X).third;
  rep.b_iii_is_shifted_product = equal(build_B(MapId::III, c, X), mul(shifted, f.third));
  rep.det_b_iv_is_one = det(build_B(MapId::IV, c, X)) == RationalExpr(1);
  // each residual rebuilds A from the same configuration; the matrices must coincide entrywise
  ExactMatrix a = build_A(c, X);
  bool shared = true;
  for (MapId id : {MapId::IV, MapId::III, MapId::SIII}) {
    ExactConfig next = with_unknown_updates(id, c, c.f0, c.f1);
    ExactMatrix bq = build_B(id, c, c.q * X);
    ExactMatrix r = compat_residual(id, c, next, spectral_symbol());
    ExactMatrix rebuilt = mul(build_A(next, X), build_B(id, c, X));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) shared = shared && (rebuilt(i, j) - r(i, j) == mul(bq, a)(i, j));
  }
  rep.shared_spectral_matrix = shared;
  return rep;
}

nlohmann::ordered_json to_json(const RegularityReport& r) {
  nlohmann::ordered_json j;
  j["verified"] = r.verified();
  j["a_at_zero_is_antisymmetric_block"] = r.a0_is_antisymmetric_block;
  j["det_a_at_zero_is_one"] = r.det_a0_is_one;
  j["leading_matrix_diagonal"] = r.leading_diagonal;
  j["leading_matrix_invertible"] = r.leading_invertible;
  j["leading_matrix_det"] = r.leading_det.to_string();
  j["det_a_factorizes"] = r.det_factorizes;
  j["delta_sp_equals_det_a"] = r.delta_sp_matches;
  return j;
}

nlohmann::ordered_json to_json(const ConverseReport& r) {
  nlohmann::ordered_json j;
  j["case"] = to_string(r.id);
  j["verified"] = r.verified();
  j["solved"] = r.solved;
  j["unique"] = r.unique;
  j["consistent"] = r.consistent;
  j["matches_map"] = r.matches_map;
  j["equations"] = r.equations;
  j["generic_locus"] = r.note;
  return j;
}

}  // namespace qlax
