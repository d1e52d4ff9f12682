#include "qlax/laxbuild/laxbuild.hpp"

#include "qlax/reduction/reduction.hpp"

namespace qlax {

void DecouplingFactors::perturb(int dir, const LatticePoint& at, RationalExpr factor) {
  scale_[{dir, at}] = std::move(factor);
}

RationalExpr DecouplingFactors::value(int dir, const LatticePoint& l, const ParameterSequences& params,
                                      const RationalExpr& mu) const {
  RationalExpr d(1);
  if (dir < 4) {
    RationalExpr p = params.direction_parameter(dir, l);
    d = 1 / (1 - mu * mu / (p * p));
  }
  auto it = scale_.find({dir, l});
  if (it != scale_.end()) d *= it->second;
  return d;
}

ExactMatrix build_direction_matrix(int dir, const LatticePoint& l, const LatticePatch& patch, const RationalExpr& mu) {
  if (dir < 1 || dir > 4) throw std::invalid_argument("direction must be 1..4");
  const RationalExpr& u0 = patch.at(l);
  const RationalExpr& u1 = patch.at(l.shifted(dir));
  if (u0.is_zero()) throw ZeroDenominator("u vanishes at (" + l.key() + ")");
  if (dir == 4) return make_matrix<RationalExpr>(-mu * patch.params().K(l[4]), -u1, 1 / u0, 0);
  RationalExpr p = patch.params().direction_parameter(dir, l);
  if (p.is_zero()) throw ZeroDenominator("lattice parameter vanishes at (" + l.key() + ")");
  return make_matrix<RationalExpr>(mu / p, -u1, 1 / u0, -mu / p * u1 / u0);
}

ExactMatrix lax_residual_4d(const Pair& pair, const LatticePoint& l, const LatticePatch& patch, const RationalExpr& mu,
                            const DecouplingFactors& delta) {
  auto [i, j] = pair;
  const ParameterSequences& ps = patch.params();
  LatticePoint li = l.shifted(i), lj = l.shifted(j);
  ExactMatrix lhs = mul(scaled(build_direction_matrix(j, li, patch, mu), delta.value(j, li, ps, mu)),
                        scaled(build_direction_matrix(i, l, patch, mu), delta.value(i, l, ps, mu)));
  ExactMatrix rhs = mul(scaled(build_direction_matrix(i, lj, patch, mu), delta.value(i, lj, ps, mu)),
                        scaled(build_direction_matrix(j, l, patch, mu), delta.value(j, l, ps, mu)));
  return lhs - rhs;
}

RationalExpr delta_constraint(const Pair& pair, const LatticePoint& l, const ParameterSequences& params,
                              const RationalExpr& mu, const DecouplingFactors& delta) {
  auto [i, j] = pair;
  return delta.value(j, l.shifted(i), params, mu) * delta.value(i, l, params, mu) -
         delta.value(i, l.shifted(j), params, mu) * delta.value(j, l, params, mu);
}

bool riccati_matches(int dir, const LatticePoint& l, const LatticePatch& patch, Symbol mu, Symbol ubar) {
  RationalExpr M(mu), U(ubar);
  ExactMatrix m = build_direction_matrix(dir, l, patch, M);
  RationalExpr image = (m(0, 0) * U + m(0, 1)) / (m(1, 0) * U + m(1, 1));
  const RationalExpr& u0 = patch.at(l);
  const RationalExpr& u1 = patch.at(l.shifted(dir));
  RationalExpr expected;
  if (dir == 4) {
    expected = u0 * (-M * patch.params().K(l[4]) - u1 / U);
  } else {
    RationalExpr p = patch.params().direction_parameter(dir, l);
    expected = -u0 * (p * u1 - M * U) / (p * U - M * u1);
  }
  return image == expected;
}

DirectionMatrixReport inspect_direction_matrix(const ExactMatrix& m, Symbol mu) {
  DirectionMatrixReport r;
  auto coeffs = matrix_coefficients(m, mu);
  r.degree_at_most_one = coeffs.size() <= 2;
  if (coeffs.size() != 2) return r;
  const ExactMatrix& c0 = coeffs[0];
  const ExactMatrix& c1 = coeffs[1];
  r.leading_diagonal = c1(0, 1).is_zero() && c1(1, 0).is_zero();
  r.constant_antidiagonal = c0(0, 0).is_zero() && c0(1, 1).is_zero();
  r.leading_invertible = !det(c1).is_zero();
  r.constant_invertible = !det(c0).is_zero();
  return r;
}

LatticePatch symbolic_unit_cell(const LatticePoint& l, ParameterSequences params) {
  LatticePatch patch(PatchKind::unreduced_u, std::move(params));
  auto free_value = [](const LatticePoint& p) { return RationalExpr(sym("u(" + p.key() + ")")); };
  patch.set(l, free_value(l));
  for (int d = 1; d <= 4; ++d) patch.set(l.shifted(d), free_value(l.shifted(d)));
  for (const auto& pr : all_pairs()) patch.set(l.shifted(pr.first).shifted(pr.second), step_equation(pr, patch, l));
  return patch;
}

bool Lax4dReport::verified() const {
  bool ok = free_value_recovered && perturbed_delta_detected;
  for (int k = 0; k < 6; ++k) ok = ok && residual_zero[k] && delta_constraint[k];
  for (int d = 0; d < 4; ++d) {
    const auto& m = direction[d];
    ok = ok && riccati[d] && m.degree_at_most_one && m.leading_diagonal && m.constant_antidiagonal &&
         m.constant_invertible;
    // the K-direction leading matrix diag(-K, 0) is singular
    if (d < 3) ok = ok && m.leading_invertible;
  }
  return ok;
}

nlohmann::ordered_json Lax4dReport::to_json() const {
  nlohmann::ordered_json j;
  j["verified"] = verified();
  auto pairs = nlohmann::ordered_json::array();
  for (int k = 0; k < 6; ++k) {
    const Pair& p = all_pairs()[k];
    pairs.push_back({{"pair", {p.first, p.second}},
                     {"residual_zero", residual_zero[k]},
                     {"delta_constraint", delta_constraint[k]}});
  }
  j["pairs"] = pairs;
  auto dirs = nlohmann::ordered_json::array();
  for (int d = 0; d < 4; ++d) {
    const auto& m = direction[d];
    dirs.push_back({{"direction", d + 1},
                    {"riccati", riccati[d]},
                    {"degree_at_most_one", m.degree_at_most_one},
                    {"leading_diagonal", m.leading_diagonal},
                    {"leading_invertible", m.leading_invertible},
                    {"constant_antidiagonal", m.constant_antidiagonal},
                    {"constant_invertible", m.constant_invertible}});
  }
  j["directions"] = dirs;
  j["free_value_recovered"] = free_value_recovered;
  j["perturbed_delta_detected"] = perturbed_delta_detected;
  return j;
}

Lax4dReport verify_lax4d() {
  Lax4dReport r;
  Symbol mu("mu"), ubar("ubar");
  RationalExpr M(mu);
  LatticePoint l;
  LatticePatch patch = symbolic_unit_cell(l);
  DecouplingFactors delta = DecouplingFactors::lattice();
  for (int k = 0; k < 6; ++k) {
    const Pair& pr = all_pairs()[k];
    r.residual_zero[k] = is_zero(lax_residual_4d(pr, l, patch, M, delta));
    r.delta_constraint[k] = delta_constraint(pr, l, patch.params(), M, delta).is_zero();
  }
  for (int d = 1; d <= 4; ++d) {
    r.riccati[d - 1] = riccati_matches(d, l, patch, mu, ubar);
    r.direction[d - 1] = inspect_direction_matrix(build_direction_matrix(d, l, patch, M), mu);
  }

  {
    Symbol free_sym("u12_free");
    LatticePatch open = patch;
    LatticePoint l12 = l.shifted(1).shifted(2);
    RationalExpr expected = patch.at(l12);
    open.set(l12, RationalExpr(free_sym));
    ExactMatrix res = lax_residual_4d({1, 2}, l, open, M, delta);
    int solved = 0, agreeing = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (res(a, b).is_zero()) continue;
        ++solved;
        auto root = solve_affine(res(a, b), free_sym);
        if (root && *root == expected) ++agreeing;
      }
    r.free_value_recovered = solved > 0 && agreeing == solved;
  }
  {
    DecouplingFactors bad = DecouplingFactors::lattice();
    bad.perturb(1, l, RationalExpr(2));
    r.perturbed_delta_detected = !is_zero(lax_residual_4d({1, 2}, l, patch, M, bad)) &&
                                 !delta_constraint({1, 2}, l, patch.params(), M, bad).is_zero();
  }
  return r;
}

DeltaBridge reduced_delta_bridge(const ExactConfig& c, const RationalExpr& x) {
  auto d1 = [](const ActionState& s) { return 1 / (1 - s.x * s.x); };
  auto d2 = [](const ActionState& s) { return 1 / (1 - s.a0 * s.a0 * s.a2 * s.a2 * s.x * s.x / (s.q * s.q)); };
  auto d3 = [](const ActionState& s) { return 1 / (1 - s.a0 * s.a0 * s.x * s.x / (s.q * s.q)); };
  ActionState s{c.a0, c.a1, c.a2, c.lambda, c.q, x};
  DeltaBridge b;
  b.delta1 = d1(s);
  b.delta2 = d2(s);
  b.delta3 = d3(s);
  RationalExpr t3 = d3(apply_action(TransformWord::parse("T3^-1"), s));
  RationalExpr t23 = d2(apply_action(TransformWord::parse("T2^-1 T3^-1"), s));
  RationalExpr t123 = d1(apply_action(TransformWord::parse("T1^-1 T2^-1 T3^-1"), s));
  b.sp = 1 / (t123 * t23 * t3);
  b.iv = RationalExpr(1);
  b.iii = 1 / (t23 * t3);
  b.siii = 1 / t3;
  return b;
}

}  // namespace qlax
