#pragma once

#include <map>
#include <utility>

#include <json.hpp>

#include "qlax/exactfield/matrix.hpp"
#include "qlax/lattice4d/lattice.hpp"
#include "qlax/painleve/painleve.hpp"

namespace qlax {

/// delta_i(l) = 1 / (1 - mu^2 / p_i(l_i)^2) for i = 1..3 and delta_4 = 1, optionally
/// scaled at single points (used to break the decoupling constraint on purpose).
class DecouplingFactors {
 public:
  static DecouplingFactors lattice() { return {}; }
  void perturb(int dir, const LatticePoint& at, RationalExpr factor);
  RationalExpr value(int dir, const LatticePoint& l, const ParameterSequences& params, const RationalExpr& mu) const;

 private:
  std::map<std::pair<int, LatticePoint>, RationalExpr> scale_;
};

/// delta-free L_i(l): [[mu/p, -u1], [1/u0, -mu/p u1/u0]] for i = 1..3 (p = p_i(l_i)) and
/// [[-mu K, -u1], [1/u0, 0]] for i = 4, with u0 = u(l), u1 = u(l+e_i).
/// Throws ZeroDenominator when u0 or p vanishes, MissingValue when a value is absent.
ExactMatrix build_direction_matrix(int dir, const LatticePoint& l, const LatticePatch& patch, const RationalExpr& mu);

/// T_i(delta_j L_j) delta_i L_i - T_j(delta_i L_i) delta_j L_j at l.
ExactMatrix lax_residual_4d(const Pair& pair, const LatticePoint& l, const LatticePatch& patch, const RationalExpr& mu,
                            const DecouplingFactors& delta);

/// T_i(delta_j) delta_i - T_j(delta_i) delta_j at l.
RationalExpr delta_constraint(const Pair& pair, const LatticePoint& l, const ParameterSequences& params,
                              const RationalExpr& mu, const DecouplingFactors& delta);

/// Projective action of L_i on (ubar, 1) against the Riccati form of the equations.
bool riccati_matches(int dir, const LatticePoint& l, const LatticePatch& patch, Symbol mu, Symbol ubar);

struct DirectionMatrixReport {
  bool degree_at_most_one = false;
  bool leading_diagonal = false;
  bool constant_antidiagonal = false;
  bool leading_invertible = false;
  bool constant_invertible = false;
};
DirectionMatrixReport inspect_direction_matrix(const ExactMatrix& m, Symbol mu);

/// Free symbols at l and l+e_i, the six points l+e_i+e_j filled by the equations.
LatticePatch symbolic_unit_cell(const LatticePoint& l = {}, ParameterSequences params = ParameterSequences::free());

struct Lax4dReport {
  bool residual_zero[6] = {};
  bool delta_constraint[6] = {};
  bool riccati[4] = {};
  DirectionMatrixReport direction[4];
  bool free_value_recovered = false;  // vanishing of the (1,2) residual reproduces the (1,2) equation
  bool perturbed_delta_detected = false;
  bool verified() const;
  nlohmann::ordered_json to_json() const;
};
Lax4dReport verify_lax4d();

/// Reduced decoupling factors at l = 0 and the spectral ones they induce.
struct DeltaBridge {
  RationalExpr delta1, delta2, delta3;  // 1/(1-x^2), 1/(1-q^-2 a0^2 a2^2 x^2), 1/(1-q^-2 a0^2 x^2)
  RationalExpr sp;    // 1 / [T1^-1T2^-1T3^-1(delta1) T2^-1T3^-1(delta2) T3^-1(delta3)]
  RationalExpr iv;    // delta_4 = 1
  RationalExpr iii;   // 1 / [T2^-1T3^-1(delta2) T3^-1(delta3)]
  RationalExpr siii;  // 1 / T3^-1(delta3)
};
DeltaBridge reduced_delta_bridge(const ExactConfig& c, const RationalExpr& x);

}  // namespace qlax
