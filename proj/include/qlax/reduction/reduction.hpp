#pragma once

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlax/lattice4d/lattice.hpp"
#include "qlax/painleve/painleve.hpp"

namespace qlax {

/// alpha_l = q^l alpha_hat, beta_l = q^l beta_hat, gamma_l = q^l gamma_hat and the K_l of the
/// periodic reduction.
struct ReducedParameters {
  RationalExpr alpha_hat, beta_hat, gamma_hat, lambda, q;

  RationalExpr a0() const { return q * alpha_hat / gamma_hat; }
  RationalExpr a1() const { return beta_hat / alpha_hat; }
  RationalExpr a2() const { return gamma_hat / beta_hat; }
  ParameterSequences sequences() const;

  static ReducedParameters symbolic();
  static ReducedParameters random(std::mt19937_64& rng, long bound = 20);
};

/// Parameters entering the omega equations.
struct OmegaParameters {
  RationalExpr a0, a1, a2, lambda, q;
  static OmegaParameters from(const ReducedParameters& rp) { return {rp.a0(), rp.a1(), rp.a2(), rp.lambda, rp.q}; }
};

/// h(l + e_i) / h(l): i, i q^l4 lambda, i, i q^l2 beta_hat for i = 1..4.
RationalExpr gauge_ratio(int dir, const LatticePoint& l, const ReducedParameters& rp);
/// h(l) / h(0), accumulated along a path (the ratios form a cocycle).
RationalExpr gauge(const LatticePoint& l, const ReducedParameters& rp);
/// rho_i(l) rho_j(l+e_i) == rho_j(l) rho_i(l+e_j) for all six pairs.
bool check_cocycle(const LatticePoint& l, const ReducedParameters& rp);

/// Solved form of the (i,j) omega equation as numerator and denominator of w(l+ei+ej).
struct SolvedForm {
  RationalExpr num, den;
};
SolvedForm reduced_form(const Pair& pair, const RationalExpr& w0, const RationalExpr& wi, const RationalExpr& wj,
                        const LatticePoint& l, const OmegaParameters& p);
/// omega(l+ei+ej); throws SingularStep.
RationalExpr reduced_step(const Pair& pair, const RationalExpr& w0, const RationalExpr& wi, const RationalExpr& wj,
                          const LatticePoint& l, const OmegaParameters& p);
/// wij * den - num.
RationalExpr reduced_relation(const Pair& pair, const RationalExpr& w0, const RationalExpr& wi,
                              const RationalExpr& wj, const RationalExpr& wij, const LatticePoint& l,
                              const OmegaParameters& p);

/// Gauge-transformed equations agree with the unreduced ones for free omega values at
/// every l in {0,1}^4 and every pair.
struct EquivalenceReport {
  int checked = 0;
  int agreeing = 0;
  bool verified() const { return checked > 0 && agreeing == checked; }
};
EquivalenceReport verify_reduction_equivalence();

/// omega(0), omega(e1), omega(e1+e2) at one level l4.
struct OmegaTriangle {
  RationalExpr w0, w1, w12;
};

/// Triangle at level k+1 from level k: (1,4) and (2,4) give omega(e1+e4), omega(e1+e2+e4)
/// in terms of omega(e4); (3,4) closing the period fixes omega(e4).
OmegaTriangle level_step(const OmegaTriangle& t, long level, const OmegaParameters& p);

/// (f0, f1, f2) = (w1/w12, lambda w12/w0, lambda w0/w1); throws ZeroOmega.
struct FTriple {
  RationalExpr f0, f1, f2;
};
FTriple f_from_omega(const OmegaTriangle& t, const RationalExpr& lambda_level);

struct OmegaEvolution {
  LatticePatch patch;
  std::vector<std::string> singular;       // solves that failed
  std::vector<LatticePoint> inconsistent;  // bases where an in-level equation fails
};

/// Fills omega on m = (l1-l3, l2-l3) in [-radius, radius]^2 for levels 0..levels-1,
/// starting from a triangle at level 0.
OmegaEvolution evolve_omega(const ReducedParameters& rp, const OmegaTriangle& init, long radius, long levels);

struct LiftReport {
  int checked = 0;
  std::vector<std::pair<LatticePoint, Pair>> failures;
  bool verified() const { return checked > 0 && failures.empty(); }
};
/// u(l) = h(l) omega(l) satisfies all six equations wherever the box holds a full face.
/// Throws PeriodicityViolation when the patch recorded a periodicity conflict.
LiftReport lift_check(const LatticePatch& omega, const ReducedParameters& rp, const Box& box);

/// Dynamics bridge: one level step equals the IV map under f_from_omega.
struct BridgeReport {
  bool symbolic = false;  // free omega values and free parameters
  int instances = 0;
  int steps = 0;
  int agreeing = 0;
  bool verified() const { return symbolic && agreeing == instances * steps; }
};
BridgeReport verify_iv_bridge(int instances, int steps, std::uint64_t seed);

/// Action of a word on (a0, a1, a2, lambda, q, x) with x = mu / alpha_hat.
struct ActionState {
  RationalExpr a0, a1, a2, lambda, q, x;
  static ActionState symbolic(Symbol x);
};
ActionState apply_action(const TransformWord& w, const ActionState& s);

struct ActionReport {
  bool identity_t123 = false;      // T1 T2 T3 fixes (a0, a1, a2, lambda, q)
  bool constraint_preserved = false;  // a0 a1 a2 = q after every generator
  bool r1_square = false;          // R1^2 = T2^-1 T3^-1 on parameters
  bool matches_sequences = false;  // agrees with the action on the parameter sequences
  bool matches_maps = false;       // parameter actions of the three maps
  bool verified() const {
    return identity_t123 && constraint_preserved && r1_square && matches_sequences && matches_maps;
  }
};
ActionReport verify_actions();

struct ReductionReport {
  EquivalenceReport equivalence;
  bool cocycle = false;
  ActionReport actions;
  BridgeReport bridge;
  int lift_instances = 0;
  int lift_passed = 0;
  bool verified() const {
    return equivalence.verified() && cocycle && actions.verified() && bridge.verified() && lift_instances > 0 &&
           lift_passed == lift_instances;
  }
  nlohmann::ordered_json to_json() const;
};
ReductionReport verify_reduction(int lift_instances, int bridge_instances, std::uint64_t seed);

}  // namespace qlax
