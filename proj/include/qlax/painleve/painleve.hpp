#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qlax/errors.hpp"
#include "qlax/exactfield/rational_expr.hpp"

namespace qlax {

enum class MapId { IV, III, SIII };

std::string to_string(MapId id);
/// Accepts "iv", "iii", "siii" (any case).
std::optional<MapId> parse_map_id(std::string_view text);

/// Phase-space point (f0, f1, f2; a0, a1, a2, lambda, q). a2 and f2 are stored but always
/// derived from the others by make(); only tests build inconsistent configs on purpose.
template <typename S>
struct PainleveConfig {
  S f0, f1, f2;
  S a0, a1, a2;
  S lambda, q;

  static PainleveConfig make(S f0, S f1, S a0, S a1, S lambda, S q) {
    PainleveConfig c{f0, f1, S(0), a0, a1, S(0), lambda, q};
    c.a2 = q / (a0 * a1);
    c.f2 = lambda * lambda / (f0 * f1);
    return c;
  }
};

using ExactConfig = PainleveConfig<RationalExpr>;
using FloatConfig = PainleveConfig<std::complex<double>>;

inline constexpr double kDefaultGuard = 1e-14;

inline bool vanishes(const RationalExpr& d, double /*guard*/) { return d.is_zero(); }
inline bool vanishes(const std::complex<double>& d, double guard) { return std::abs(d) <= guard; }

namespace detail {

template <typename S>
const S& checked(const S& d, const char* name, double guard) {
  if (vanishes(d, guard)) throw BasePointHit(name);
  return d;
}

template <typename S>
S third_factor_update(const S& f0, const S& f1, const S& a0, const S& lambda, double guard) {
  // lambda^2 (1 + a0 f0) / (f0 (a0 + f0) f1)
  S num = lambda * lambda * checked<S>(S(1) + a0 * f0, "1+a0*f0", guard);
  S den = checked(f0, "f0", guard) * checked<S>(a0 + f0, "a0+f0", guard) * checked(f1, "f1", guard);
  return num / den;
}

}  // namespace detail

/// One application of the map. Parameters update with the deformation action; a2 and f2
/// are re-derived so both constraints hold by construction.
template <typename S>
PainleveConfig<S> step(MapId id, const PainleveConfig<S>& c, double guard = kDefaultGuard) {
  using detail::checked;
  const S a2 = c.q / (c.a0 * c.a1);
  const S f2 = c.lambda * c.lambda / (c.f0 * c.f1);
  switch (id) {
    case MapId::IV: {
      S d0 = checked<S>(S(1) + c.a0 * c.f0 * (c.a1 * c.f1 + S(1)), "1+a0*f0*(a1*f1+1)", guard);
      S d1 = checked<S>(S(1) + c.a1 * c.f1 * (a2 * f2 + S(1)), "1+a1*f1*(a2*f2+1)", guard);
      S d2 = checked<S>(S(1) + a2 * f2 * (c.a0 * c.f0 + S(1)), "1+a2*f2*(a0*f0+1)", guard);
      S nf0 = c.a0 * c.a1 * c.f1 * d2 / d0;
      S nf1 = c.a1 * a2 * f2 * d0 / d1;
      checked(nf0, "T(f0)", guard);
      checked(nf1, "T(f1)", guard);
      return PainleveConfig<S>::make(nf0, nf1, c.a0, c.a1, c.q * c.lambda, c.q);
    }
    case MapId::III: {
      S nf1 = detail::third_factor_update(c.f0, c.f1, c.a0, c.lambda, guard);
      checked(nf1, "T(f1)", guard);
      S b = c.a0 * a2;
      S num = c.lambda * c.lambda * checked<S>(S(1) + b * nf1, "1+a0*a2*T(f1)", guard);
      S nf0 = num / (c.f0 * nf1 * checked<S>(b + nf1, "a0*a2+T(f1)", guard));
      return PainleveConfig<S>::make(nf0, nf1, c.q * c.a0, c.a1 / c.q, c.lambda, c.q);
    }
    case MapId::SIII: {
      S nf0 = detail::third_factor_update(c.f0, c.f1, c.a0, c.lambda, guard);
      checked(nf0, "T(f0)", guard);
      return PainleveConfig<S>::make(nf0, c.f0, c.a0 * a2, c.a1 * a2 / c.q, c.lambda, c.q);
    }
  }
  throw std::logic_error("unknown map");
}

/// Inverse of step for III and SIII, obtained by undoing each Moebius stage in reverse.
/// No closed-form inverse is provided for IV (throws std::invalid_argument).
template <typename S>
PainleveConfig<S> step_inverse(MapId id, const PainleveConfig<S>& c, double guard = kDefaultGuard) {
  using detail::checked;
  switch (id) {
    case MapId::III: {
      S a0 = c.a0 / c.q, a1 = c.a1 * c.q;
      S a2 = c.q / (a0 * a1);
      S b = a0 * a2;
      S num = c.lambda * c.lambda * checked<S>(S(1) + b * c.f1, "1+a0*a2*f1", guard);
      S den = checked(c.f0, "f0", guard) * checked(c.f1, "f1", guard) * checked<S>(b + c.f1, "a0*a2+f1", guard);
      S f0 = num / den;
      checked(f0, "T^-1(f0)", guard);
      S f1 = detail::third_factor_update(f0, c.f1, a0, c.lambda, guard);
      return PainleveConfig<S>::make(f0, f1, a0, a1, c.lambda, c.q);
    }
    case MapId::SIII: {
      S a2p = c.q / (c.a0 * c.a1);
      S a2 = c.q / a2p;
      S a0 = c.a0 / a2, a1 = c.a1 * a2p;
      S f0 = c.f1;
      S f1 = detail::third_factor_update(f0, c.f0, a0, c.lambda, guard);
      return PainleveConfig<S>::make(f0, f1, a0, a1, c.lambda, c.q);
    }
    case MapId::IV:
      break;
  }
  throw std::invalid_argument("no closed-form inverse for the IV map");
}

template <typename S>
struct OrbitRecord {
  int n = 0;
  PainleveConfig<S> config;
  bool singular = false;
  std::string location;  // vanished denominator, when singular
};

/// n applications of step. A base-point hit is recorded as a final record with
/// singular = true (carrying the last regular config) and ends the orbit.
template <typename S>
std::vector<OrbitRecord<S>> orbit(MapId id, const PainleveConfig<S>& c0, int n, double guard = kDefaultGuard) {
  std::vector<OrbitRecord<S>> out;
  out.push_back({0, c0, false, {}});
  for (int k = 1; k <= n; ++k) {
    try {
      out.push_back({k, step(id, out.back().config, guard), false, {}});
    } catch (const BasePointHit& hit) {
      out.push_back({k, out.back().config, true, hit.factor()});
      break;
    }
  }
  return out;
}

struct ExactInvariantReport {
  RationalExpr a_residual;  // a0 a1 a2 - q
  RationalExpr f_residual;  // f0 f1 f2 - lambda^2
  bool holds() const { return a_residual.is_zero() && f_residual.is_zero(); }
};

struct FloatInvariantReport {
  double a_drift = 0;  // |a0 a1 a2 - q| / |q|
  double f_drift = 0;  // |f0 f1 f2 - lambda^2| / |lambda^2|
  bool holds(double tol) const { return a_drift <= tol && f_drift <= tol; }
};

ExactInvariantReport check_invariants(const ExactConfig& c);
FloatInvariantReport check_invariants(const FloatConfig& c);

/// Requires every field of c to be a constant.
FloatConfig to_float(const ExactConfig& c);

/// Max drift over an orbit of the float backend.
FloatInvariantReport max_drift(const std::vector<OrbitRecord<std::complex<double>>>& orbit);

/// The classical scalar forms of the three equations, solved for the updated variables.
struct ClassicalIV {
  RationalExpr f, g, h;
};
ClassicalIV classical_qp4(const RationalExpr& a, const RationalExpr& b, const RationalExpr& c, const RationalExpr& f,
                          const RationalExpr& g, const RationalExpr& h);
struct ClassicalIII {
  RationalExpr f, g;
};
ClassicalIII classical_qp3(const RationalExpr& a, const RationalExpr& b, const RationalExpr& t, const RationalExpr& f,
                           const RationalExpr& g);
/// Forward value f(pt) from f(t) and f(t/p).
RationalExpr classical_qp2(const RationalExpr& a, const RationalExpr& t, const RationalExpr& f,
                           const RationalExpr& f_prev);

/// Symbol set used by the symbolic checks of this module.
struct PainleveSymbols {
  Symbol f0{"f0"}, f1{"f1"}, a0{"a0"}, a1{"a1"}, lambda{"lambda"}, q{"q"}, p{"p"};
  ExactConfig generic() const;
};

struct DictionaryReport {
  bool iv = false, iii = false, siii = false;
  bool all() const { return iv && iii && siii; }
};
/// Substitutes the correspondences into the classical forms and compares with step().
DictionaryReport check_dictionary();

struct ConstraintReport {
  bool a_preserved[3] = {false, false, false};  // IV, III, SIII
  bool f_iv_scales = false;                      // f0 f1 f2 = (q lambda)^2 after IV
  bool f_iii_preserved = false, f_siii_preserved = false;
  bool inverses = false;  // step_inverse undoes step for III and SIII
  bool all() const;
};
/// Symbolic constraint preservation with free symbols.
ConstraintReport check_constraint_preservation();

struct ProjectiveReport {
  bool params_square = false;   // SIII^2 parameter action equals III's
  bool maps_square = false;     // SIII^2 (f0, f1) equals III (f0, f1) as rational functions
  bool orbit_match = false;     // even SIII records equal the III orbit
  bool g_readoff = false;       // f1 at even steps equals f0 at the preceding odd step
  int steps = 0;
  std::optional<std::string> singular;  // base point hit during the orbit comparison
  bool verified() const { return params_square && maps_square && orbit_match && g_readoff && !singular; }
};

/// Initial data in projective mode: q = p^2, a2 = p, hence a1 = p / a0.
ExactConfig projective_config(const RationalExpr& p, const RationalExpr& a0, const RationalExpr& lambda,
                              const RationalExpr& f0, const RationalExpr& f1);

ProjectiveReport projective_reduction_compare(const ExactConfig& c0, int n);

}  // namespace qlax
