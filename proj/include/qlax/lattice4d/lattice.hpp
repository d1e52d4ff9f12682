#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlax/errors.hpp"
#include "qlax/exactfield/rational_expr.hpp"

namespace qlax {

/// Point of Z^4 in the basis eps1..eps4 (directions are 1-based in the API).
struct LatticePoint {
  std::array<long, 4> l{0, 0, 0, 0};

  long operator[](int dir) const { return l[dir - 1]; }
  LatticePoint shifted(int dir, long by = 1) const {
    LatticePoint p = *this;
    p.l[dir - 1] += by;
    return p;
  }
  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

  bool in_r1() const { return l[2] == l[1] - 1; }
  bool in_r2() const { return l[2] == l[1]; }
  bool in_region() const { return in_r1() || in_r2(); }

  /// "l1,l2,l3,l4"
  std::string key() const;
  static LatticePoint parse(const std::string& key);
};

LatticePoint point(long l1, long l2, long l3, long l4);

/// The six faces of the system, oriented as in the equations: (1,2), (2,3), (3,1), (1,4), (2,4), (3,4).
using Pair = std::pair<int, int>;
const std::array<Pair, 6>& all_pairs();
/// Oriented pair for the face spanned by directions a != b.
Pair oriented_pair(int a, int b);
bool is_d4_pair(const Pair& p);

/// Sequences alpha_l, beta_l, gamma_l, K_l (slots 0..3). Each slot reads a source
/// sequence at a shifted index, which is how translations and R1 act.
class ParameterSequences {
 public:
  enum class Mode { free, reduced, explicit_values };
  enum Slot { slot_alpha = 0, slot_beta = 1, slot_gamma = 2, slot_K = 3 };

  /// alpha_l = Symbol("alpha_l"), etc.
  static ParameterSequences free();
  /// alpha_l = q^l alpha_hat, ..., K_l = (q^(2l+1) lambda^2 - 1) / (q^l lambda).
  static ParameterSequences reduced(RationalExpr alpha_hat, RationalExpr beta_hat, RationalExpr gamma_hat,
                                    RationalExpr lambda, RationalExpr q);
  /// Finitely many explicit values; reading an absent index throws MissingValue.
  static ParameterSequences explicit_values(std::array<std::map<long, RationalExpr>, 4> values);

  Mode mode() const { return mode_; }
  RationalExpr value(int slot, long index) const;
  RationalExpr alpha(long l) const { return value(slot_alpha, l); }
  RationalExpr beta(long l) const { return value(slot_beta, l); }
  RationalExpr gamma(long l) const { return value(slot_gamma, l); }
  RationalExpr K(long l) const { return value(slot_K, l); }

  /// Parameter p_i(l_i) attached to direction i = 1..3 at a point.
  RationalExpr direction_parameter(int dir, const LatticePoint& at) const { return value(dir - 1, at[dir]); }

  /// Slot image: (source sequence, index offset).
  std::pair<int, long> slot(int s) const { return slots_[s]; }
  void set_slot(int s, int source, long offset) { slots_[s] = {source, offset}; }

  /// Overrides the constant K seen by one (i,4) equation at one base point: the
  /// equation uses K + shift there. Used as a controlled inconsistency.
  void corrupt_equation(const Pair& pair, const LatticePoint& base, RationalExpr shift);
  RationalExpr equation_K(const Pair& pair, const LatticePoint& base) const;

  const std::array<RationalExpr, 5>& reduced_base() const { return reduced_; }

  nlohmann::ordered_json to_json() const;
  static ParameterSequences from_json(const nlohmann::json& j);

 private:
  RationalExpr base(int seq, long index) const;

  Mode mode_ = Mode::free;
  std::array<std::pair<int, long>, 4> slots_{{{0, 0}, {1, 0}, {2, 0}, {3, 0}}};
  std::array<RationalExpr, 5> reduced_;  // alpha_hat, beta_hat, gamma_hat, lambda, q
  std::array<std::map<long, RationalExpr>, 4> explicit_;
  std::map<std::pair<Pair, LatticePoint>, RationalExpr> corruption_;
};

enum class PatchKind { unreduced_u, reduced_omega };

/// Finite map from lattice points to values. The reduced kind stores omega on the
/// quotient by eps1+eps2+eps3 (canonical representative (l1-l3, l2-l3, 0, l4)).
class LatticePatch {
 public:
  LatticePatch() = default;
  LatticePatch(PatchKind kind, ParameterSequences params) : kind_(kind), params_(std::move(params)) {}

  PatchKind kind() const { return kind_; }
  const ParameterSequences& params() const { return params_; }
  ParameterSequences& params() { return params_; }

  LatticePoint canonical(const LatticePoint& p) const;
  bool has(const LatticePoint& p) const { return values_.count(canonical(p)) > 0; }
  /// Throws MissingValue.
  const RationalExpr& at(const LatticePoint& p) const;
  std::optional<RationalExpr> get(const LatticePoint& p) const;
  /// For the reduced kind, storing a value that differs from the one already held by
  /// the same periodicity class records a conflict.
  void set(const LatticePoint& p, RationalExpr v);

  void mark_undefined(const LatticePoint& p) { undefined_.insert(canonical(p)); }
  bool is_undefined(const LatticePoint& p) const { return undefined_.count(canonical(p)) > 0; }

  const std::map<LatticePoint, RationalExpr>& values() const { return values_; }
  const std::set<LatticePoint>& undefined() const { return undefined_; }
  const std::vector<LatticePoint>& periodicity_conflicts() const { return conflicts_; }

  nlohmann::ordered_json to_json() const;
  static LatticePatch from_json(const nlohmann::json& j);

 private:
  PatchKind kind_ = PatchKind::unreduced_u;
  ParameterSequences params_ = ParameterSequences::free();
  std::map<LatticePoint, RationalExpr> values_;
  std::set<LatticePoint> undefined_;
  std::vector<LatticePoint> conflicts_;
};

/// u(l+ei+ej) from the (i,j) equation. Throws SingularStep when the solved form's
/// denominator vanishes.
RationalExpr step_equation(const Pair& pair, const RationalExpr& u0, const RationalExpr& ui, const RationalExpr& uj,
                           const LatticePoint& l, const ParameterSequences& params);

/// Patch-level form: reads u(l), u(l+ei), u(l+ej); throws MissingValue.
RationalExpr step_equation(const Pair& pair, const LatticePatch& patch, const LatticePoint& l);

/// Residual of the (i,j) equation written as a relation (zero iff satisfied).
RationalExpr equation_residual(const Pair& pair, const RationalExpr& u0, const RationalExpr& ui,
                               const RationalExpr& uj, const RationalExpr& uij, const LatticePoint& l,
                               const ParameterSequences& params);

/// Inclusive coordinate ranges.
struct Box {
  LatticePoint lo, hi;
  bool contains(const LatticePoint& p) const;
  std::vector<LatticePoint> points() const;
  /// Box with lo = 0 and the given sizes per direction (size 3 means offsets 0..2).
  static Box sized(long n1, long n2, long n3, long n4);
};

struct RouteDisagreement {
  LatticePoint point;
  std::vector<std::pair<Pair, RationalExpr>> routes;
};

struct SingularEvent {
  LatticePoint point;
  Pair pair;
  std::string message;
};

struct AuditReport {
  int filled = 0;
  int audited = 0;  // points reached by at least two routes
  int agreeing = 0;
  std::vector<RouteDisagreement> disagreements;
  std::vector<SingularEvent> singular;
  std::vector<LatticePoint> undefined;
  bool passed() const { return disagreements.empty(); }
  nlohmann::ordered_json to_json() const;
};

/// Points of the box with at most one nonzero offset from box.lo: the initial data.
std::vector<LatticePoint> initial_points(const Box& box);

/// Fills the box from values on the coordinate axes through box.lo, in order of the
/// offset sum. A point with k >= 2 nonzero offsets is reachable through k(k-1)/2 faces;
/// every route is evaluated and compared exactly. Throws InvalidInitialData.
std::pair<LatticePatch, AuditReport> evolve_patch(const LatticePatch& init, const Box& box);

/// Random exact initial data on the axes of the box.
LatticePatch random_initial_patch(const Box& box, ParameterSequences params, std::mt19937_64& rng, long bound = 20);

// ---------------------------------------------------------------- transformations

enum class Letter { T1, T2, T3, T4, R1 };

struct Generator {
  Letter letter;
  bool inverse = false;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Word in T1..T4, R1 and inverses. Composition ww' = w o w': the rightmost letter acts first.
class TransformWord {
 public:
  TransformWord() = default;
  explicit TransformWord(std::vector<Generator> word) : word_(std::move(word)) {}
  static TransformWord single(Letter l, bool inverse = false) { return TransformWord({{l, inverse}}); }
  /// Letters separated by spaces, e.g. "T3^-1 T2^-1" or "R1".
  static TransformWord parse(const std::string& text);

  const std::vector<Generator>& letters() const { return word_; }
  TransformWord operator*(const TransformWord& o) const;
  TransformWord inverse() const;
  std::string to_string() const;

 private:
  std::vector<Generator> word_;
};

/// Throws OutOfDomain when R1 meets a point outside the region.
LatticePoint apply_transform(const TransformWord& w, const LatticePoint& p);
ParameterSequences apply_transform(const TransformWord& w, const ParameterSequences& params);
/// New patch v with v(l) = patch(w(l)) wherever w(l) is defined and stored.
LatticePatch apply_transform(const TransformWord& w, const LatticePatch& patch);

}  // namespace qlax
