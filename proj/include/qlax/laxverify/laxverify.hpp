#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlax/exactfield/matrix.hpp"
#include "qlax/painleve/painleve.hpp"

namespace qlax {

/// [[-i c lambda/f x, 1], [-1, -i c f/lambda x]]; throws ZeroDenominator if f or lambda is 0.
ExactMatrix spectral_factor(const RationalExpr& c, const RationalExpr& lambda, const RationalExpr& f,
                            const RationalExpr& x);

struct SpectralFactors {
  ExactMatrix first, second, third;  // A = first * second * third
};

SpectralFactors build_A_factors(const ExactConfig& c, const RationalExpr& x);
ExactMatrix build_A(const ExactConfig& c, const RationalExpr& x);
ExactMatrix build_B(MapId id, const ExactConfig& c, const RationalExpr& x);

/// T(A) B - B(qx) A, with T(A) built from `next` (the transformed configuration).
ExactMatrix compat_residual(MapId id, const ExactConfig& c, const ExactConfig& next, Symbol x);

/// The deformation's parameter action applied to c, with f0, f1 replaced by the given
/// unknowns (f2 derived from them).
ExactConfig with_unknown_updates(MapId id, const ExactConfig& c, const RationalExpr& F0, const RationalExpr& F1);

struct EntryVerdict {
  int row = 0, col = 0;
  int xpower = 0;
  bool zero = false;
};

struct VerificationReport {
  MapId id = MapId::IV;
  std::string mode;  // "symbolic" or "sampled"
  bool verified = false;
  std::vector<EntryVerdict> entries;
  bool negative_control = false;  // true when the identity update leaves a nonzero residual
  std::size_t residual_terms[2][2] = {{0, 0}, {0, 0}};  // numerator sizes of the unknown-update residual
  int max_xdegree = 0;
  int samples = 0;
  int samples_skipped = 0;  // base points met while sampling
  std::uint64_t seed = 0;
  bool probe_nonzero = false;  // numeric pre-check flagged a nonzero residual
  std::vector<std::pair<std::string, std::string>> parameters;  // exact values used (sampled: first sample)
  double elapsed_ms = -1;  // negative when timing is not recorded
};

struct VerifyOptions {
  bool sampled = false;
  int samples = 100;
  std::uint64_t seed = 7;
};

VerificationReport verify_theorem(MapId id, const VerifyOptions& opt = {});

nlohmann::ordered_json to_json(const VerificationReport& r);

/// Converse direction: with T(f0), T(f1) unknown, the residual determines them.
struct ConverseReport {
  MapId id = MapId::IV;
  bool solved = false;
  bool unique = false;        // a degree-one eliminant fixes T(f1); the pivot fixes T(f0)
  bool consistent = false;    // every residual coefficient vanishes at the solution
  bool matches_map = false;   // the solution equals step()
  std::size_t equations = 0;
  std::string note;  // genericity assumptions used
  bool verified() const { return solved && unique && consistent && matches_map; }
};

ConverseReport verify_converse(MapId id);

/// SIII with T(f1) = f0 imposed: each nonzero x-coefficient solved alone for T(f0).
struct SingleUnknownReport {
  std::size_t coefficients = 0;
  std::size_t agreeing = 0;  // those whose solution equals the second SIII relation
  bool verified() const { return coefficients > 0 && agreeing == coefficients; }
};
SingleUnknownReport verify_siii_single_unknown();

struct RegularityReport {
  bool a0_is_antisymmetric_block = false;  // A(0) = [[0,-1],[1,0]]
  bool det_a0_is_one = false;
  bool leading_diagonal = false;
  bool leading_invertible = false;
  RationalExpr leading_det;
  bool det_factorizes = false;  // det A = (1-q^2x^2)(1-a0^2a2^2x^2)(1-a0^2x^2)
  bool delta_sp_matches = false;
  bool verified() const {
    return a0_is_antisymmetric_block && det_a0_is_one && leading_diagonal && leading_invertible && det_factorizes &&
           delta_sp_matches;
  }
};

/// Symbolic when c is the generic configuration; exact values otherwise.
RegularityReport regularity_report(const ExactConfig& c);

struct FactorizationReport {
  bool b_siii_is_third_factor = false;
  bool b_iii_is_shifted_product = false;  // B_III = T_SIII(B_SIII) B_SIII
  bool det_b_iv_is_one = false;
  bool shared_spectral_matrix = false;  // the same A is used by all three residuals
  bool verified() const {
    return b_siii_is_third_factor && b_iii_is_shifted_product && det_b_iv_is_one && shared_spectral_matrix;
  }
};
FactorizationReport factorization_report();

nlohmann::ordered_json to_json(const RegularityReport& r);
nlohmann::ordered_json to_json(const ConverseReport& r);

/// Spectral symbol shared by every construction in this module.
Symbol spectral_symbol();

}  // namespace qlax
