#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include <json.hpp>

#include "qlax/errors.hpp"
#include "qlax/exactfield/rational_expr.hpp"
#include "qlax/lattice4d/lattice.hpp"

namespace qlax {

enum class QuadTag { Q1, H3, H1, D4 };

/// One ABS polynomial with its parameters. The discrete parameters are carried as
/// expressions so that D4 can take the lattice-dependent coefficients of the 4D system.
struct QuadKind {
  QuadTag tag = QuadTag::Q1;
  RationalExpr alpha1, alpha2;
  RationalExpr delta, epsilon;  // Q1, H1: epsilon; H3: delta and epsilon
  RationalExpr d1, d2, d3;      // D4

  static QuadKind q1(RationalExpr a1, RationalExpr a2, RationalExpr eps = 0);
  static QuadKind h3(RationalExpr a1, RationalExpr a2, RationalExpr delta = 0, RationalExpr eps = 0);
  static QuadKind h1(RationalExpr a1, RationalExpr a2, RationalExpr eps = 0);
  static QuadKind d4(RationalExpr d1 = 0, RationalExpr d2 = 0, RationalExpr d3 = 0);

  std::string name() const;
  /// Same kind with every parameter passed through f.
  QuadKind mapped(const std::function<RationalExpr(const RationalExpr&)>& f) const;
};

using QuadArgs = std::array<RationalExpr, 4>;

RationalExpr eval_quad(const QuadKind& k, const RationalExpr& x1, const RationalExpr& x2, const RationalExpr& x3,
                       const RationalExpr& x4);
inline RationalExpr eval_quad(const QuadKind& k, const QuadArgs& x) { return eval_quad(k, x[0], x[1], x[2], x[3]); }

/// Value of x[target] (0-based) that makes the polynomial vanish; the entry at target is
/// ignored. Throws SingularSolve when its coefficient vanishes.
RationalExpr solve_vertex(const QuadKind& k, const QuadArgs& x, int target);

bool check_multiaffine(const QuadKind& k);
bool check_multiaffine(const std::function<RationalExpr(const QuadArgs&)>& poly);

enum Vertex { v0, v1, v2, v3, v12, v23, v31, v123 };
const char* vertex_name(Vertex v);

struct FaceEquation {
  QuadKind kind;
  std::array<Vertex, 4> args;  // vertex passed as x1..x4
};

/// Faces in the order P(x0,x1,x2,x12), P1(x0,x2,x3,x23), P2(x0,x3,x1,x31),
/// P3(x3,x31,x23,x123), P4(x1,x12,x31,x123), P5(x2,x23,x12,x123).
struct CubeAssignment {
  std::array<FaceEquation, 6> faces;
  std::string label;

  /// Throws std::invalid_argument when a face does not use exactly the vertices of its face.
  void validate() const;

  /// The usual ABS cube: every face carries make(alpha_a, alpha_b) for its two directions.
  static CubeAssignment uniform(const std::function<QuadKind(RationalExpr, RationalExpr)>& make, RationalExpr a1,
                                RationalExpr a2, RationalExpr a3);
};

/// The cube of the 4D system spanned by directions a < b < c at base point l: H3 faces
/// H3(u, u_j, u_ij, u_i; p_j, p_i; 0; 0) and D4 faces D4(u, u_i4, u_4, u_i; p_i K, 0, 0).
CubeAssignment system_cube(int a, int b, int c, const ParameterSequences& params, const LatticePoint& l = {});

struct ConsistencyOptions {
  bool sampled = false;
  int samples = 100;
  std::uint64_t seed = 7;
};

struct ConsistencyReport {
  std::string label;
  std::string mode;
  std::array<std::string, 3> routes;        // x123 via P3, P4, P5 (sampled: first sample)
  std::array<bool, 3> pairwise{};           // (P3,P4), (P3,P5), (P4,P5)
  int samples = 0;
  std::uint64_t seed = 0;
  int tetra_nullity[2] = {0, 0};            // dimensions of the multi-affine relation spaces
  bool tetrahedron[2] = {false, false};     // P6(x0,x12,x23,x31) = 0, P7(x1,x2,x3,x123) = 0
  std::array<std::string, 2> tetra_polys;
  bool consistent() const { return pairwise[0] && pairwise[1] && pairwise[2]; }
  nlohmann::ordered_json to_json() const;
};

/// Throws SingularSolve naming the failing route.
ConsistencyReport check_cube_consistency(const CubeAssignment& c, const ConsistencyOptions& opt = {});

/// The four named lattice equations recovered from the catalog formulas.
struct NamedEquationReport {
  bool schwarzian_kdv = false;
  bool modified_kdv = false;
  bool potential_kdv = false;
  bool volterra = false;
  bool all() const { return schwarzian_kdv && modified_kdv && potential_kdv && volterra; }
};
NamedEquationReport check_named_equations();

}  // namespace qlax
