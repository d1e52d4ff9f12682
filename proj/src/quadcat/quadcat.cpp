#include "qlax/quadcat/quadcat.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qlax/exactfield/linear.hpp"

namespace qlax {

QuadKind QuadKind::q1(RationalExpr a1, RationalExpr a2, RationalExpr eps) {
  QuadKind k;
  k.tag = QuadTag::Q1;
  k.alpha1 = std::move(a1);
  k.alpha2 = std::move(a2);
  k.epsilon = std::move(eps);
  return k;
}

QuadKind QuadKind::h3(RationalExpr a1, RationalExpr a2, RationalExpr delta, RationalExpr eps) {
  QuadKind k;
  k.tag = QuadTag::H3;
  k.alpha1 = std::move(a1);
  k.alpha2 = std::move(a2);
  k.delta = std::move(delta);
  k.epsilon = std::move(eps);
  return k;
}

QuadKind QuadKind::h1(RationalExpr a1, RationalExpr a2, RationalExpr eps) {
  QuadKind k;
  k.tag = QuadTag::H1;
  k.alpha1 = std::move(a1);
  k.alpha2 = std::move(a2);
  k.epsilon = std::move(eps);
  return k;
}

QuadKind QuadKind::d4(RationalExpr d1, RationalExpr d2, RationalExpr d3) {
  QuadKind k;
  k.tag = QuadTag::D4;
  k.d1 = std::move(d1);
  k.d2 = std::move(d2);
  k.d3 = std::move(d3);
  return k;
}

std::string QuadKind::name() const {
  switch (tag) {
    case QuadTag::Q1:
      return "Q1";
    case QuadTag::H3:
      return "H3";
    case QuadTag::H1:
      return "H1";
    case QuadTag::D4:
      return "D4";
  }
  return "?";
}

QuadKind QuadKind::mapped(const std::function<RationalExpr(const RationalExpr&)>& f) const {
  QuadKind k = *this;
  for (RationalExpr* e : {&k.alpha1, &k.alpha2, &k.delta, &k.epsilon, &k.d1, &k.d2, &k.d3}) *e = f(*e);
  return k;
}

RationalExpr eval_quad(const QuadKind& k, const RationalExpr& x1, const RationalExpr& x2, const RationalExpr& x3,
                       const RationalExpr& x4) {
  const RationalExpr& a1 = k.alpha1;
  const RationalExpr& a2 = k.alpha2;
  switch (k.tag) {
    case QuadTag::Q1:
      return a1 * (x1 * x2 + x3 * x4) - a2 * (x1 * x4 + x2 * x3) - (a1 - a2) * (x1 * x3 + x2 * x4) +
             k.epsilon * a1 * a2 * (a1 - a2);
    case QuadTag::H3: {
      RationalExpr tail = k.delta;
      if (!k.epsilon.is_zero()) tail += k.epsilon / (a1 * a2) * x2 * x4;
      return a1 * (x1 * x2 + x3 * x4) - a2 * (x1 * x4 + x2 * x3) + (a1 * a1 - a2 * a2) * tail;
    }
    case QuadTag::H1:
      return (x1 - x3) * (x2 - x4) + (a2 - a1) * (1 - k.epsilon * x2 * x4);
    case QuadTag::D4:
      return x1 * x3 + x2 * x4 + k.d1 * x1 * x4 + k.d2 * x3 * x4 + k.d3;
  }
  throw std::logic_error("unknown quad kind");
}

RationalExpr solve_vertex(const QuadKind& k, const QuadArgs& x, int target) {
  if (target < 0 || target > 3) throw std::invalid_argument("target must be 0..3");
  QuadArgs at = x;
  at[target] = 0;
  RationalExpr p0 = eval_quad(k, at);
  at[target] = 1;
  RationalExpr c = eval_quad(k, at) - p0;
  if (c.is_zero()) throw SingularSolve(k.name() + ": coefficient of x" + std::to_string(target + 1) + " vanishes");
  return -p0 / c;
}

bool check_multiaffine(const std::function<RationalExpr(const QuadArgs&)>& poly) {
  Symbol s[4] = {Symbol("x1"), Symbol("x2"), Symbol("x3"), Symbol("x4")};
  RationalExpr p = poly({RationalExpr(s[0]), RationalExpr(s[1]), RationalExpr(s[2]), RationalExpr(s[3])});
  for (Symbol v : s)
    if (p.denominator_contains(v) || numerator_degree(p, v) > 1) return false;
  return true;
}

bool check_multiaffine(const QuadKind& k) {
  return check_multiaffine([&](const QuadArgs& x) { return eval_quad(k, x); });
}

// ---------------------------------------------------------------- cubes

const char* vertex_name(Vertex v) {
  static const char* names[] = {"x0", "x1", "x2", "x3", "x12", "x23", "x31", "x123"};
  return names[v];
}

namespace {

const std::array<std::array<Vertex, 4>, 6> kFaceVertices{{{v0, v1, v2, v12},
                                                          {v0, v2, v3, v23},
                                                          {v0, v3, v1, v31},
                                                          {v3, v31, v23, v123},
                                                          {v1, v12, v31, v123},
                                                          {v2, v23, v12, v123}}};

using VertexValues = std::array<std::optional<RationalExpr>, 8>;

RationalExpr solve_face(const FaceEquation& f, const VertexValues& vals, Vertex target) {
  QuadArgs args;
  int t = -1;
  for (int k = 0; k < 4; ++k) {
    if (f.args[k] == target) {
      t = k;
      args[k] = 0;
    } else {
      args[k] = *vals[f.args[k]];
    }
  }
  return solve_vertex(f.kind, args, t);
}

struct Routes {
  VertexValues vals;
  RationalExpr x123[3];
};

Routes compute_routes(const CubeAssignment& c, const RationalExpr& x0, const RationalExpr& x1, const RationalExpr& x2,
                      const RationalExpr& x3) {
  Routes r;
  r.vals[v0] = x0;
  r.vals[v1] = x1;
  r.vals[v2] = x2;
  r.vals[v3] = x3;
  const Vertex side[3] = {v12, v23, v31};
  for (int f = 0; f < 3; ++f) {
    try {
      r.vals[side[f]] = solve_face(c.faces[f], r.vals, side[f]);
    } catch (const SingularSolve& e) {
      throw SingularSolve(std::string("solving ") + vertex_name(side[f]) + " from face P" +
                          (f == 0 ? std::string() : std::to_string(f)) + ": " + e.what());
    }
  }
  for (int f = 3; f < 6; ++f) {
    try {
      r.x123[f - 3] = solve_face(c.faces[f], r.vals, v123);
    } catch (const SingularSolve& e) {
      throw SingularSolve("route through P" + std::to_string(f) + ": " + e.what());
    }
  }
  return r;
}

std::vector<Symbol> parameter_symbols(const CubeAssignment& c) {
  std::set<Symbol> out;
  for (const auto& f : c.faces) {
    f.kind.mapped([&](const RationalExpr& e) {
      for (Symbol s : e.free_symbols()) out.insert(s);
      return e;
    });
  }
  return {out.begin(), out.end()};
}

CubeAssignment instantiate(const CubeAssignment& c, const std::vector<Symbol>& syms, std::mt19937_64& rng,
                           long bound = 20) {
  if (syms.empty()) return c;
  Point pt;
  for (Symbol s : syms) pt[s] = random_nonzero_gaussian_rational(rng, bound);
  CubeAssignment out = c;
  for (auto& f : out.faces) f.kind = f.kind.mapped([&](const RationalExpr& e) { return substitute(e, pt); });
  return out;
}

// multi-affine monomials in four values, indexed by subsets
ExactRow monomial_row(const std::array<GaussianRational, 4>& v) {
  ExactRow row(16);
  for (int mask = 0; mask < 16; ++mask) {
    GaussianRational m(1);
    for (int k = 0; k < 4; ++k)
      if (mask & (1 << k)) m *= v[k];
    row[mask] = m;
  }
  return row;
}

void tetrahedron(const CubeAssignment& c, std::uint64_t seed, ConsistencyReport& rep) {
  std::mt19937_64 rng(seed ^ 0x7e7aULL);
  CubeAssignment inst = instantiate(c, parameter_symbols(c), rng, 9);
  const std::array<Vertex, 4> groups[2] = {{v0, v12, v23, v31}, {v1, v2, v3, v123}};
  std::vector<ExactRow> rows[2];
  std::vector<std::array<GaussianRational, 8>> fresh;
  auto sample = [&]() -> std::optional<std::array<GaussianRational, 8>> {
    auto draw = [&] { return RationalExpr(random_nonzero_gaussian_rational(rng, 9)); };
    try {
      Routes r = compute_routes(inst, draw(), draw(), draw(), draw());
      std::array<GaussianRational, 8> v;
      for (int k = 0; k < 7; ++k) v[k] = r.vals[k]->constant_value();
      v[v123] = r.x123[0].constant_value();
      return v;
    } catch (const SingularSolve&) {
      return std::nullopt;
    }
  };
  int need = 24, attempts = 0;
  while (static_cast<int>(rows[0].size()) < need && attempts++ < 400) {
    auto v = sample();
    if (!v) continue;
    for (int g = 0; g < 2; ++g)
      rows[g].push_back(monomial_row({(*v)[groups[g][0]], (*v)[groups[g][1]], (*v)[groups[g][2]], (*v)[groups[g][3]]}));
  }
  attempts = 0;
  while (fresh.size() < 10 && attempts++ < 100)
    if (auto v = sample()) fresh.push_back(*v);
  for (int g = 0; g < 2; ++g) {
    auto basis = nullspace(rows[g], 16);
    rep.tetra_nullity[g] = static_cast<int>(basis.size());
    if (basis.empty()) continue;
    const ExactRow& coeffs = basis.front();
    bool holds = !fresh.empty();
    for (const auto& v : fresh) {
      ExactRow m = monomial_row({v[groups[g][0]], v[groups[g][1]], v[groups[g][2]], v[groups[g][3]]});
      GaussianRational s(0);
      for (int k = 0; k < 16; ++k) s += coeffs[k] * m[k];
      holds = holds && s.is_zero();
    }
    rep.tetrahedron[g] = holds;
    RationalExpr poly(0);
    for (int mask = 0; mask < 16; ++mask) {
      if (coeffs[mask].is_zero()) continue;
      RationalExpr term(coeffs[mask]);
      for (int k = 0; k < 4; ++k)
        if (mask & (1 << k)) term *= RationalExpr(Symbol(vertex_name(groups[g][k])));
      poly += term;
    }
    rep.tetra_polys[g] = poly.to_string();
  }
}

}  // namespace

void CubeAssignment::validate() const {
  for (int f = 0; f < 6; ++f) {
    auto want = kFaceVertices[f];
    auto got = faces[f].args;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) throw std::invalid_argument("face P" + std::to_string(f) + " does not use the vertices of its face");
  }
}

CubeAssignment CubeAssignment::uniform(const std::function<QuadKind(RationalExpr, RationalExpr)>& make, RationalExpr a1,
                                       RationalExpr a2, RationalExpr a3) {
  CubeAssignment c;
  c.label = "uniform " + make(a1, a2).name();
  c.faces = {FaceEquation{make(a1, a2), {v0, v1, v12, v2}}, FaceEquation{make(a2, a3), {v0, v2, v23, v3}},
             FaceEquation{make(a3, a1), {v0, v3, v31, v1}}, FaceEquation{make(a1, a2), {v3, v31, v123, v23}},
             FaceEquation{make(a2, a3), {v1, v12, v123, v31}}, FaceEquation{make(a3, a1), {v2, v23, v123, v12}}};
  c.validate();
  return c;
}

CubeAssignment system_cube(int a, int b, int c, const ParameterSequences& params, const LatticePoint& l) {
  if (!(a < b && b < c) || a < 1 || c > 4) throw std::invalid_argument("directions must satisfy 1 <= a < b < c <= 4");
  // vertices reached from the base by one step in each direction
  std::map<int, Vertex> one{{a, v1}, {b, v2}, {c, v3}};
  auto two = [&](int d1, int d2) {
    std::set<int> s{d1, d2};
    if (s == std::set<int>{a, b}) return v12;
    if (s == std::set<int>{b, c}) return v23;
    return v31;
  };
  auto face = [&](int d1, int d2, Vertex base, Vertex top) {
    Pair pr = oriented_pair(d1, d2);
    auto [i, j] = pr;
    // vertices base + e_i, base + e_j
    auto shifted = [&](int d) {
      if (base == v0) return one[d];
      int other = base == v1 ? a : base == v2 ? b : c;
      return d == other ? top : two(other, d);
    };
    Vertex ui = shifted(i), uj = shifted(j);
    if (is_d4_pair(pr)) {
      RationalExpr p = params.direction_parameter(i, l);
      return FaceEquation{QuadKind::d4(p * params.equation_K(pr, l)), {base, top, uj, ui}};
    }
    RationalExpr pi = params.direction_parameter(i, l), pj = params.direction_parameter(j, l);
    return FaceEquation{QuadKind::h3(pj, pi), {base, uj, top, ui}};
  };
  CubeAssignment cube;
  cube.label = "system cube (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  cube.faces = {face(a, b, v0, v12), face(b, c, v0, v23), face(c, a, v0, v31),
                face(a, b, v3, v123), face(b, c, v1, v123), face(c, a, v2, v123)};
  cube.validate();
  return cube;
}

ConsistencyReport check_cube_consistency(const CubeAssignment& c, const ConsistencyOptions& opt) {
  c.validate();
  ConsistencyReport rep;
  rep.label = c.label;
  rep.mode = opt.sampled ? "sampled" : "symbolic";
  rep.seed = opt.seed;
  if (!opt.sampled) {
    Routes r = compute_routes(c, RationalExpr(Symbol("x0")), RationalExpr(Symbol("x1")), RationalExpr(Symbol("x2")),
                              RationalExpr(Symbol("x3")));
    for (int k = 0; k < 3; ++k) rep.routes[k] = r.x123[k].to_string();
    rep.pairwise = {r.x123[0] == r.x123[1], r.x123[0] == r.x123[2], r.x123[1] == r.x123[2]};
    rep.samples = 1;
  } else {
    std::mt19937_64 rng(opt.seed);
    auto syms = parameter_symbols(c);
    rep.pairwise = {true, true, true};
    for (int s = 0; s < opt.samples; ++s) {
      CubeAssignment inst = instantiate(c, syms, rng);
      auto draw = [&] { return RationalExpr(random_nonzero_gaussian_rational(rng, 100)); };
      RationalExpr x0 = draw(), x1 = draw(), x2 = draw(), x3 = draw();
      Routes r;
      try {
        r = compute_routes(inst, x0, x1, x2, x3);
      } catch (const SingularSolve& e) {
        throw SingularSolve("sample " + std::to_string(s) + ", " + e.what());
      }
      if (s == 0)
        for (int k = 0; k < 3; ++k) rep.routes[k] = r.x123[k].to_string();
      rep.pairwise[0] = rep.pairwise[0] && r.x123[0] == r.x123[1];
      rep.pairwise[1] = rep.pairwise[1] && r.x123[0] == r.x123[2];
      rep.pairwise[2] = rep.pairwise[2] && r.x123[1] == r.x123[2];
      ++rep.samples;
    }
  }
  if (rep.consistent()) tetrahedron(c, opt.seed, rep);
  return rep;
}

nlohmann::ordered_json ConsistencyReport::to_json() const {
  nlohmann::ordered_json j;
  j["cube"] = label;
  j["mode"] = mode;
  j["consistent"] = consistent();
  j["x123"] = {{"P3", routes[0]}, {"P4", routes[1]}, {"P5", routes[2]}};
  j["pairwise"] = {{"P3=P4", pairwise[0]}, {"P3=P5", pairwise[1]}, {"P4=P5", pairwise[2]}};
  j["tetrahedron"] = {{"P6", {{"holds", tetrahedron[0]}, {"nullity", tetra_nullity[0]}, {"polynomial", tetra_polys[0]}}},
                      {"P7", {{"holds", tetrahedron[1]}, {"nullity", tetra_nullity[1]}, {"polynomial", tetra_polys[1]}}}};
  j["samples"] = samples;
  j["seed"] = seed;
  return j;
}

// ---------------------------------------------------------------- named equations

NamedEquationReport check_named_equations() {
  RationalExpr U(sym("U")), Ub(sym("U_bar")), Uh(sym("U_hat")), al(sym("alpha")), be(sym("beta"));
  NamedEquationReport r;
  {
    RationalExpr Uhb = solve_vertex(QuadKind::q1(al, be), {U, Ub, 0, Uh}, 2);
    r.schwarzian_kdv = (U - Ub) * (Uh - Uhb) / ((U - Uh) * (Ub - Uhb)) == al / be;
  }
  {
    RationalExpr Uhb = -solve_vertex(QuadKind::h3(al, be), {U, Ub, 0, Uh}, 2);
    r.modified_kdv = Uhb / U == (al * Ub - be * Uh) / (al * Uh - be * Ub);
  }
  {
    RationalExpr Uhb = solve_vertex(QuadKind::h1(al, be), {U, Ub, 0, Uh}, 2);
    r.potential_kdv = (U - Uhb) * (Ub - Uh) == al - be;
  }
  {
    RationalExpr k = be / al - 1;
    RationalExpr x4 = solve_vertex(QuadKind::d4(), {1 - k * U, Uh, Ub, 0}, 3);
    RationalExpr Uhb = (x4 + 1) / k;
    r.volterra = Uh / Ub == ((be - al) * U - al) / ((be - al) * Uhb - al);
  }
  return r;
}

}  // namespace qlax
