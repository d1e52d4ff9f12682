#include <doctest.h>

#include <random>

#include "qlax/quadcat/quadcat.hpp"

using namespace qlax;

TEST_CASE("catalog values") {
  RationalExpr x2(sym("x2")), x4(sym("x4")), a(sym("a")), b(sym("b")), x(sym("x"));
  CHECK(eval_quad(QuadKind::h1(a, a), 5, x2, 5, x4).is_zero());
  CHECK(eval_quad(QuadKind::d4(), 1, 1, 1, 1) == RationalExpr(2));
  CHECK(eval_quad(QuadKind::q1(a, b), x, x, x, x).is_zero());
}

TEST_CASE("solve vertex") {
  CHECK(solve_vertex(QuadKind::h1(1, 3), {2, 0, 1, 0}, 3) == RationalExpr(2));
  // x1 = x3 with H1: the x4 coefficient (x1 - x3) vanishes
  CHECK_THROWS_AS(solve_vertex(QuadKind::h1(1, 3), {1, 0, 1, 0}, 3), SingularSolve);
}

TEST_CASE("multi-affinity") {
  RationalExpr a(sym("a")), b(sym("b"));
  CHECK(check_multiaffine(QuadKind::q1(a, b, 1)));
  CHECK(check_multiaffine(QuadKind::h3(a, b, 1, 1)));
  CHECK(check_multiaffine(QuadKind::h3(a, b, 0, 0)));
  CHECK(check_multiaffine(QuadKind::h1(a, b, 1)));
  CHECK(check_multiaffine(QuadKind::d4(1, 1, 1)));
  CHECK_FALSE(check_multiaffine([](const QuadArgs& x) { return x[0] * x[0] * x[1] + x[2]; }));
}

TEST_CASE("solve round trip") {
  std::mt19937_64 rng(101);
  int done = 0;
  auto draw = [&] { return RationalExpr(random_gaussian_rational(rng, 30)); };
  for (int k = 0; done < 500 && k < 1000; ++k) {
    QuadKind kinds[] = {QuadKind::q1(draw(), draw(), draw()), QuadKind::h3(draw(), draw(), draw(), draw()),
                        QuadKind::h1(draw(), draw(), draw()), QuadKind::d4(draw(), draw(), draw())};
    const QuadKind& kind = kinds[k % 4];
    QuadArgs x{draw(), draw(), draw(), draw()};
    int t = static_cast<int>(rng() % 4);
    try {
      x[t] = solve_vertex(kind, x, t);
    } catch (const SingularSolve&) {
      continue;
    } catch (const DivisionByZero&) {
      continue;  // H3 with a zero alpha
    }
    CHECK(eval_quad(kind, x).is_zero());
    ++done;
  }
  CHECK(done == 500);
}

TEST_CASE("named lattice equations") {
  auto r = check_named_equations();
  CHECK(r.schwarzian_kdv);
  CHECK(r.modified_kdv);
  CHECK(r.potential_kdv);
  CHECK(r.volterra);
}

TEST_CASE("uniform Q1 cube") {
  RationalExpr a(sym("a1")), b(sym("a2")), c(sym("a3"));
  auto cube = CubeAssignment::uniform([](RationalExpr x, RationalExpr y) { return QuadKind::q1(x, y); }, a, b, c);
  auto r = check_cube_consistency(cube);
  CHECK(r.consistent());
  CHECK(r.tetrahedron[0]);
  CHECK(r.tetrahedron[1]);
  CHECK(r.tetra_nullity[0] == 1);
}

TEST_CASE("system cubes are consistent") {
  auto params = ParameterSequences::free();
  for (auto [a, b, c] : {std::tuple{1, 2, 3}, std::tuple{1, 2, 4}, std::tuple{1, 3, 4}, std::tuple{2, 3, 4}}) {
    auto cube = system_cube(a, b, c, params);
    auto sym_rep = check_cube_consistency(cube);
    CHECK(sym_rep.consistent());
    CHECK(sym_rep.tetrahedron[0]);
    CHECK(sym_rep.tetrahedron[1]);
    ConsistencyOptions opt;
    opt.sampled = true;
    auto smp = check_cube_consistency(cube, opt);
    CHECK(smp.consistent());
    CHECK(smp.samples == 100);
  }
}

TEST_CASE("corrupted face parameter") {
  auto params = ParameterSequences::free();
  auto cube = system_cube(1, 2, 3, params);
  cube.faces[3].kind.alpha1 = cube.faces[3].kind.alpha1 + 1;
  CHECK_FALSE(check_cube_consistency(cube).consistent());
}

TEST_CASE("face validation") {
  auto cube = system_cube(1, 2, 4, ParameterSequences::free());
  cube.faces[4].args[0] = v2;
  CHECK_THROWS_AS(cube.validate(), std::invalid_argument);
}
