#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyreal/error.hpp"
#include "polyreal/parser.hpp"
#include "polyreal/root_solver.hpp"
#include "support.hpp"

using namespace polyreal;
using oracle::point;

namespace {

NullspaceBasis basis_of(const PolySystem& sys, int d) {
  const auto M = build_macaulay(sys, d);
  NullspaceBasis b = nullspace(M.data());
  b.degree_block_bounds = M.degree_block_bounds();
  return b;
}

Root affine_root(std::initializer_list<Complex> coords, int mult = 1) {
  Root r;
  r.point.resize(static_cast<Eigen::Index>(coords.size()) + 1);
  r.point(0) = 1.0;
  Eigen::Index k = 1;
  for (auto c : coords) r.point(k++) = c;
  r.multiplicity = mult;
  return r;
}

std::size_t count_small(const Eigen::VectorXcd& values, double tol) {
  std::size_t count = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) count += std::abs(values(k)) <= tol ? 1 : 0;
  return count;
}

}  // namespace

TEST_CASE("affine shift selections on the quadratic basis") {
  const auto s1 = make_affine_selection(2, 2, 1);
  CHECK(s1.rows_from == std::vector<Eigen::Index>{0, 1, 2});
  CHECK(s1.rows_to == std::vector<Eigen::Index>{1, 3, 4});
  const auto s2 = make_affine_selection(2, 2, 2);
  CHECK(s2.rows_to == std::vector<Eigen::Index>{2, 4, 5});
  CHECK_THROWS_AS(make_affine_selection(2, 2, 0), ArgumentError);
  CHECK_THROWS_AS(make_affine_selection(2, 0, 1), ArgumentError);
}

TEST_CASE("homogeneous shift selections") {
  const auto s = make_homogeneous_selection(2, 2, 1, 2);
  CHECK(s.rows_from == std::vector<Eigen::Index>{2, 4, 5});
  CHECK(s.rows_to == std::vector<Eigen::Index>{1, 3, 4});
  const auto down = make_homogeneous_selection(2, 3, 0, 1);
  CHECK(down.rows_from.size() == 6);
  CHECK_THROWS_AS(make_homogeneous_selection(2, 2, 1, 1), ArgumentError);
  CHECK_THROWS_AS(make_homogeneous_selection(2, 2, 3, 1), ArgumentError);

  // i/j followed by j/i returns every row to where it started
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      if (i == j) continue;
      const auto fwd = make_homogeneous_selection(2, 3, i, j);
      const auto back = make_homogeneous_selection(2, 3, j, i);
      for (std::size_t r = 0; r < fwd.rows_from.size(); ++r) {
        const auto it = std::find(back.rows_from.begin(), back.rows_from.end(), fwd.rows_to[r]);
        REQUIRE(it != back.rows_from.end());
        CHECK(back.rows_to[static_cast<std::size_t>(it - back.rows_from.begin())] == fwd.rows_from[r]);
      }
    }
  }
}

TEST_CASE("gap detection on the worked examples") {
  const auto g3 = find_gap(basis_of(support::load("ex3.poly"), 2), 1e-9);
  CHECK(g3.block_ranks == std::vector<Eigen::Index>{1, 1, 0});
  CHECK(g3.gap_degree == 2);
  CHECK(g3.m_R == 2);
  CHECK(g3.m_S == 0);
  CHECK(g3.stabilized);

  const auto g7 = find_gap(basis_of(support::load("ex7.poly"), 3), 1e-9);
  CHECK(g7.block_ranks == std::vector<Eigen::Index>{1, 2, 1, 0});
  CHECK(g7.m_R == 4);

  const auto g8 = find_gap(basis_of(support::load("ex8.poly"), 2), 1e-9);
  CHECK(g8.block_ranks == std::vector<Eigen::Index>{1, 0, 1});
  CHECK(g8.gap_degree == 1);
  CHECK(g8.m_R == 1);
  CHECK(g8.m_S == 1);
  CHECK(g8.independent_degrees() == std::vector<int>{0, 2});

  const auto g10 = find_gap(basis_of(support::load("ex10.poly"), 4), 1e-9);
  CHECK(g10.block_ranks == std::vector<Eigen::Index>{1, 1, 0, 1, 1});
  CHECK(g10.m_R == 2);
  CHECK(g10.m_S == 2);
}

TEST_CASE("parallel lines do not stabilize at degree one") {
  const auto sys = parse_system("vars: z1 z2\nz1 + z2 - 1\nz1 + z2 - 2\n");
  const auto g = find_gap(basis_of(sys, 1), 1e-9);
  CHECK(g.nullity == 1);
  CHECK_FALSE(g.stabilized);
  CHECK_FALSE(g.gap_degree.has_value());

  const auto roots = solve(sys);
  CHECK(roots.affine_roots().empty());
  REQUIRE(roots.infinity_roots().size() == 1);
  CHECK((roots.infinity_roots()[0].point - point({0.0, 1.0, -1.0})).norm() <= 1e-9);
}

TEST_CASE("gap report on a synthetic basis") {
  NullspaceBasis b;
  b.Z = Eigen::MatrixXd::Zero(6, 2);
  b.Z(0, 0) = 1.0;
  b.Z(5, 1) = 1.0;
  b.degree_block_bounds = {1, 3, 6};
  const auto g = find_gap(b, 1e-9);
  CHECK(g.block_ranks == std::vector<Eigen::Index>{1, 0, 1});
  CHECK(g.gap_degree == 1);
  CHECK(g.m_R == 1);
  CHECK(g.m_S == 1);
  b.Z(5, 1) = 1e-12;
  CHECK(find_gap(b, 1e-9).block_ranks == std::vector<Eigen::Index>{1, 0, 0});
  b.degree_block_bounds.clear();
  CHECK_THROWS_AS(find_gap(b, 1e-9), ArgumentError);
}

TEST_CASE("univariate examples") {
  const auto r1 = solve(support::load("ex1.poly"));
  CHECK(oracle::same_point_set(support::affine_points(r1), {point({1.0}), point({2.0})}, 1e-10));
  CHECK(r1.diagnostics.degree_used == 2);

  const auto r2 = solve(support::load("ex2.poly"));
  CHECK(oracle::same_point_set(support::affine_points(r2), {point({-1.0}), point({2.0})}, 1e-10));
  CHECK(r2.diagnostics.degree_used == 3);
  CHECK_FALSE(r2.diagnostics.bezout.has_value());
}

TEST_CASE("two simple roots of the worked example") {
  const auto roots = solve(support::load("ex3.poly"));
  CHECK(oracle::same_point_set(support::affine_points(roots), {point({3.0, 1.0}), point({2.0, 3.0})}, 1e-10));
  for (const auto& r : roots.roots) {
    CHECK(r.residual <= 1e-10);
    CHECK_FALSE(r.flagged);
  }
  // descending lexicographic order
  CHECK(roots.roots[0].affine()(0).real() > roots.roots[1].affine()(0).real());
  CHECK(roots.diagnostics.warnings.empty());
}

TEST_CASE("shift eigenvalues reproduce each coordinate of simple roots") {
  const auto Z = basis_of(support::load("ex3.poly"), 2).Z;
  const auto e1 = eig(affine_shift_matrix(Z, 2, 2, 1)).values;
  const auto e2 = eig(affine_shift_matrix(Z, 2, 2, 2)).values;
  CHECK(std::abs(e1(0) - 2.0) <= 1e-10);
  CHECK(std::abs(e1(1) - 3.0) <= 1e-10);
  CHECK(std::abs(e2(0) - 1.0) <= 1e-10);
  CHECK(std::abs(e2(1) - 3.0) <= 1e-10);
}

TEST_CASE("fourfold root") {
  const auto roots = solve(support::load("ex7.poly"));
  REQUIRE(roots.roots.size() == 1);
  CHECK(roots.roots[0].multiplicity == 4);
  CHECK((roots.roots[0].affine() - point({1.0, 2.0})).norm() <= 1e-6);
  CHECK(roots.total_multiplicity() == 4);
}

TEST_CASE("dual basis of the fourfold root") {
  const auto sys = support::load("ex7.poly");
  const Point x = point({1.0, 2.0});
  const Monomial d00({0, 0}), d10({1, 0}), d01({0, 1}), d20({2, 0}), d11({1, 1});
  const std::vector<DualFunctional> duals = {{{d00, 1.0}}, {{d10, 1.0}}, {{d01, 1.0}}, {{d20, 2.0}, {d11, 1.0}}};
  for (int d = 3; d <= 5; ++d) CHECK(verify_dual_basis(sys, x, duals, d) <= 1e-10);
  CHECK(verify_dual_basis(sys, x, {{{d20, 1.0}}}, 3) > 0.5);
}

TEST_CASE("root at infinity with a parabola") {
  const auto roots = solve(support::load("ex8.poly"));
  REQUIRE(roots.affine_roots().size() == 1);
  CHECK((roots.affine_roots()[0].affine() - point({3.0, 9.0})).norm() <= 1e-9);
  REQUIRE(roots.infinity_roots().size() == 1);
  CHECK((roots.infinity_roots()[0].point - point({0.0, 0.0, 1.0})).norm() <= 1e-9);
  CHECK(roots.diagnostics.infinity_extracted);
  CHECK(roots.total_multiplicity() == 2);
}

TEST_CASE("double root at infinity") {
  const auto roots = solve(support::load("ex10.poly"));
  CHECK(oracle::same_point_set(support::affine_points(roots), {point({2.0, 3.0}), point({-2.0, -3.0})}, 1e-9));
  REQUIRE(roots.infinity_roots().size() == 1);
  const Root inf = roots.infinity_roots()[0];
  CHECK(inf.multiplicity == 2);
  CHECK((inf.point - point({0.0, 1.0, -1.0})).norm() <= 1e-6);
  CHECK(roots.diagnostics.gap.m_S == 2);
}

TEST_CASE("dual basis of the double root at infinity") {
  const auto h = homogenize(support::load("ex10.poly"));
  const Point x = point({0.0, 1.0, -1.0});
  const std::vector<DualFunctional> duals = {{{Monomial({0, 0, 0}), 1.0}}, {{Monomial({1, 0, 0}), 1.0}}};
  CHECK(verify_dual_basis(h, x, duals, 3) <= 1e-10);
  CHECK(verify_dual_basis(h, x, {{{Monomial({0, 1, 0}), 1.0}}}, 3) > 0.5);
}

TEST_CASE("down shift in z0 has one zero eigenvalue per root at infinity") {
  const auto ex10 = support::load("ex10.poly");
  const auto Z10 = basis_of(ex10, 4).Z;
  CHECK(count_small(eig(homogeneous_shift_matrix(Z10, 2, 4, 0, 1)).values, 1e-5) == 2);
  const auto ex8 = support::load("ex8.poly");
  const auto Z8 = basis_of(ex8, 3).Z;
  CHECK(count_small(eig(homogeneous_shift_matrix(Z8, 2, 3, 0, 2)).values, 1e-5) == 1);
}

TEST_CASE("result does not depend on the null-space basis") {
  std::mt19937_64 rng(21);
  for (const char* file : {"ex3.poly", "ex8.poly", "ex10.poly"}) {
    const auto sys = support::load(file);
    const auto reference = solve_detailed(sys);
    NullspaceBasis rotated = reference.basis;
    rotated.Z = rotated.Z * oracle::random_orthogonal(rotated.Z.cols(), rng);
    const auto again = solve_from_basis(sys, reference.macaulay, rotated, SolveConfig{});
    CAPTURE(file);
    CHECK(oracle::same_point_set(support::affine_points(again.roots, true),
                                 support::affine_points(reference.roots, true), 1e-8));
    CHECK(oracle::same_point_set(support::infinity_points(again.roots), support::infinity_points(reference.roots),
                                 1e-6));
  }
}

TEST_CASE("result does not depend on the random seed") {
  for (const char* file : {"ex3.poly", "ex7.poly", "ex10.poly"}) {
    const auto sys = support::load(file);
    const auto reference = solve(sys);
    for (std::uint64_t seed : {1u, 7u, 12345u}) {
      SolveConfig cfg;
      cfg.seed = seed;
      const auto again = solve(sys, cfg);
      CAPTURE(file);
      CAPTURE(seed);
      CHECK(oracle::same_point_set(support::affine_points(again, true), support::affine_points(reference, true),
                                   1e-6));
      CHECK(again.total_multiplicity() == reference.total_multiplicity());
    }
  }
}

TEST_CASE("multiplicities add up to the Bezout number") {
  for (const char* file : {"ex1.poly", "ex3.poly", "ex7.poly", "ex8.poly", "ex10.poly"}) {
    const auto sys = support::load(file);
    const auto roots = solve(sys);
    CAPTURE(file);
    CHECK(roots.total_multiplicity() == sys.bezout_number());
  }
}

TEST_CASE("random combinations are deterministic and in range") {
  const auto a = random_combination(42, 5);
  const auto b = random_combination(42, 5);
  CHECK(a == b);
  CHECK(a.minCoeff() >= 0.5);
  CHECK(a.maxCoeff() < 1.5);
  CHECK(random_combination(43, 5) != a);
}

TEST_CASE("clustering merges at the boundary and keeps roots at infinity apart") {
  const auto sys = parse_system("vars: z1 z2\nz1 - 1\nz2\n");
  RootSet raw;
  raw.diagnostics.residual_tol = 1e-6;
  raw.roots = {affine_root({1.0, 0.0}, 1), affine_root({1.5, 0.0}, 3), affine_root({4.0, 0.0})};
  const auto merged = cluster_roots(raw, sys, 0.5);
  REQUIRE(merged.roots.size() == 2);
  CHECK(merged.roots[0].affine()(0) == Complex(4.0));
  CHECK(merged.roots[1].multiplicity == 4);
  CHECK(merged.roots[1].affine()(0) == Complex(1.375));
  CHECK(merged.roots[1].flagged);
  CHECK(merged.roots[0].flagged);

  const auto apart = cluster_roots(raw, sys, 0.4999);
  CHECK(apart.roots.size() == 3);

  Root inf;
  inf.at_infinity = true;
  inf.point = point({0.0, 1.0, 0.0});
  RootSet mixed;
  mixed.roots = {affine_root({1.0, 0.0}), inf};
  const auto kept = cluster_roots(mixed, sys, 10.0);
  REQUIRE(kept.roots.size() == 2);
  CHECK_FALSE(kept.roots[0].at_infinity);
  CHECK(kept.roots[1].at_infinity);
  CHECK(kept.roots[0].residual == 0.0);
}

TEST_CASE("a basis containing the singular part makes the affine shift degenerate") {
  const auto sys = support::load("ex8.poly");
  const auto Z = basis_of(sys, 2).Z;
  CHECK_THROWS_AS(solve_affine(Z, 2, sys, SolveConfig{}), DegenerateShiftError);
}

TEST_CASE("positive-dimensional systems never stabilize") {
  const auto sys = parse_system("vars: z1 z2\nz1^2 - z1*z2\nz1*z2 - z2^2\n");
  CHECK_THROWS_AS(solve(sys), NoStabilizationError);
}

TEST_CASE("square S0 gives the same roots") {
  SolveConfig cfg;
  cfg.square_s0 = true;
  const auto roots = solve(support::load("ex3.poly"), cfg);
  CHECK(oracle::same_point_set(support::affine_points(roots), {point({3.0, 1.0}), point({2.0, 3.0})}, 1e-10));
}

TEST_CASE("configuration validation") {
  SolveConfig cfg;
  cfg.basis_tol = 0.0;
  CHECK_THROWS_AS(solve(support::load("ex3.poly"), cfg), ArgumentError);
  SolveConfig low;
  low.degree = 1;
  CHECK_THROWS_AS(solve(support::load("ex3.poly"), low), ArgumentError);
}
