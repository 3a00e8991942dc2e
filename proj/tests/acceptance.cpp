// Acceptance checks: one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polyreal/linalg.hpp"
#include "polyreal/macaulay.hpp"
#include "polyreal/monomial.hpp"
#include "polyreal/realization.hpp"
#include "polyreal/root_solver.hpp"
#include "support.hpp"

using namespace polyreal;
using oracle::point;

namespace {

constexpr double kRootTol = 1e-10;
constexpr double kMatrixTol = 1e-10;
constexpr double kResidualTol = 1e-10;
constexpr double kClusterCentroidTol = 1e-3;
constexpr double kDualTol = 1e-10;
constexpr double kInfinityCaseTol = 1e-8;
constexpr double kNilpotencyTol = 1e-8;
constexpr double kAnnihilationTol = 1e-8;
constexpr double kBasisIndependenceTol = 1e-8;
constexpr double kCommutationTol = 1e-8;
constexpr double kTrajectoryTol = 1e-6;
constexpr int kMaxGridExtent = 8;

// Collects the failed sub-checks of one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd M(2, 2);
  M << a, b, c, d;
  return M;
}

bool sorted_eigenvalues_match(const Eigen::MatrixXd& A, std::vector<double> expected, double tol) {
  const auto values = eig(A).values;
  if (values.size() != static_cast<Eigen::Index>(expected.size())) return false;
  std::sort(expected.begin(), expected.end());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (std::abs(values(k) - expected[static_cast<std::size_t>(k)]) > tol) return false;
  }
  return true;
}

double relative_commutation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const auto inf = [](const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); };
  const double scale = inf(a) * inf(b);
  return scale == 0.0 ? 0.0 : inf(a * b - b * a) / scale;
}

const std::vector<std::string> kExamples = {"ex1.poly", "ex2.poly", "ex3.poly", "ex7.poly", "ex8.poly", "ex10.poly"};

Check criterion1() {
  Check c;
  const auto sys = support::load("ex1.poly");
  const auto roots = solve(sys);
  c.expect(oracle::same_point_set(support::affine_points(roots), {point({1.0}), point({2.0})}, kRootTol), "roots {1, 2}");
  const auto R = realize(sys).realization;
  c.expect(max_abs_diff(R.A[0], mat2(0, 1, -2, 3)) <= kMatrixTol, "A = [[0,1],[-2,3]]");
  c.expect(max_abs_diff(R.c, Eigen::RowVector2d(1, 0)) <= kMatrixTol, "c = [1,0]");
  return c;
}

Check criterion2() {
  Check c;
  const auto sys = support::load("ex2.poly");
  c.expect(build_macaulay(sys, 4).data() == oracle::sylvester_example2(), "Sylvester matrix entrywise");
  const auto roots = solve(sys);
  c.expect(oracle::same_point_set(support::affine_points(roots), {point({-1.0}), point({2.0})}, kRootTol),
           "roots {-1, 2}");
  const auto R = realize(sys).realization;
  c.expect(max_abs_diff(R.A[0], mat2(0, 1, 2, 1)) <= kMatrixTol, "A = [[0,1],[2,1]]");
  return c;
}

Check criterion3() {
  Check c;
  const auto sys = support::load("ex3.poly");
  const auto M = build_macaulay(sys, 2);
  c.expect(M.rows() == 4 && M.cols() == 6, "M_2 is 4x6");
  c.expect(numerical_rank(M.data()) == 4, "rank 4");
  c.expect(nullspace(M.data()).nullity() == 2, "nullity 2");
  const auto roots = solve(sys);
  c.expect(oracle::same_point_set(support::affine_points(roots), {point({3.0, 1.0}), point({2.0, 3.0})}, kRootTol),
           "roots {(3,1), (2,3)}");
  for (const auto& r : roots.roots) c.expect(r.residual <= kResidualTol, "residual <= 1e-10");
  return c;
}

Check criterion4() {
  Check c;
  const auto report = realize(support::load("ex3.poly"));
  const auto& R = report.realization;
  c.expect(max_abs_diff(R.A[0], mat2(0, 1, -6, 5)) <= kMatrixTol, "A1");
  c.expect(max_abs_diff(R.A[1], mat2(7, -2, 12, -3)) <= kMatrixTol, "A2");
  c.expect(max_abs_diff(R.c, Eigen::RowVector2d(1, 0)) <= kMatrixTol, "c");
  c.expect(R.state_monomials == std::vector<Monomial>{Monomial({0, 0}), Monomial({1, 0})}, "pivots {1, z1}");
  return c;
}

Check criterion5() {
  Check c;
  const auto sys = support::load("ex3.poly");
  c.expect(cayley_hamilton_residual(realize(sys).realization, sys) <= kMatrixTol, "f_i(A1, A2) = 0");
  return c;
}

Check criterion6() {
  Check c;
  const auto sys = support::load("ex7.poly");
  const auto M = build_macaulay(sys, 3);
  c.expect(nullspace(M.data()).nullity() == 4, "nullity 4 at d=3");
  const auto roots = solve(sys);
  c.expect(roots.roots.size() == 1, "one clustered root");
  if (roots.roots.size() == 1) {
    c.expect(roots.roots[0].multiplicity == 4, "multiplicity 4");
    c.expect((roots.roots[0].affine() - point({1.0, 2.0})).norm() <= kClusterCentroidTol, "centroid (1,2)");
  }
  const std::vector<DualFunctional> duals = {{{Monomial({0, 0}), 1.0}},
                                             {{Monomial({1, 0}), 1.0}},
                                             {{Monomial({0, 1}), 1.0}},
                                             {{Monomial({2, 0}), 2.0}, {Monomial({1, 1}), 1.0}}};
  c.expect(verify_dual_basis(sys, point({1.0, 2.0}), duals, 3) <= kDualTol, "dual basis residual");
  return c;
}

Check criterion7() {
  Check c;
  const auto sys = support::load("ex8.poly");
  const auto roots = solve(sys);
  const auto affine = support::affine_points(roots);
  c.expect(oracle::same_point_set(affine, {point({3.0, 9.0})}, kInfinityCaseTol), "affine root (3,9)");
  const auto inf = roots.infinity_roots();
  c.expect(inf.size() == 1, "one root at infinity");
  if (inf.size() == 1) {
    c.expect((inf[0].point - point({0.0, 0.0, 1.0})).norm() <= kInfinityCaseTol, "canonical (0,0,1)");
  }
  c.expect(roots.total_multiplicity() == 2 && sys.bezout_number() == 2, "count 2 = Bezout");
  return c;
}

Check criterion8() {
  Check c;
  const auto sys = support::load("ex10.poly");
  const auto M = build_macaulay(sys, 4);
  NullspaceBasis basis = nullspace(M.data());
  basis.degree_block_bounds = M.degree_block_bounds();
  const auto gap = find_gap(basis, SolveConfig{}.basis_tol);
  c.expect(gap.independent_degrees() == std::vector<int>{0, 1, 3, 4}, "independent degrees {0,1,3,4}");
  c.expect(gap.gap_degree == 2, "gap at degree 2");
  c.expect(gap.m_R == 2 && gap.m_S == 2, "m_R = 2, m_S = 2");

  const auto report = realize(sys);
  const auto& roots = report.solve.roots;
  c.expect(roots.diagnostics.degree_used == 4, "solved at d=4");
  c.expect(oracle::same_point_set(support::affine_points(roots), {point({2.0, 3.0}), point({-2.0, -3.0})},
                                  kInfinityCaseTol),
           "affine roots {(2,3), (-2,-3)}");
  const auto inf = roots.infinity_roots();
  c.expect(inf.size() == 1 && inf[0].multiplicity == 2, "one root at infinity of multiplicity 2");
  if (!inf.empty()) {
    c.expect((inf[0].point - point({0.0, 1.0, -1.0})).norm() <= kInfinityCaseTol, "root at infinity (0,1,-1)");
  }
  const auto& R = report.realization;
  c.expect(sorted_eigenvalues_match(R.A[0], {-2.0, 2.0}, kInfinityCaseTol), "eig A1 = {+-2}");
  c.expect(sorted_eigenvalues_match(R.A[1], {-3.0, 3.0}, kInfinityCaseTol), "eig A2 = {+-3}");
  const DescriptorRealization* d =
      report.descriptor ? std::get_if<DescriptorRealization>(&*report.descriptor) : nullptr;
  c.expect(d != nullptr, "descriptor split available");
  if (d) {
    const Eigen::MatrixXd E0 = d->E0();
    c.expect((E0 * E0).norm() <= kNilpotencyTol, "E0^2 = 0");
  }
  return c;
}

Check criterion9() {
  Check c;
  for (const char* file : {"ex3.poly", "ex7.poly", "ex10.poly"}) {
    const auto report = realize(support::load(file));
    c.expect(report.annihilation <= kAnnihilationTol, std::string("M_d O_d for ") + file);
  }
  return c;
}

Check criterion10() {
  Check c;
  std::mt19937_64 rng(2024);

  // (a) basis independence
  for (const auto& file : kExamples) {
    const auto sys = support::load(file);
    const auto reference = solve_detailed(sys);
    for (int trial = 0; trial < 3; ++trial) {
      NullspaceBasis rotated = reference.basis;
      rotated.Z = rotated.Z * oracle::random_orthogonal(rotated.Z.cols(), rng);
      const auto again = solve_from_basis(sys, reference.macaulay, rotated, SolveConfig{});
      c.expect(oracle::same_point_set(support::affine_points(again.roots, true),
                                      support::affine_points(reference.roots, true), kBasisIndependenceTol),
               "(a) affine roots invariant for " + file);
      c.expect(again.roots.infinity_roots().size() == reference.roots.infinity_roots().size(),
               "(a) roots at infinity invariant for " + file);
    }
  }

  // (b) commutation
  for (const auto& file : kExamples) {
    const auto report = realize(support::load(file));
    const auto& A = report.realization.A;
    for (std::size_t i = 0; i < A.size(); ++i) {
      for (std::size_t j = i + 1; j < A.size(); ++j) {
        c.expect(relative_commutation(A[i], A[j]) <= kCommutationTol, "(b) A_i A_j = A_j A_i for " + file);
      }
    }
    if (report.descriptor) {
      if (const auto* d = std::get_if<DescriptorRealization>(&*report.descriptor)) {
        std::vector<Eigen::MatrixXd> all = d->A;
        all.insert(all.begin(), d->A0);
        for (std::size_t i = 0; i < all.size(); ++i) {
          for (std::size_t j = i + 1; j < all.size(); ++j) {
            c.expect(relative_commutation(all[i], all[j]) <= kCommutationTol, "(b) descriptor pair for " + file);
          }
        }
      }
    }
  }

  // (c) simulate then verify
  for (const auto& file : kExamples) {
    const auto sys = support::load(file);
    const auto R = realize(sys).realization;
    for (int k = sys.max_degree() + 1; k <= kMaxGridExtent; ++k) {
      const auto grid = simulate(R, std::vector<int>(static_cast<std::size_t>(sys.num_vars()), k));
      const double scale = std::max(grid.max_abs(), 1.0);
      c.expect(verify_trajectory(sys, grid) <= kTrajectoryTol * scale,
               "(c) trajectory residual for " + file + " at extent " + std::to_string(k));
    }
  }

  // (d) order laws
  for (int n = 1; n <= 3; ++n) {
    for (int d = 0; d <= 5; ++d) {
      const auto got = enumerate_monomials(n, d);
      const auto expected = oracle::monomials(n, d);
      bool same = got.size() == expected.size();
      for (std::size_t k = 0; same && k < got.size(); ++k) same = got[k].exponents() == expected[k];
      c.expect(same, "(d) enumeration n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
    const auto all = enumerate_monomials(n, 5);
    bool laws = true;
    for (const auto& a : all) {
      for (const auto& b : all) {
        const auto ab = monomial_cmp(a, b);
        laws = laws && ((ab < 0) == (monomial_cmp(b, a) > 0)) && ((ab == 0) == (a == b));
        if (ab >= 0) continue;
        for (const auto& x : all) {
          if (monomial_cmp(b, x) < 0) laws = laws && monomial_cmp(a, x) < 0;
        }
      }
    }
    c.expect(laws, "(d) total order laws n=" + std::to_string(n));
  }

  // (e) homogeneous and affine Macaulay matrices coincide
  const std::vector<std::pair<std::string, oracle::System>> systems = {
      {"ex1.poly", oracle::example1()}, {"ex2.poly", oracle::example2()}, {"ex3.poly", oracle::example3()},
      {"ex7.poly", oracle::example7()}, {"ex8.poly", oracle::example8()}, {"ex10.poly", oracle::example10()}};
  for (const auto& [file, system] : systems) {
    const auto sys = support::load(file);
    for (int d = sys.max_degree(); d <= sys.max_degree() + 3; ++d) {
      c.expect(build_macaulay(sys, d).data() == oracle::homogeneous_macaulay(system, d),
               "(e) identity for " + file + " at d=" + std::to_string(d));
    }
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"univariate roots and companion realization", criterion1},
      {"Sylvester matrix, common roots and GCD realization", criterion2},
      {"Macaulay matrix rank and two simple roots", criterion3},
      {"canonical realization matrices and pivots", criterion4},
      {"Cayley-Hamilton residual", criterion5},
      {"fourfold root and its dual basis", criterion6},
      {"affine root and root at infinity", criterion7},
      {"gap structure, descriptor split and double root at infinity", criterion8},
      {"observability annihilation", criterion9},
      {"randomized property suite", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check result;
    try {
      result = criteria[k].second();
    } catch (const std::exception& e) {
      result.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = result.failures.empty();
    std::printf("%s criterion %zu: %s", ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str());
    for (const auto& f : result.failures) std::printf(" [%s]", f.c_str());
    std::printf("\n");
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
