#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyreal/linalg.hpp"
#include "polyreal/macaulay.hpp"
#include "polyreal/monomial.hpp"
#include "polyreal/polynomial.hpp"
#include "polyreal/shift.hpp"

namespace polyreal {

/// Rank profile of the null-space rows, block by total degree.
struct GapReport {
  int degree = 0;                           // Macaulay degree d
  std::vector<Eigen::Index> block_ranks;    // rank increment of each degree block, delta = 0..d
  Eigen::Index nullity = 0;
  Eigen::Index m_R = 0;                     // affine roots, with multiplicity
  Eigen::Index m_S = 0;                     // roots at infinity, with multiplicity
  std::optional<int> gap_degree;            // first zero-increment block
  std::optional<int> d_star;                // degree of regularity (d when stabilized)
  bool stabilized = false;

  /// Degrees carrying linearly independent monomials, with repetition.
  std::vector<int> independent_degrees() const;
};

/// Thresholds are absolute on the orthonormal basis Z (sigma_max(Z) = 1).
GapReport find_gap(const NullspaceBasis& Z, double tol);

struct SolveConfig {
  std::optional<int> degree;
  std::optional<int> max_degree;
  std::optional<double> tol;            // rank tolerance for M_d, relative to sigma_max
  double basis_tol = 1e-9;              // rank tolerance on null-space rows
  double residual_tol = 1e-6;
  std::optional<double> cluster_tol;    // default 1e-4 * (1 + max |coordinate|)
  std::uint64_t seed = 42;
  bool square_s0 = false;               // S0 = first m_R independent rows instead of all degree <= d-1 rows

  void validate() const;
};

struct Root {
  Point point;                // homogeneous (z0, z1, ..., zn), canonical representative
  int multiplicity = 1;
  double residual = 0.0;
  bool at_infinity = false;
  bool flagged = false;       // residual above the configured residual tolerance

  /// (z1, ..., zn) / z0; only meaningful for affine roots.
  Point affine() const;
};

struct SolveDiagnostics {
  GapReport gap;
  int degree_used = 0;
  int regular_degree = 0;     // degree of the basis rows used for affine extraction
  double rank_tol = 0.0;
  double basis_tol = 0.0;
  double residual_tol = 0.0;
  double cluster_tol = 0.0;
  std::optional<long long> bezout;
  std::optional<int> infinity_down_shift;   // chart z_j = 1 used for the roots at infinity
  bool infinity_extracted = false;
  std::vector<std::string> warnings;
};

struct RootSet {
  std::vector<Root> roots;
  SolveDiagnostics diagnostics;

  long long total_multiplicity() const;
  std::vector<Root> affine_roots() const;
  std::vector<Root> infinity_roots() const;
};

/// (S0 Z)^+ S_i Z for the affine up-shift in z_i on a degree <= d basis.
Eigen::MatrixXd affine_shift_matrix(const Eigen::MatrixXd& Z, int n, int d, int i);

/// (Z[F_j])^+ Z[T_i/j] for the homogeneous i/j shift on a degree <= d basis.
Eigen::MatrixXd homogeneous_shift_matrix(const Eigen::MatrixXd& Z, int n, int d, int i, int j);

/// One eigenvalue cluster of a random combination of commuting operators.
struct EigenGroup {
  Complex eigenvalue;            // mean of the clustered eigenvalues
  int size = 1;
  Eigen::VectorXcd vector;       // common eigenvector of every operator, unit norm
};

/// Groups the eigenvalues of sum_k gamma_k ops[k] at distance <= group_tol
/// and returns one common eigenvector per group, read from the invariant
/// subspace of the group (reordered Schur form).
std::vector<EigenGroup> common_eigenvectors(const std::vector<Eigen::MatrixXd>& ops, const Eigen::VectorXd& gamma,
                                            double group_tol);

/// Deterministic uniform weights in [0.5, 1.5) drawn from a 64-bit Mersenne twister.
Eigen::VectorXd random_combination(std::uint64_t seed, Eigen::Index count);

/// Affine roots from a basis Z_R (degree <= d rows, m_R columns). Roots are not
/// clustered: a group of size mu yields mu identical raw roots.
RootSet solve_affine(const Eigen::MatrixXd& Z_R, int d, const PolySystem& sys, const SolveConfig& cfg);

/// Shift matrices of the singular block in the chart z_j = 1.
struct SingularShifts {
  int down_shift = 0;                 // j
  std::vector<Eigen::MatrixXd> E;     // E[i] for i = 0..n; E[j] is the identity
  double consistency_residual = 0.0;  // max relative misfit of the shift relations
};

/// Picks j in 1..n with the best conditioned Z_S[F_j]; empty when none qualifies.
std::optional<SingularShifts> singular_shifts(const Eigen::MatrixXd& Z_S, int n, int d, double tol);

/// Roots at infinity (z0 = 0) from the singular block, unclustered.
RootSet extract_infinity(const Eigen::MatrixXd& Z_S, const SingularShifts& shifts, int d, const PolySystem& sys,
                         const SolveConfig& cfg);

/// Largest residual of the system at a root: affine roots use the original
/// equations, roots at infinity the homogenized ones.
double root_residual(const PolySystem& sys, const Root& root);

/// Default radius 1e-4 * (1 + max |coordinate|) over the given roots.
double default_cluster_tol(const RootSet& raw);

/// Single-linkage clustering (merge when distance <= cluster_tol); affine roots
/// and roots at infinity never merge. Each cluster becomes its weighted centroid.
RootSet cluster_roots(const RootSet& raw, const PolySystem& sys, double cluster_tol);

/// A dual functional: sum of weight * dual_vector(root, alpha, d).
using DualFunctional = std::vector<std::pair<Monomial, double>>;

/// max over the functionals of ||M_d w||_inf.
double verify_dual_basis(const PolySystem& sys, const Point& root, const std::vector<DualFunctional>& duals, int d);

/// Every artifact of a solve, for callers that continue into realization.
struct SolveResult {
  RootSet roots;
  MacaulayMatrix macaulay;
  NullspaceBasis basis;
  Eigen::MatrixXd Z_R;      // regular columns, rows of degree <= regular_degree
  Eigen::MatrixXd Z_S;      // singular columns, all rows
  std::optional<SingularShifts> singular;
};

/// Runs the degree schedule until the null space shows a gap, then extracts
/// affine roots and roots at infinity. Throws NoStabilizationError when the
/// schedule is exhausted.
SolveResult solve_detailed(const PolySystem& sys, const SolveConfig& cfg = {});

RootSet solve(const PolySystem& sys, const SolveConfig& cfg = {});

/// Root extraction from a given null-space basis of M_d (any basis).
SolveResult solve_from_basis(const PolySystem& sys, MacaulayMatrix macaulay, NullspaceBasis basis,
                             const SolveConfig& cfg);

}  // namespace polyreal
