#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "polyreal/linalg.hpp"
#include "polyreal/macaulay.hpp"
#include "polyreal/monomial.hpp"
#include "polyreal/polynomial.hpp"
#include "polyreal/root_solver.hpp"

namespace polyreal {

/// Autonomous n-D state-space model x[k + e_i] = A_i x[k], w[k] = c x[k].
struct Realization {
  std::vector<Eigen::MatrixXd> A;
  Eigen::RowVectorXd c;
  std::vector<Monomial> state_monomials;
  Eigen::VectorXd x0;

  Eigen::Index num_states() const { return c.size(); }
  int num_vars() const { return static_cast<int>(A.size()); }
};

/// Realization read from the column echelon basis H of degree d: the states
/// are the samples of w at the pivot monomials, A_i = (S0 H)^+ S_i H with S0
/// the pivot rows, c the top row of H. x0 defaults to the first unit vector.
/// Throws RealizationError when a pivot lies in the top degree block.
Realization canonical_realization(const EchelonBasis& H, int d, int n);

/// Same construction on an arbitrary basis Z of degree d. The result is
/// similar to the canonical one through W = Z[pivots]; a canonical initial
/// state is carried over as W^-1 x0 (zero when absent).
Realization realization_from_basis(const Eigen::MatrixXd& Z, int d, int n, double pivot_tol,
                                   const std::optional<Eigen::VectorXd>& canonical_x0 = std::nullopt);

/// (W^-1 A_i W, c W, W^-1 x0): the same input-output behaviour in new coordinates.
Realization transform(const Realization& R, const Eigen::MatrixXd& W);

/// Sum over the roots of multiplicity * (state monomials at the root), real part.
Eigen::VectorXd default_initial_state(const std::vector<Monomial>& state_monomials, const std::vector<Root>& roots);

/// Rows c A^alpha for every monomial of degree <= d in basis order.
Eigen::MatrixXd observability_matrix(const Realization& R, int d);

/// f(A_1, ..., A_n) with constants multiplying the identity.
Eigen::MatrixXd evaluate_matrix(const Polynomial& f, const std::vector<Eigen::MatrixXd>& A);

/// max_i ||f_i(A_1, ..., A_n)||_inf.
double cayley_hamilton_residual(const Realization& R, const PolySystem& sys);

/// max over pairs of ||A_i A_j - A_j A_i||_inf / (||A_i||_inf ||A_j||_inf).
double commutation_residual(const Realization& R);

/// ||M_d O_d||_inf / (||M_d||_inf ||O_d||_inf).
double verify_observability_annihilation(const MacaulayMatrix& M, const Realization& R);

/// Regular and singular parts side by side: A0 = diag(I, E0), A_i = diag(R_i, E_i).
struct DescriptorRealization {
  Eigen::MatrixXd A0;
  std::vector<Eigen::MatrixXd> A;
  Eigen::Index m_R = 0;
  Eigen::Index m_S = 0;
  int down_shift = 0;                  // chart z_j = 1 of the singular block
  double nilpotency_residual = 0.0;    // ||E0^m_S||_inf

  Eigen::MatrixXd E0() const { return A0.bottomRightCorner(m_S, m_S); }
};

struct DescriptorUnavailable {
  Eigen::Index m_R = 0;
  Eigen::Index m_S = 0;
  std::string reason;
};

using DescriptorOutcome = std::variant<DescriptorRealization, DescriptorUnavailable>;

DescriptorOutcome descriptor_split(const GapReport& gap, const Realization& regular,
                                   const std::optional<SingularShifts>& singular);

/// Output samples on the grid 0 <= k_i < K_i, stored with k_1 slowest.
struct TrajectoryGrid {
  std::vector<int> extents;
  std::vector<double> values;

  explicit TrajectoryGrid(std::vector<int> extents);
  std::size_t offset(const std::vector<int>& k) const;
  double& at(const std::vector<int>& k) { return values[offset(k)]; }
  double at(const std::vector<int>& k) const { return values[offset(k)]; }
  double max_abs() const;
};

TrajectoryGrid simulate(const Realization& R, const std::vector<int>& extents);

/// Max |sum_alpha f_alpha w[k + alpha]| over every equation and every offset
/// with the template inside the grid. Throws ArgumentError when some extent
/// does not exceed the largest equation degree.
double verify_trajectory(const PolySystem& sys, const TrajectoryGrid& grid);

/// Solve followed by the canonical realization of the affine part.
struct RealizationReport {
  SolveResult solve;
  EchelonBasis echelon;
  Realization realization;
  bool default_x0 = true;
  double commutation = 0.0;
  double cayley_hamilton = 0.0;
  double annihilation = 0.0;
  std::optional<DescriptorOutcome> descriptor;  // present when m_S > 0
};

/// Throws RealizationError when there are no affine roots or the pivots do
/// not fit below the top degree block.
RealizationReport realize(const PolySystem& sys, const SolveConfig& cfg = {},
                          const std::optional<Eigen::VectorXd>& x0 = std::nullopt);

}  // namespace polyreal
