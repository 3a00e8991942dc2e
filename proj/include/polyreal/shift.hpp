#pragma once

#include <vector>

#include <Eigen/Dense>

namespace polyreal {

/// Row map of a multiplicative shift on the monomial-indexed rows of a
/// null-space basis: row rows_from[r] times the shift lands on rows_to[r].
///
/// Variable indices follow the homogeneous convention: 0 is the
/// homogenization variable z0, 1..n are the affine variables.
struct ShiftSelection {
  enum class Kind { affine_up, homogeneous };

  Kind kind = Kind::affine_up;
  int up = 1;    // variable whose exponent increases
  int down = 0;  // variable whose exponent decreases (z0 implicitly for affine_up)
  std::vector<Eigen::Index> rows_from;
  std::vector<Eigen::Index> rows_to;
};

/// Affine up-shift in z_i (1 <= i <= n) on the degree <= d basis: every
/// monomial of degree <= d-1 maps to its product with z_i.
ShiftSelection make_affine_selection(int n, int d, int i);

/// Homogeneous i/j shift on the exact-degree-d grid in (z0, ..., zn), using
/// the column correspondence z0^(d-|a|) z^a <-> z^a: every grid monomial with
/// z_j exponent >= 1 maps to the monomial with z_i raised and z_j lowered.
ShiftSelection make_homogeneous_selection(int n, int d, int i, int j);

/// Rows of Z picked by an index list, in order.
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& Z, const std::vector<Eigen::Index>& rows);

}  // namespace polyreal
