#pragma once

#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "polyreal/monomial.hpp"
#include "polyreal/polynomial.hpp"

namespace polyreal {

/// Label of one Macaulay row: the shifted equation z^shift * f_equation.
struct MacaulayRow {
  std::size_t equation;
  Monomial shift;

  friend bool operator==(const MacaulayRow&, const MacaulayRow&) = default;
};

/// Dense Macaulay matrix M_d. Rows are the shifts z^alpha * f_i with
/// |alpha| <= d - d_i, equation-major and then ascending in the shift;
/// columns are the monomials of degree <= d in degree negative lex order.
class MacaulayMatrix {
 public:
  MacaulayMatrix(Eigen::MatrixXd data, int degree, std::vector<MacaulayRow> rows, MonomialBasis columns);

  const Eigen::MatrixXd& data() const { return data_; }
  int degree() const { return degree_; }
  int num_vars() const { return columns_.num_vars(); }
  Eigen::Index rows() const { return data_.rows(); }
  Eigen::Index cols() const { return data_.cols(); }
  const std::vector<MacaulayRow>& row_labels() const { return rows_; }
  const MonomialBasis& columns() const { return columns_; }
  std::vector<std::size_t> degree_block_bounds() const { return columns_.block_bounds(); }

 private:
  Eigen::MatrixXd data_;
  int degree_;
  std::vector<MacaulayRow> rows_;
  MonomialBasis columns_;
};

/// sum(d_i) - n + 1. Only defined for square systems; throws ArgumentError otherwise.
int default_degree(const PolySystem& sys);

/// Expected row count sum_i C(n + d - d_i, n).
std::size_t macaulay_row_count(const PolySystem& sys, int d);

/// Throws ArgumentError when d < max d_i.
MacaulayMatrix build_macaulay(const PolySystem& sys, int d);

/// Grows M to degree d_new, keeping the existing rows and columns (both are
/// prefixes of the larger ordering). Identical to build_macaulay(sys, d_new).
MacaulayMatrix extend_macaulay(const MacaulayMatrix& m, const PolySystem& sys, int d_new);

/// CSV dump: a header of monomial labels and one labelled row per shift.
void write_csv(std::ostream& os, const MacaulayMatrix& m, const PolySystem& sys);

}  // namespace polyreal
