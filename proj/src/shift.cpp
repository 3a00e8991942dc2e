#include "polyreal/shift.hpp"

#include "polyreal/error.hpp"
#include "polyreal/monomial.hpp"

namespace polyreal {

ShiftSelection make_affine_selection(int n, int d, int i) {
  if (i < 1 || i > n) throw ArgumentError("affine shift variable must be in 1..n");
  if (d < 1) throw ArgumentError("affine shift needs degree >= 1");
  MonomialBasis basis(n, d);
  ShiftSelection s;
  s.kind = ShiftSelection::Kind::affine_up;
  s.up = i;
  s.down = 0;
  const std::size_t domain = basis.block_end(d - 1);
  for (std::size_t r = 0; r < domain; ++r) {
    s.rows_from.push_back(static_cast<Eigen::Index>(r));
    s.rows_to.push_back(static_cast<Eigen::Index>(*basis.index_of(basis[r].shifted(i - 1, 1))));
  }
  return s;
}

ShiftSelection make_homogeneous_selection(int n, int d, int i, int j) {
  if (i < 0 || i > n || j < 0 || j > n) throw ArgumentError("homogeneous shift variables must be in 0..n");
  if (i == j) throw ArgumentError("homogeneous shift needs two distinct variables");
  MonomialBasis basis(n, d);
  ShiftSelection s;
  s.kind = ShiftSelection::Kind::homogeneous;
  s.up = i;
  s.down = j;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    std::vector<int> h;
    h.push_back(d - basis[r].total_degree());
    h.insert(h.end(), basis[r].exponents().begin(), basis[r].exponents().end());
    if (h[static_cast<std::size_t>(j)] < 1) continue;
    h[static_cast<std::size_t>(j)] -= 1;
    h[static_cast<std::size_t>(i)] += 1;
    const Monomial target(std::vector<int>(h.begin() + 1, h.end()));
    s.rows_from.push_back(static_cast<Eigen::Index>(r));
    s.rows_to.push_back(static_cast<Eigen::Index>(*basis.index_of(target)));
  }
  return s;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& Z, const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), Z.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= Z.rows()) throw ArgumentError("row selection out of range");
    out.row(static_cast<Eigen::Index>(r)) = Z.row(rows[r]);
  }
  return out;
}

}  // namespace polyreal
