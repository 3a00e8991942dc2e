#include "polyreal/macaulay.hpp"

#include <iomanip>

#include "polyreal/error.hpp"

namespace polyreal {

MacaulayMatrix::MacaulayMatrix(Eigen::MatrixXd data, int degree, std::vector<MacaulayRow> rows,
                               MonomialBasis columns)
    : data_(std::move(data)), degree_(degree), rows_(std::move(rows)), columns_(std::move(columns)) {}

int default_degree(const PolySystem& sys) {
  if (!sys.is_square()) {
    throw ArgumentError("default degree needs a square system; supply a degree schedule");
  }
  int sum = 0;
  for (int d : sys.degrees()) sum += d;
  return sum - sys.num_vars() + 1;
}

std::size_t macaulay_row_count(const PolySystem& sys, int d) {
  std::size_t rows = 0;
  for (int di : sys.degrees()) {
    if (d >= di) rows += monomial_count(sys.num_vars(), d - di);
  }
  return rows;
}

namespace {

void fill_row(Eigen::MatrixXd& data, Eigen::Index row, const Polynomial& f, const Monomial& shift,
              const MonomialBasis& columns) {
  for (const auto& [m, c] : f.terms()) {
    const auto col = columns.index_of(m * shift);
    data(row, static_cast<Eigen::Index>(*col)) = c;
  }
}

}  // namespace

MacaulayMatrix build_macaulay(const PolySystem& sys, int d) {
  if (d < sys.max_degree()) throw ArgumentError("Macaulay degree is below the largest equation degree");
  const int n = sys.num_vars();
  MonomialBasis columns(n, d);
  Eigen::MatrixXd data = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(macaulay_row_count(sys, d)),
                                               static_cast<Eigen::Index>(columns.size()));
  std::vector<MacaulayRow> rows;
  rows.reserve(static_cast<std::size_t>(data.rows()));
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (const auto& shift : enumerate_monomials(n, d - sys[i].total_degree())) {
      fill_row(data, static_cast<Eigen::Index>(rows.size()), sys[i], shift, columns);
      rows.push_back({i, shift});
    }
  }
  return MacaulayMatrix(std::move(data), d, std::move(rows), std::move(columns));
}

MacaulayMatrix extend_macaulay(const MacaulayMatrix& m, const PolySystem& sys, int d_new) {
  if (d_new <= m.degree()) throw ArgumentError("extension degree must exceed the current degree");
  if (m.num_vars() != sys.num_vars()) throw ArgumentError("system does not match the Macaulay matrix");
  const int n = sys.num_vars();
  MonomialBasis columns(n, d_new);
  Eigen::MatrixXd data = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(macaulay_row_count(sys, d_new)),
                                               static_cast<Eigen::Index>(columns.size()));
  std::vector<MacaulayRow> rows;
  rows.reserve(static_cast<std::size_t>(data.rows()));

  // Old rows of equation i form a prefix of its new rows; old columns a prefix of the new columns.
  Eigen::Index old_row = 0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const int di = sys[i].total_degree();
    const std::size_t old_count = m.degree() >= di ? monomial_count(n, m.degree() - di) : 0;
    const auto shifts = enumerate_monomials(n, d_new - di);
    for (std::size_t s = 0; s < shifts.size(); ++s) {
      const auto row = static_cast<Eigen::Index>(rows.size());
      if (s < old_count) {
        data.row(row).head(m.cols()) = m.data().row(old_row++);
      } else {
        fill_row(data, row, sys[i], shifts[s], columns);
      }
      rows.push_back({i, shifts[s]});
    }
  }
  return MacaulayMatrix(std::move(data), d_new, std::move(rows), std::move(columns));
}

void write_csv(std::ostream& os, const MacaulayMatrix& m, const PolySystem& sys) {
  const auto& names = sys.variable_names();
  os << "row";
  for (const auto& mono : m.columns().monomials()) os << ',' << to_string(mono, names);
  os << '\n';
  const auto old_precision = os.precision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto& label = m.row_labels()[static_cast<std::size_t>(r)];
    os << 'f' << (label.equation + 1);
    if (label.shift.total_degree() > 0) os << '*' << to_string(label.shift, names);
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << ',' << m.data()(r, c);
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace polyreal
