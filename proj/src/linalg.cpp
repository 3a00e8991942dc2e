#include "polyreal/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "polyreal/error.hpp"

namespace polyreal {

namespace {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& A) {
  if (A.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues();
}

Eigen::Index count_above(const Eigen::VectorXd& sv, double threshold) {
  return static_cast<Eigen::Index>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > threshold; }));
}

}  // namespace

double default_rank_tolerance(Eigen::Index rows, Eigen::Index cols) {
  return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols));
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& A, std::optional<double> tol) {
  const auto sv = singular_values(A);
  if (sv.size() == 0) return 0;
  const double rel = tol.value_or(default_rank_tolerance(A.rows(), A.cols()));
  return count_above(sv, rel * sv(0));
}

Eigen::Index numerical_rank_scaled(const Eigen::MatrixXd& A, double tol, double scale) {
  return count_above(singular_values(A), tol * scale);
}

NullspaceBasis nullspace(const Eigen::MatrixXd& A, std::optional<double> tol) {
  NullspaceBasis out;
  out.tol_used = tol.value_or(default_rank_tolerance(A.rows(), A.cols()));
  if (A.cols() == 0) {
    out.Z = Eigen::MatrixXd(0, 0);
    return out;
  }
  if (A.rows() == 0) {
    out.Z = Eigen::MatrixXd::Identity(A.cols(), A.cols());
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double threshold = out.tol_used * out.singular_values(0);
  const Eigen::Index rank = count_above(out.singular_values, threshold);
  out.Z = svd.matrixV().rightCols(A.cols() - rank);
  return out;
}

std::vector<Eigen::Index> independent_rows(const Eigen::MatrixXd& Z, double pivot_tol, Eigen::Index max_count) {
  std::vector<Eigen::Index> pivots;
  const auto sv = singular_values(Z);
  if (sv.size() == 0 || sv(0) == 0.0) return pivots;
  const double threshold = pivot_tol * sv(0);
  Eigen::MatrixXd stack(0, Z.cols());
  for (Eigen::Index r = 0; r < Z.rows() && static_cast<Eigen::Index>(pivots.size()) < max_count; ++r) {
    Eigen::MatrixXd candidate(stack.rows() + 1, Z.cols());
    candidate << stack, Z.row(r);
    if (count_above(singular_values(candidate), threshold) > stack.rows()) {
      stack = std::move(candidate);
      pivots.push_back(r);
    }
  }
  return pivots;
}

EchelonBasis column_echelon(const Eigen::MatrixXd& Z, double pivot_tol) {
  if (Z.cols() == 0) throw ArgumentError("column echelon form of an empty basis");
  EchelonBasis out;
  out.pivot_rows = independent_rows(Z, pivot_tol, Z.cols());
  if (static_cast<Eigen::Index>(out.pivot_rows.size()) < Z.cols()) {
    throw NumericalError("degenerate basis: found " + std::to_string(out.pivot_rows.size()) +
                         " independent rows for " + std::to_string(Z.cols()) + " columns");
  }
  Eigen::MatrixXd Zstar(Z.cols(), Z.cols());
  for (Eigen::Index j = 0; j < Z.cols(); ++j) Zstar.row(j) = Z.row(out.pivot_rows[static_cast<std::size_t>(j)]);
  // H * Z* = Z; solve through the transpose for a single factorization.
  out.H = pinv_solve(Eigen::MatrixXd(Zstar.transpose()), Eigen::MatrixXd(Z.transpose())).transpose();
  for (Eigen::Index j = 0; j < Z.cols(); ++j) {
    out.H.row(out.pivot_rows[static_cast<std::size_t>(j)]).setZero();
    out.H(out.pivot_rows[static_cast<std::size_t>(j)], j) = 1.0;
  }
  return out;
}

ColumnCompression column_compress(const Eigen::MatrixXd& W, Eigen::Index k, std::optional<double> tol) {
  if (k <= 0 || k > W.rows()) throw ArgumentError("column compression needs 0 < k <= rows");
  ColumnCompression out;
  if (W.cols() == 0) {
    out.Z = W;
    out.Q = Eigen::MatrixXd(0, 0);
    return out;
  }
  const auto sv_all = singular_values(W);
  const double rel = tol.value_or(default_rank_tolerance(W.rows(), W.cols()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(W.topRows(k), Eigen::ComputeFullV);
  out.m_R = count_above(svd.singularValues(), rel * sv_all(0));
  out.Q = svd.matrixV();
  out.Z = W * out.Q;
  return out;
}

Eigen::MatrixXd pinv_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows()) throw ArgumentError("pinv_solve: row counts differ");
  return A.completeOrthogonalDecomposition().solve(B);
}

Eigen::MatrixXcd pinv_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  if (A.rows() != B.rows()) throw ArgumentError("pinv_solve: row counts differ");
  return A.completeOrthogonalDecomposition().solve(B);
}

EigenDecomposition eig(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw ArgumentError("eig needs a square matrix");
  EigenDecomposition out;
  if (A.rows() == 0) return out;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue iteration failed to converge (size " + std::to_string(A.rows()) + ")");
  }
  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    out.values(k) = values(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

SchurForm complex_schur(const Eigen::MatrixXcd& A) {
  if (A.rows() != A.cols()) throw ArgumentError("Schur form needs a square matrix");
  SchurForm out;
  if (A.rows() == 0) return out;
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(A, true);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur iteration failed to converge");
  out.T = schur.matrixT();
  out.Q = schur.matrixU();
  return out;
}

namespace {

// Exchanges the diagonal entries k and k+1 with a unitary rotation.
void swap_adjacent(SchurForm& s, Eigen::Index k) {
  const std::complex<double> a = s.T(k, k);
  const std::complex<double> b = s.T(k + 1, k + 1);
  Eigen::Vector2cd x(s.T(k, k + 1), b - a);
  const double norm = x.norm();
  if (norm == 0.0) return;
  x /= norm;
  // First column is the eigenvector of the 2x2 block for b.
  Eigen::Matrix2cd G;
  G << x(0), -std::conj(x(1)), x(1), std::conj(x(0));
  s.T.middleRows(k, 2) = G.adjoint() * s.T.middleRows(k, 2);
  s.T.middleCols(k, 2) = s.T.middleCols(k, 2) * G;
  s.T(k + 1, k) = 0.0;
  s.Q.middleCols(k, 2) = s.Q.middleCols(k, 2) * G;
}

}  // namespace

void move_to_front(SchurForm& schur, const std::vector<bool>& selected) {
  if (static_cast<Eigen::Index>(selected.size()) != schur.T.rows()) {
    throw ArgumentError("selection size does not match the Schur form");
  }
  std::vector<bool> flags = selected;
  Eigen::Index front = 0;
  for (Eigen::Index p = 0; p < static_cast<Eigen::Index>(flags.size()); ++p) {
    if (!flags[static_cast<std::size_t>(p)]) continue;
    for (Eigen::Index q = p; q > front; --q) {
      swap_adjacent(schur, q - 1);
      std::swap(flags[static_cast<std::size_t>(q - 1)], flags[static_cast<std::size_t>(q)]);
    }
    ++front;
  }
}

}  // namespace polyreal
