#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace polyreal {

// Dense kernels with explicit tolerance contracts. Every rank decision counts
// the singular values above `tol * scale`; `scale` defaults to sigma_max of the
// matrix being ranked.

/// eps * max(rows, cols), the default relative rank tolerance.
double default_rank_tolerance(Eigen::Index rows, Eigen::Index cols);

/// Number of singular values of A above tol * sigma_max(A) (tol defaults to
/// default_rank_tolerance). A zero matrix has rank 0.
Eigen::Index numerical_rank(const Eigen::MatrixXd& A, std::optional<double> tol = std::nullopt);

/// Same, with an explicit scale for the threshold instead of sigma_max(A).
Eigen::Index numerical_rank_scaled(const Eigen::MatrixXd& A, double tol, double scale);

/// Orthonormal basis of the numerical right null space.
struct NullspaceBasis {
  Eigen::MatrixXd Z;                     // cols(A) x nullity, orthonormal columns
  double tol_used = 0.0;                 // relative tolerance applied to sigma_max
  Eigen::VectorXd singular_values;       // full spectrum of A, descending
  std::vector<std::size_t> degree_block_bounds;  // row ends per total degree, if known

  Eigen::Index nullity() const { return Z.cols(); }
};

NullspaceBasis nullspace(const Eigen::MatrixXd& A, std::optional<double> tol = std::nullopt);

/// Column reduced echelon form H = Z * pinv(Z*) where Z* stacks the linearly
/// independent rows of Z found scanning top-down.
struct EchelonBasis {
  Eigen::MatrixXd H;
  std::vector<Eigen::Index> pivot_rows;
};

/// Indices of the first `max_count` rows that each raise the numerical rank of
/// the accumulated row stack. Threshold: pivot_tol * sigma_max(Z).
std::vector<Eigen::Index> independent_rows(const Eigen::MatrixXd& Z, double pivot_tol, Eigen::Index max_count);

/// Throws NumericalError when fewer than cols(Z) independent rows exist.
EchelonBasis column_echelon(const Eigen::MatrixXd& Z, double pivot_tol);

/// Z = W * Q with Q orthogonal such that the top k rows of Z are (numerically)
/// nonzero only in the first m_R columns.
struct ColumnCompression {
  Eigen::MatrixXd Z;
  Eigen::MatrixXd Q;
  Eigen::Index m_R = 0;
};

/// m_R is the rank of the top k rows with threshold tol * sigma_max(W).
ColumnCompression column_compress(const Eigen::MatrixXd& W, Eigen::Index k, std::optional<double> tol = std::nullopt);

/// Minimum-norm least-squares solution X = pinv(A) * B.
Eigen::MatrixXd pinv_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
Eigen::MatrixXcd pinv_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

/// Eigenvalues sorted by real part, then imaginary part; unit-norm eigenvectors.
struct EigenDecomposition {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

/// Throws NumericalError when the QR iteration does not converge.
EigenDecomposition eig(const Eigen::MatrixXd& A);

/// A = Q T Q^H with T upper triangular.
struct SchurForm {
  Eigen::MatrixXcd T;
  Eigen::MatrixXcd Q;
};

SchurForm complex_schur(const Eigen::MatrixXcd& A);

/// Reorders the Schur form so the eigenvalues flagged in `selected` (indexed by
/// their current diagonal position) occupy the leading positions. The leading
/// columns of Q then span the invariant subspace of those eigenvalues.
void move_to_front(SchurForm& schur, const std::vector<bool>& selected);

}  // namespace polyreal
