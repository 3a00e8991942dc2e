#include "polyreal/realization.hpp"

#include <algorithm>

#include "polyreal/error.hpp"

namespace polyreal {

namespace {

double inf_norm(const Eigen::MatrixXd& A) {
  if (A.size() == 0) return 0.0;
  return A.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::MatrixXd block_diag(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Shared construction: states at the pivot rows, S0 Z square and invertible.
Realization from_pivots(const Eigen::MatrixXd& Z, const std::vector<Eigen::Index>& pivots, int d, int n) {
  MonomialBasis basis(n, d);
  if (Z.rows() != static_cast<Eigen::Index>(basis.size())) {
    throw ArgumentError("basis rows do not match the monomials of degree <= d");
  }
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
  Realization R;
  for (Eigen::Index p : pivots) {
    const Monomial& mono = basis[static_cast<std::size_t>(p)];
    if (mono.total_degree() >= d) {
      throw RealizationError("pivot " + to_string(mono, names) + " lies in the top degree block " + std::to_string(d) +
                             "; the states would shift out of range");
    }
    R.state_monomials.push_back(mono);
  }
  const Eigen::MatrixXd S0Z = select_rows(Z, pivots);
  for (int i = 1; i <= n; ++i) {
    std::vector<Eigen::Index> to;
    for (const auto& mono : R.state_monomials) {
      to.push_back(static_cast<Eigen::Index>(*basis.index_of(mono.shifted(i - 1, 1))));
    }
    R.A.push_back(pinv_solve(S0Z, select_rows(Z, to)));
  }
  R.c = Z.row(0);
  R.x0 = Eigen::VectorXd::Zero(Z.cols());
  return R;
}

}  // namespace

Realization canonical_realization(const EchelonBasis& H, int d, int n) {
  if (H.pivot_rows.size() != static_cast<std::size_t>(H.H.cols())) {
    throw ArgumentError("echelon basis needs one pivot per column");
  }
  Realization R = from_pivots(H.H, H.pivot_rows, d, n);
  if (R.x0.size() > 0) R.x0(0) = 1.0;
  return R;
}

Realization realization_from_basis(const Eigen::MatrixXd& Z, int d, int n, double pivot_tol,
                                   const std::optional<Eigen::VectorXd>& canonical_x0) {
  const auto pivots = independent_rows(Z, pivot_tol, Z.cols());
  if (static_cast<Eigen::Index>(pivots.size()) < Z.cols()) {
    throw RealizationError("basis has fewer independent rows than columns");
  }
  Realization R = from_pivots(Z, pivots, d, n);
  if (canonical_x0) {
    if (canonical_x0->size() != Z.cols()) throw ArgumentError("initial state has the wrong size");
    R.x0 = pinv_solve(select_rows(Z, pivots), Eigen::MatrixXd(*canonical_x0));
  }
  return R;
}

Realization transform(const Realization& R, const Eigen::MatrixXd& W) {
  if (W.rows() != R.num_states() || W.cols() != R.num_states()) throw ArgumentError("transform has the wrong size");
  const auto lu = W.partialPivLu();
  Realization out = R;
  for (auto& A : out.A) A = lu.solve(A * W);
  out.c = R.c * W;
  out.x0 = lu.solve(R.x0);
  return out;
}

Eigen::VectorXd default_initial_state(const std::vector<Monomial>& state_monomials, const std::vector<Root>& roots) {
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(state_monomials.size()));
  for (const auto& root : roots) {
    if (root.at_infinity) continue;
    const Point z = root.affine();
    for (std::size_t s = 0; s < state_monomials.size(); ++s) {
      Complex value = 1.0;
      for (int i = 0; i < state_monomials[s].num_vars(); ++i) value *= std::pow(z(i), state_monomials[s][i]);
      x0(static_cast<Eigen::Index>(s)) += root.multiplicity * value.real();
    }
  }
  return x0;
}

Eigen::MatrixXd observability_matrix(const Realization& R, int d) {
  if (d < 0) throw ArgumentError("observability degree must be non-negative");
  const int n = R.num_vars();
  MonomialBasis basis(n, d);
  Eigen::MatrixXd O(static_cast<Eigen::Index>(basis.size()), R.num_states());
  O.row(0) = R.c;
  for (std::size_t r = 1; r < basis.size(); ++r) {
    const Monomial& mono = basis[r];
    int i = 0;
    while (mono[i] == 0) ++i;
    const auto parent = *basis.index_of(mono.shifted(i, -1));
    O.row(static_cast<Eigen::Index>(r)) = O.row(static_cast<Eigen::Index>(parent)) * R.A[static_cast<std::size_t>(i)];
  }
  return O;
}

Eigen::MatrixXd evaluate_matrix(const Polynomial& f, const std::vector<Eigen::MatrixXd>& A) {
  if (static_cast<int>(A.size()) != f.num_vars()) throw ArgumentError("one matrix per variable expected");
  const Eigen::Index m = A.empty() ? 0 : A[0].rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (const auto& [mono, coeff] : f.terms()) {
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(m, m);
    for (int i = 0; i < f.num_vars(); ++i) {
      for (int p = 0; p < mono[i]; ++p) term = term * A[static_cast<std::size_t>(i)];
    }
    out += coeff * term;
  }
  return out;
}

double cayley_hamilton_residual(const Realization& R, const PolySystem& sys) {
  if (R.num_vars() != sys.num_vars()) throw ArgumentError("realization and system differ in variable count");
  double worst = 0.0;
  for (const auto& f : sys.polys()) worst = std::max(worst, inf_norm(evaluate_matrix(f, R.A)));
  return worst;
}

double commutation_residual(const Realization& R) {
  double worst = 0.0;
  for (std::size_t i = 0; i < R.A.size(); ++i) {
    for (std::size_t j = i + 1; j < R.A.size(); ++j) {
      const double scale = inf_norm(R.A[i]) * inf_norm(R.A[j]);
      if (scale == 0.0) continue;
      worst = std::max(worst, inf_norm(R.A[i] * R.A[j] - R.A[j] * R.A[i]) / scale);
    }
  }
  return worst;
}

double verify_observability_annihilation(const MacaulayMatrix& M, const Realization& R) {
  if (M.num_vars() != R.num_vars()) throw ArgumentError("Macaulay matrix and realization differ in variable count");
  const Eigen::MatrixXd O = observability_matrix(R, M.degree());
  const double scale = inf_norm(M.data()) * inf_norm(O);
  if (scale == 0.0) return 0.0;
  return inf_norm(M.data() * O) / scale;
}

DescriptorOutcome descriptor_split(const GapReport& gap, const Realization& regular,
                                   const std::optional<SingularShifts>& singular) {
  if (regular.num_states() != gap.m_R) {
    return DescriptorUnavailable{gap.m_R, gap.m_S, "regular realization size differs from m_R"};
  }
  const int n = regular.num_vars();
  DescriptorRealization out;
  out.m_R = gap.m_R;
  out.m_S = gap.m_S;
  if (gap.m_S == 0) {
    out.A0 = Eigen::MatrixXd::Identity(gap.m_R, gap.m_R);
    out.A = regular.A;
    return out;
  }
  if (!singular) return DescriptorUnavailable{gap.m_R, gap.m_S, "singular shift extraction failed"};
  if (static_cast<int>(singular->E.size()) != n + 1 || singular->E[0].rows() != gap.m_S) {
    return DescriptorUnavailable{gap.m_R, gap.m_S, "singular shifts do not match m_S"};
  }
  out.down_shift = singular->down_shift;
  out.A0 = block_diag(Eigen::MatrixXd::Identity(gap.m_R, gap.m_R), singular->E[0]);
  for (int i = 1; i <= n; ++i) {
    out.A.push_back(block_diag(regular.A[static_cast<std::size_t>(i - 1)], singular->E[static_cast<std::size_t>(i)]));
  }
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(gap.m_S, gap.m_S);
  for (Eigen::Index p = 0; p < gap.m_S; ++p) power = power * singular->E[0];
  out.nilpotency_residual = inf_norm(power);
  return out;
}

TrajectoryGrid::TrajectoryGrid(std::vector<int> ext) : extents(std::move(ext)) {
  std::size_t total = 1;
  for (int k : extents) {
    if (k < 1) throw ArgumentError("grid extents must be at least 1");
    total *= static_cast<std::size_t>(k);
  }
  values.assign(total, 0.0);
}

std::size_t TrajectoryGrid::offset(const std::vector<int>& k) const {
  if (k.size() != extents.size()) throw ArgumentError("grid index has the wrong dimension");
  std::size_t off = 0;
  for (std::size_t a = 0; a < k.size(); ++a) {
    if (k[a] < 0 || k[a] >= extents[a]) throw ArgumentError("grid index out of range");
    off = off * static_cast<std::size_t>(extents[a]) + static_cast<std::size_t>(k[a]);
  }
  return off;
}

double TrajectoryGrid::max_abs() const {
  double out = 0.0;
  for (double v : values) out = std::max(out, std::abs(v));
  return out;
}

TrajectoryGrid simulate(const Realization& R, const std::vector<int>& extents) {
  if (static_cast<int>(extents.size()) != R.num_vars()) throw ArgumentError("one extent per variable expected");
  if (R.x0.size() != R.num_states()) throw ArgumentError("initial state has the wrong size");
  TrajectoryGrid grid(extents);
  std::vector<Eigen::VectorXd> states(grid.values.size());
  std::vector<int> k(extents.size(), 0);
  for (std::size_t flat = 0; flat < grid.values.size(); ++flat) {
    if (flat == 0) {
      states[0] = R.x0;
    } else {
      // Step from the predecessor along the last axis that is nonzero.
      std::size_t axis = k.size() - 1;
      while (k[axis] == 0) --axis;
      std::vector<int> prev = k;
      --prev[axis];
      states[flat] = R.A[axis] * states[grid.offset(prev)];
    }
    grid.values[flat] = R.c.dot(states[flat]);
    for (std::size_t a = k.size(); a-- > 0;) {
      if (++k[a] < extents[a]) break;
      k[a] = 0;
    }
  }
  return grid;
}

double verify_trajectory(const PolySystem& sys, const TrajectoryGrid& grid) {
  const int n = sys.num_vars();
  if (static_cast<int>(grid.extents.size()) != n) throw ArgumentError("grid dimension differs from the system");
  const int reach = sys.max_degree();
  for (int k : grid.extents) {
    if (k <= reach) {
      throw ArgumentError("grid too small: every extent must exceed the largest equation degree " +
                          std::to_string(reach));
    }
  }
  double worst = 0.0;
  for (const auto& f : sys.polys()) {
    const int di = f.total_degree();
    std::vector<int> span(grid.extents.size());
    for (std::size_t a = 0; a < span.size(); ++a) span[a] = grid.extents[a] - di;
    std::vector<int> k(span.size(), 0);
    for (bool more = true; more;) {
      double sum = 0.0;
      for (const auto& [mono, coeff] : f.terms()) {
        std::vector<int> at = k;
        for (std::size_t a = 0; a < at.size(); ++a) at[a] += mono[static_cast<int>(a)];
        sum += coeff * grid.at(at);
      }
      worst = std::max(worst, std::abs(sum));
      more = false;
      for (std::size_t a = k.size(); a-- > 0;) {
        if (++k[a] < span[a]) {
          more = true;
          break;
        }
        k[a] = 0;
      }
    }
  }
  return worst;
}

RealizationReport realize(const PolySystem& sys, const SolveConfig& cfg, const std::optional<Eigen::VectorXd>& x0) {
  SolveResult solved = solve_detailed(sys, cfg);
  const GapReport gap = solved.roots.diagnostics.gap;
  if (gap.m_R == 0) throw RealizationError("no affine roots: the regular part is empty");
  const int d = solved.roots.diagnostics.regular_degree;
  EchelonBasis H;
  try {
    H = column_echelon(solved.Z_R, cfg.basis_tol);
  } catch (const NumericalError& e) {
    throw RealizationError(std::string("echelon basis failed: ") + e.what());
  }
  Realization R = canonical_realization(H, d, sys.num_vars());
  const bool default_x0 = !x0.has_value();
  if (x0) {
    if (x0->size() != R.num_states()) {
      throw ArgumentError("initial state needs " + std::to_string(R.num_states()) + " entries");
    }
    R.x0 = *x0;
  } else {
    R.x0 = default_initial_state(R.state_monomials, solved.roots.roots);
  }

  RealizationReport report{std::move(solved), std::move(H), std::move(R), true, 0.0, 0.0, 0.0, std::nullopt};
  report.default_x0 = default_x0;
  report.commutation = commutation_residual(report.realization);
  report.cayley_hamilton = cayley_hamilton_residual(report.realization, sys);
  report.annihilation = verify_observability_annihilation(report.solve.macaulay, report.realization);
  if (gap.m_S > 0) report.descriptor = descriptor_split(gap, report.realization, report.solve.singular);
  return report;
}

}  // namespace polyreal
