#include "polyreal/root_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SVD>

#include "polyreal/error.hpp"

namespace polyreal {

namespace {

// Relative threshold for treating a homogeneous coordinate as zero.
constexpr double kCanonicalZero = 1e-8;
// Relative misfit above which the singular block is not shift invariant.
constexpr double kShiftConsistency = 1e-6;
// Eigenvalue grouping radius relative to (1 + max |lambda|).
constexpr double kDefaultGroupTol = 1e-4;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Clusters in order of their smallest member.
std::vector<std::vector<std::size_t>> collect(DisjointSets& sets, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = sets.find(k);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(k);
  }
  return out;
}

// Scales a homogeneous point so its first non-negligible coordinate is 1.
Point canonicalize(const Point& p) {
  const double scale = p.cwiseAbs().maxCoeff();
  if (scale == 0.0) return p;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (std::abs(p(k)) > kCanonicalZero * scale) return p / p(k);
  }
  return p;
}

double group_tolerance(const Eigen::VectorXd& gamma, const std::optional<double>& cluster_tol,
                       const Eigen::MatrixXcd& T) {
  if (cluster_tol) return gamma.norm() * *cluster_tol;
  double largest = 0.0;
  for (Eigen::Index k = 0; k < T.rows(); ++k) largest = std::max(largest, std::abs(T(k, k)));
  return kDefaultGroupTol * (1.0 + largest);
}

bool root_before(const Root& a, const Root& b) {
  if (a.at_infinity != b.at_infinity) return !a.at_infinity;
  for (Eigen::Index k = 0; k < a.point.size(); ++k) {
    if (a.point(k).real() != b.point(k).real()) return a.point(k).real() > b.point(k).real();
    if (a.point(k).imag() != b.point(k).imag()) return a.point(k).imag() > b.point(k).imag();
  }
  return false;
}

void finish_root(Root& r, const PolySystem& sys, double residual_tol) {
  r.residual = root_residual(sys, r);
  r.flagged = !(r.residual <= residual_tol);
}

}  // namespace

std::vector<int> GapReport::independent_degrees() const {
  std::vector<int> out;
  for (std::size_t delta = 0; delta < block_ranks.size(); ++delta) {
    out.insert(out.end(), static_cast<std::size_t>(block_ranks[delta]), static_cast<int>(delta));
  }
  return out;
}

GapReport find_gap(const NullspaceBasis& Z, double tol) {
  if (Z.degree_block_bounds.empty()) throw ArgumentError("find_gap needs the degree block bounds of the basis");
  GapReport g;
  g.degree = static_cast<int>(Z.degree_block_bounds.size()) - 1;
  g.nullity = Z.nullity();
  Eigen::Index previous = 0;
  std::vector<Eigen::Index> cumulative;
  for (std::size_t bound : Z.degree_block_bounds) {
    const Eigen::Index rank =
        g.nullity == 0 ? 0 : numerical_rank_scaled(Z.Z.topRows(static_cast<Eigen::Index>(bound)), tol, 1.0);
    g.block_ranks.push_back(rank - previous);
    cumulative.push_back(rank);
    previous = rank;
  }
  if (g.nullity == 0) {
    g.stabilized = true;
    g.d_star = g.degree;
    return g;
  }
  for (int delta = 1; delta <= g.degree; ++delta) {
    if (g.block_ranks[static_cast<std::size_t>(delta)] == 0) {
      g.gap_degree = delta;
      g.m_R = cumulative[static_cast<std::size_t>(delta)];
      g.m_S = g.nullity - g.m_R;
      g.stabilized = true;
      g.d_star = g.degree;
      break;
    }
  }
  return g;
}

void SolveConfig::validate() const {
  if (tol && !(*tol > 0.0)) throw ArgumentError("rank tolerance must be positive");
  if (!(basis_tol > 0.0)) throw ArgumentError("basis tolerance must be positive");
  if (!(residual_tol > 0.0)) throw ArgumentError("residual tolerance must be positive");
  if (cluster_tol && !(*cluster_tol > 0.0)) throw ArgumentError("cluster tolerance must be positive");
  if (degree && *degree < 0) throw ArgumentError("degree must be non-negative");
  if (degree && max_degree && *degree > *max_degree) throw ArgumentError("degree exceeds max degree");
}

Point Root::affine() const { return point.tail(point.size() - 1) / point(0); }

long long RootSet::total_multiplicity() const {
  long long total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  return total;
}

std::vector<Root> RootSet::affine_roots() const {
  std::vector<Root> out;
  std::copy_if(roots.begin(), roots.end(), std::back_inserter(out), [](const Root& r) { return !r.at_infinity; });
  return out;
}

std::vector<Root> RootSet::infinity_roots() const {
  std::vector<Root> out;
  std::copy_if(roots.begin(), roots.end(), std::back_inserter(out), [](const Root& r) { return r.at_infinity; });
  return out;
}

Eigen::VectorXd random_combination(std::uint64_t seed, Eigen::Index count) {
  std::mt19937_64 gen(seed);
  Eigen::VectorXd gamma(count);
  for (Eigen::Index k = 0; k < count; ++k) gamma(k) = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return gamma;
}

Eigen::MatrixXd affine_shift_matrix(const Eigen::MatrixXd& Z, int n, int d, int i) {
  const auto sel = make_affine_selection(n, d, i);
  return pinv_solve(select_rows(Z, sel.rows_from), select_rows(Z, sel.rows_to));
}

Eigen::MatrixXd homogeneous_shift_matrix(const Eigen::MatrixXd& Z, int n, int d, int i, int j) {
  const auto sel = make_homogeneous_selection(n, d, i, j);
  return pinv_solve(select_rows(Z, sel.rows_from), select_rows(Z, sel.rows_to));
}

std::vector<EigenGroup> common_eigenvectors(const std::vector<Eigen::MatrixXd>& ops, const Eigen::VectorXd& gamma,
                                            double group_tol) {
  if (ops.empty()) throw ArgumentError("common_eigenvectors needs at least one operator");
  if (gamma.size() != static_cast<Eigen::Index>(ops.size())) throw ArgumentError("one weight per operator expected");
  const Eigen::Index m = ops[0].rows();
  Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].rows() != m || ops[k].cols() != m) throw ArgumentError("operators must share one square size");
    combined += gamma(static_cast<Eigen::Index>(k)) * ops[k];
  }
  const SchurForm base = complex_schur(combined.cast<Complex>());

  DisjointSets sets(static_cast<std::size_t>(m));
  for (Eigen::Index p = 0; p < m; ++p) {
    for (Eigen::Index q = p + 1; q < m; ++q) {
      if (std::abs(base.T(p, p) - base.T(q, q)) <= group_tol) {
        sets.unite(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
      }
    }
  }

  std::vector<EigenGroup> out;
  for (const auto& members : collect(sets, static_cast<std::size_t>(m))) {
    const auto mu = static_cast<Eigen::Index>(members.size());
    std::vector<bool> flags(static_cast<std::size_t>(m), false);
    Complex mean = 0.0;
    for (std::size_t p : members) {
      flags[p] = true;
      mean += base.T(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    }
    SchurForm s = base;
    move_to_front(s, flags);
    const Eigen::MatrixXcd Qc = s.Q.leftCols(mu);

    EigenGroup g;
    g.eigenvalue = mean / static_cast<double>(mu);
    g.size = static_cast<int>(mu);
    if (mu == 1) {
      g.vector = Qc.col(0);
    } else {
      // The common eigenvector is the joint null vector of (B_k - mean_k I).
      Eigen::MatrixXcd stack(static_cast<Eigen::Index>(ops.size()) * mu, mu);
      for (std::size_t k = 0; k < ops.size(); ++k) {
        Eigen::MatrixXcd B = Qc.adjoint() * ops[k].cast<Complex>() * Qc;
        B.diagonal().array() -= B.trace() / static_cast<double>(mu);
        stack.middleRows(static_cast<Eigen::Index>(k) * mu, mu) = B;
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeFullV);
      g.vector = Qc * svd.matrixV().col(mu - 1);
    }
    g.vector.normalize();
    out.push_back(std::move(g));
  }
  return out;
}

RootSet solve_affine(const Eigen::MatrixXd& Z_R, int d, const PolySystem& sys, const SolveConfig& cfg) {
  const int n = sys.num_vars();
  const Eigen::Index m = Z_R.cols();
  if (Z_R.rows() != static_cast<Eigen::Index>(monomial_count(n, d))) {
    throw ArgumentError("basis rows do not match the monomials of degree <= d");
  }
  RootSet out;
  out.diagnostics.regular_degree = d;
  out.diagnostics.residual_tol = cfg.residual_tol;
  out.diagnostics.basis_tol = cfg.basis_tol;
  if (m == 0) return out;

  MonomialBasis basis(n, d);
  std::vector<Eigen::Index> from;
  if (cfg.square_s0) {
    from = independent_rows(Z_R, cfg.basis_tol, m);
    if (static_cast<Eigen::Index>(from.size()) < m) {
      throw DegenerateShiftError("fewer independent basis rows than affine roots");
    }
    if (basis[static_cast<std::size_t>(from.back())].total_degree() >= d) {
      throw DegenerateShiftError("an independent row lies in the top degree block; raise the degree");
    }
  } else {
    from = make_affine_selection(n, d, 1).rows_from;
  }
  const Eigen::MatrixXd S0Z = select_rows(Z_R, from);
  const double scale = Z_R.norm() == 0.0 ? 1.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(Z_R).singularValues()(0);
  if (numerical_rank_scaled(S0Z, cfg.basis_tol, scale) < m) {
    throw DegenerateShiftError(
        "S0*Z is rank deficient: roots at infinity may be undetected or the affine count is wrong");
  }

  std::vector<Eigen::MatrixXd> ops;
  for (int i = 1; i <= n; ++i) {
    std::vector<Eigen::Index> to;
    for (Eigen::Index r : from) {
      to.push_back(static_cast<Eigen::Index>(*basis.index_of(basis[static_cast<std::size_t>(r)].shifted(i - 1, 1))));
    }
    ops.push_back(pinv_solve(S0Z, select_rows(Z_R, to)));
  }
  const Eigen::VectorXd gamma = random_combination(cfg.seed, n);
  Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < n; ++i) combined += gamma(i) * ops[static_cast<std::size_t>(i)];
  const double tol = group_tolerance(gamma, cfg.cluster_tol, complex_schur(combined.cast<Complex>()).T);

  for (const auto& g : common_eigenvectors(ops, gamma, tol)) {
    const Eigen::VectorXcd v = Z_R.cast<Complex>() * g.vector;
    Root r;
    r.point.resize(n + 1);
    r.point(0) = 1.0;
    for (int i = 1; i <= n; ++i) r.point(i) = v(i) / v(0);
    finish_root(r, sys, cfg.residual_tol);
    for (int k = 0; k < g.size; ++k) out.roots.push_back(r);
  }
  return out;
}

std::optional<SingularShifts> singular_shifts(const Eigen::MatrixXd& Z_S, int n, int d, double tol) {
  if (Z_S.cols() == 0 || d < 1) return std::nullopt;
  const double scale = Eigen::JacobiSVD<Eigen::MatrixXd>(Z_S).singularValues()(0);
  int best = 0;
  double best_sigma = 0.0;
  for (int j = 1; j <= n; ++j) {
    const auto sel = make_homogeneous_selection(n, d, 0, j);
    const Eigen::MatrixXd D = select_rows(Z_S, sel.rows_from);
    if (D.rows() < D.cols()) continue;
    const auto sv = Eigen::JacobiSVD<Eigen::MatrixXd>(D).singularValues();
    const double sigma = sv(sv.size() - 1) / scale;
    if (sigma > best_sigma) {
      best_sigma = sigma;
      best = j;
    }
  }
  if (best == 0 || best_sigma <= tol) return std::nullopt;

  SingularShifts out;
  out.down_shift = best;
  for (int i = 0; i <= n; ++i) {
    if (i == best) {
      out.E.push_back(Eigen::MatrixXd::Identity(Z_S.cols(), Z_S.cols()));
      continue;
    }
    const auto sel = make_homogeneous_selection(n, d, i, best);
    const Eigen::MatrixXd D = select_rows(Z_S, sel.rows_from);
    const Eigen::MatrixXd U = select_rows(Z_S, sel.rows_to);
    Eigen::MatrixXd E = pinv_solve(D, U);
    out.consistency_residual = std::max(out.consistency_residual, (D * E - U).norm() / scale);
    out.E.push_back(std::move(E));
  }
  if (out.consistency_residual > kShiftConsistency) return std::nullopt;
  return out;
}

RootSet extract_infinity(const Eigen::MatrixXd& Z_S, const SingularShifts& shifts, int d, const PolySystem& sys,
                         const SolveConfig& cfg) {
  const int n = sys.num_vars();
  const int j = shifts.down_shift;
  const Eigen::Index m = Z_S.cols();
  RootSet out;
  out.diagnostics.infinity_down_shift = j;
  if (m == 0) return out;

  MonomialBasis basis(n, d);
  // Row of z_j^(d-1) * z_i in the affine column order; i = 0 drops to z_j^(d-1).
  auto row_of = [&](int i) {
    Monomial mono = Monomial::one(n).shifted(j - 1, d - 1);
    if (i > 0) mono = mono.shifted(i - 1, 1);
    return static_cast<Eigen::Index>(*basis.index_of(mono));
  };

  std::vector<Eigen::MatrixXd> ops;
  for (int i = 1; i <= n; ++i) {
    if (i != j) ops.push_back(shifts.E[static_cast<std::size_t>(i)]);
  }
  std::vector<EigenGroup> groups;
  if (ops.empty()) {
    groups.push_back({0.0, static_cast<int>(m), Eigen::VectorXcd::Unit(m, 0)});
  } else {
    const Eigen::VectorXd gamma = random_combination(cfg.seed + 1, static_cast<Eigen::Index>(ops.size()));
    Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t k = 0; k < ops.size(); ++k) combined += gamma(static_cast<Eigen::Index>(k)) * ops[k];
    const double tol = group_tolerance(gamma, cfg.cluster_tol, complex_schur(combined.cast<Complex>()).T);
    groups = common_eigenvectors(ops, gamma, tol);
  }

  for (const auto& g : groups) {
    const Eigen::VectorXcd v = Z_S.cast<Complex>() * g.vector;
    const Complex base = v(row_of(j));
    Root r;
    r.at_infinity = true;
    r.point.resize(n + 1);
    for (int i = 0; i <= n; ++i) r.point(i) = v(row_of(i)) / base;
    r.point(0) = 0.0;
    r.point = canonicalize(r.point);
    finish_root(r, sys, cfg.residual_tol);
    for (int k = 0; k < g.size; ++k) out.roots.push_back(r);
  }
  return out;
}

double root_residual(const PolySystem& sys, const Root& root) {
  if (root.point.size() != sys.num_vars() + 1) throw ArgumentError("root dimension does not match the system");
  if (!root.at_infinity) return max_residual(sys, root.affine());
  return max_residual(homogenize(sys), root.point);
}

double default_cluster_tol(const RootSet& raw) {
  double largest = 0.0;
  for (const auto& r : raw.roots) largest = std::max(largest, r.point.cwiseAbs().maxCoeff());
  return kDefaultGroupTol * (1.0 + largest);
}

RootSet cluster_roots(const RootSet& raw, const PolySystem& sys, double cluster_tol) {
  const std::size_t count = raw.roots.size();
  DisjointSets sets(count);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const auto& ra = raw.roots[a];
      const auto& rb = raw.roots[b];
      if (ra.at_infinity == rb.at_infinity && (ra.point - rb.point).norm() <= cluster_tol) sets.unite(a, b);
    }
  }
  RootSet out;
  out.diagnostics = raw.diagnostics;
  out.diagnostics.cluster_tol = cluster_tol;
  for (const auto& members : collect(sets, count)) {
    Root r;
    r.at_infinity = raw.roots[members.front()].at_infinity;
    r.multiplicity = 0;
    r.point = Point::Zero(raw.roots[members.front()].point.size());
    for (std::size_t k : members) {
      r.point += static_cast<double>(raw.roots[k].multiplicity) * raw.roots[k].point;
      r.multiplicity += raw.roots[k].multiplicity;
    }
    r.point /= static_cast<double>(r.multiplicity);
    if (r.at_infinity) {
      r.point(0) = 0.0;
      r.point = canonicalize(r.point);
    } else {
      r.point(0) = 1.0;
    }
    finish_root(r, sys, raw.diagnostics.residual_tol > 0.0 ? raw.diagnostics.residual_tol : 1e-6);
    out.roots.push_back(std::move(r));
  }
  std::stable_sort(out.roots.begin(), out.roots.end(), root_before);
  return out;
}

double verify_dual_basis(const PolySystem& sys, const Point& root, const std::vector<DualFunctional>& duals, int d) {
  if (root.size() != sys.num_vars()) throw ArgumentError("root dimension does not match the system");
  const MacaulayMatrix M = build_macaulay(sys, d);
  double worst = 0.0;
  for (const auto& functional : duals) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(M.cols());
    for (const auto& [alpha, weight] : functional) {
      if (alpha.num_vars() != sys.num_vars()) throw ArgumentError("multi-index dimension does not match the system");
      w += weight * dual_vector(root, alpha, d);
    }
    const Eigen::VectorXcd r = M.data().cast<Complex>() * w;
    worst = std::max(worst, r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff());
  }
  return worst;
}

SolveResult solve_from_basis(const PolySystem& sys, MacaulayMatrix macaulay, NullspaceBasis basis,
                             const SolveConfig& cfg) {
  cfg.validate();
  const int n = sys.num_vars();
  const int d = macaulay.degree();
  if (basis.degree_block_bounds.empty()) basis.degree_block_bounds = macaulay.degree_block_bounds();
  const GapReport gap = find_gap(basis, cfg.basis_tol);
  if (!gap.stabilized) {
    throw NoStabilizationError("no gap in the null-space degree structure at degree " + std::to_string(d));
  }

  Eigen::MatrixXd Z_R;
  Eigen::MatrixXd Z_S(basis.Z.rows(), 0);
  int regular = d;
  if (gap.m_S > 0) {
    const auto k = static_cast<Eigen::Index>(basis.degree_block_bounds[static_cast<std::size_t>(*gap.gap_degree)]);
    const ColumnCompression comp = column_compress(basis.Z, k, cfg.basis_tol);
    if (comp.m_R != gap.m_R) throw NumericalError("column compression rank disagrees with the gap report");
    Z_R = comp.Z.topRows(k).leftCols(gap.m_R);
    Z_S = comp.Z.rightCols(gap.m_S);
    regular = *gap.gap_degree;
  } else {
    Z_R = basis.Z;
  }

  SolveDiagnostics diag;
  diag.gap = gap;
  diag.degree_used = d;
  diag.regular_degree = regular;
  diag.rank_tol = basis.tol_used;
  diag.basis_tol = cfg.basis_tol;
  diag.residual_tol = cfg.residual_tol;
  if (sys.is_square()) diag.bezout = sys.bezout_number();

  RootSet all;
  if (gap.m_R > 0) {
    RootSet raw = solve_affine(Z_R, regular, sys, cfg);
    raw.diagnostics.residual_tol = cfg.residual_tol;
    const double tol = cfg.cluster_tol.value_or(default_cluster_tol(raw));
    diag.cluster_tol = tol;
    all.roots = cluster_roots(raw, sys, tol).roots;
  }

  std::optional<SingularShifts> singular;
  if (gap.m_S > 0) {
    singular = singular_shifts(Z_S, n, d, cfg.basis_tol);
    if (singular) {
      RootSet raw = extract_infinity(Z_S, *singular, d, sys, cfg);
      raw.diagnostics.residual_tol = cfg.residual_tol;
      const double tol = cfg.cluster_tol.value_or(default_cluster_tol(raw));
      for (auto& r : cluster_roots(raw, sys, tol).roots) all.roots.push_back(std::move(r));
      diag.infinity_extracted = true;
      diag.infinity_down_shift = singular->down_shift;
    } else {
      diag.warnings.push_back("roots at infinity detected (" + std::to_string(gap.m_S) +
                              ") but their coordinates could not be extracted");
    }
  }

  for (std::size_t k = 0; k < all.roots.size(); ++k) {
    if (all.roots[k].flagged) {
      diag.warnings.push_back("root " + std::to_string(k + 1) + " residual exceeds the residual tolerance");
    }
  }
  if (diag.bezout) {
    const long long counted = all.total_multiplicity() + (diag.infinity_extracted ? 0 : gap.m_S);
    if (counted != *diag.bezout) {
      diag.warnings.push_back("multiplicity sum " + std::to_string(counted) + " differs from the Bezout number " +
                              std::to_string(*diag.bezout));
    }
  }
  all.diagnostics = std::move(diag);
  return SolveResult{std::move(all), std::move(macaulay), std::move(basis), std::move(Z_R), std::move(Z_S),
                     std::move(singular)};
}

SolveResult solve_detailed(const PolySystem& sys, const SolveConfig& cfg) {
  cfg.validate();
  int start = cfg.degree ? *cfg.degree : (sys.is_square() ? default_degree(sys) : sys.max_degree());
  if (cfg.degree && start < sys.max_degree()) throw ArgumentError("degree is below the largest equation degree");
  start = std::max({start, sys.max_degree(), 1});
  const int last = cfg.max_degree ? *cfg.max_degree : start + sys.num_vars() + 2;
  if (last < start) throw ArgumentError("max degree is below the starting degree");

  std::optional<MacaulayMatrix> M;
  Eigen::Index nullity = 0;
  for (int d = start; d <= last; ++d) {
    M = M ? extend_macaulay(*M, sys, d) : build_macaulay(sys, d);
    NullspaceBasis basis = nullspace(M->data(), cfg.tol);
    basis.degree_block_bounds = M->degree_block_bounds();
    nullity = basis.nullity();
    if (find_gap(basis, cfg.basis_tol).stabilized) return solve_from_basis(sys, std::move(*M), std::move(basis), cfg);
  }
  throw NoStabilizationError("positive-dimensional or max degree too low: no gap for degrees " +
                             std::to_string(start) + ".." + std::to_string(last) + " (last nullity " +
                             std::to_string(nullity) + ")");
}

RootSet solve(const PolySystem& sys, const SolveConfig& cfg) { return solve_detailed(sys, cfg).roots; }

}  // namespace polyreal
