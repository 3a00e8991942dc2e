#include "polyreal/report.hpp"

#include <cmath>
#include <cstdio>

#include "polyreal/error.hpp"

namespace polyreal {

namespace {

using json = nlohmann::ordered_json;

// Entries below this fraction of the matrix scale print as 0 in text reports.
constexpr double kDisplayZero = 1e-12;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::vector<std::string> variable_list(const PolySystem& sys, bool homogeneous) {
  std::vector<std::string> names;
  if (homogeneous) names.push_back(homogenize(sys).variable_names().front());
  for (const auto& v : sys.variable_names()) names.push_back(v);
  return names;
}

bool is_realified(const Point& p, double tol) {
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k).imag() != 0.0 && std::abs(p(k).imag()) >= tol) return false;
  }
  return true;
}

std::string format_point(const Point& p, double realify_tol) {
  std::vector<std::string> parts;
  for (Eigen::Index k = 0; k < p.size(); ++k) parts.push_back(format_complex(p(k), realify_tol));
  return "(" + join(parts, ", ") + ")";
}

void write_matrix(std::ostream& os, const std::string& indent, const Eigen::MatrixXd& A) {
  const double scale = A.size() ? A.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    std::vector<std::string> parts;
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      const double v = std::abs(A(r, c)) <= kDisplayZero * scale ? 0.0 : A(r, c);
      parts.push_back(format_number(v));
    }
    os << indent << join(parts, "  ") << '\n';
  }
}

std::string format_vector(const Eigen::VectorXd& v) {
  std::vector<std::string> parts;
  for (Eigen::Index k = 0; k < v.size(); ++k) parts.push_back(format_number(v(k)));
  return "[" + join(parts, ", ") + "]";
}

json matrix_json(const Eigen::MatrixXd& A) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back(A(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re")) {
    const double re = j.at("re").get<double>();
    const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
    return {re, im};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ArgumentError("coordinate must be a number, {re, im} or [re, im]");
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(Complex z, double realify_tol) {
  if (std::abs(z.imag()) < realify_tol || z.imag() == 0.0) return format_number(z.real());
  const std::string im = format_number(std::abs(z.imag())) + "i";
  if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
  return format_number(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

Point displayed_coordinates(const Root& r) { return r.at_infinity ? r.point : r.affine(); }

void write_solve_text(std::ostream& os, const PolySystem& sys, const RootSet& roots) {
  const auto& diag = roots.diagnostics;
  std::vector<std::string> degrees;
  for (int d : sys.degrees()) degrees.push_back(std::to_string(d));
  os << "system: " << sys.size() << " equations in " << sys.num_vars() << " variables ("
     << join(variable_list(sys, false), ", ") << "), degrees " << join(degrees, " ");
  if (diag.bezout) os << ", Bezout number " << *diag.bezout;
  os << '\n';
  os << "solve: degree " << diag.degree_used << ", nullity " << diag.gap.nullity << ", m_R " << diag.gap.m_R
     << ", m_S " << diag.gap.m_S;
  if (diag.gap.gap_degree) os << ", gap at degree " << *diag.gap.gap_degree;
  os << '\n';
  int index = 0;
  long long affine = 0;
  long long infinity = 0;
  for (const auto& r : roots.roots) {
    os << "root " << ++index << ": " << format_point(displayed_coordinates(r), diag.residual_tol);
    if (r.at_infinity) os << " at infinity (" << join(variable_list(sys, true), ":") << ")";
    os << " mult " << r.multiplicity << " residual " << format_number(r.residual);
    if (r.flagged) os << " (above tolerance)";
    os << '\n';
    (r.at_infinity ? infinity : affine) += r.multiplicity;
  }
  if (diag.gap.m_S > 0 && !diag.infinity_extracted) infinity = diag.gap.m_S;
  if (diag.bezout) {
    os << "bezout check: " << *diag.bezout << (affine + infinity == *diag.bezout ? " = " : " != ") << affine << '+'
       << infinity << '\n';
  }
  for (const auto& w : diag.warnings) os << "warning: " << w << '\n';
}

void write_realization_text(std::ostream& os, const PolySystem& sys, const RealizationReport& report) {
  const Realization& R = report.realization;
  const auto& names = sys.variable_names();
  std::vector<std::string> states;
  for (const auto& m : R.state_monomials) states.push_back(to_string(m, names));
  os << "states: " << R.num_states() << " (" << join(states, ", ") << ")\n";
  for (int i = 0; i < R.num_vars(); ++i) {
    os << "A" << (i + 1) << " (shift in " << names[static_cast<std::size_t>(i)] << "):\n";
    write_matrix(os, "  ", R.A[static_cast<std::size_t>(i)]);
  }
  os << "c = " << format_vector(R.c.transpose()) << '\n';
  os << "x0 = " << format_vector(R.x0) << (report.default_x0 ? " (default: sum of root contributions)" : "")
     << '\n';
  os << "commutation residual: " << format_number(report.commutation) << '\n';
  os << "cayley-hamilton residual: " << format_number(report.cayley_hamilton) << '\n';
  os << "observability annihilation: " << format_number(report.annihilation) << '\n';
  if (report.descriptor) {
    if (const auto* d = std::get_if<DescriptorRealization>(&*report.descriptor)) {
      os << "descriptor: m_R " << d->m_R << ", m_S " << d->m_S << ", chart " << names[static_cast<std::size_t>(d->down_shift - 1)]
         << " = 1\n";
      os << "E0:\n";
      write_matrix(os, "  ", d->E0());
      os << "E0 nilpotency residual: " << format_number(d->nilpotency_residual) << '\n';
    } else {
      const auto& u = std::get<DescriptorUnavailable>(*report.descriptor);
      os << "descriptor split unavailable: m_R " << u.m_R << ", m_S " << u.m_S << " (" << u.reason << ")\n";
    }
  }
  write_solve_text(os, sys, report.solve.roots);
}

json solve_json(const PolySystem& sys, const RootSet& roots) {
  const auto& diag = roots.diagnostics;
  json doc;
  doc["version"] = "v1";
  json system;
  system["n"] = sys.num_vars();
  system["degrees"] = sys.degrees();
  if (diag.bezout) system["bezout"] = *diag.bezout;
  doc["system"] = system;

  json solve;
  solve["degree_used"] = diag.degree_used;
  solve["nullity"] = diag.gap.nullity;
  solve["m_R"] = diag.gap.m_R;
  solve["m_S"] = diag.gap.m_S;
  if (diag.gap.d_star) solve["d_star"] = *diag.gap.d_star;
  solve["tolerances"] = {{"rank", diag.rank_tol},
                         {"basis", diag.basis_tol},
                         {"residual", diag.residual_tol},
                         {"cluster", diag.cluster_tol}};
  solve["warnings"] = diag.warnings;
  doc["solve"] = solve;

  json list = json::array();
  for (const auto& r : roots.roots) {
    const Point p = displayed_coordinates(r);
    const bool realified = is_realified(p, diag.residual_tol);
    json coords = json::array();
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      coords.push_back({{"re", p(k).real()}, {"im", realified ? 0.0 : p(k).imag()}});
    }
    list.push_back({{"coords", coords},
                    {"homogeneous", r.at_infinity},
                    {"at_infinity", r.at_infinity},
                    {"multiplicity", r.multiplicity},
                    {"residual", r.residual},
                    {"realified", realified}});
  }
  doc["roots"] = list;
  return doc;
}

json realization_json(const PolySystem& sys, const RealizationReport& report) {
  json doc = solve_json(sys, report.solve.roots);
  const Realization& R = report.realization;
  json real;
  json states = json::array();
  for (const auto& m : R.state_monomials) states.push_back(to_string(m, sys.variable_names()));
  real["state_monomials"] = states;
  json A = json::array();
  for (const auto& Ai : R.A) A.push_back(matrix_json(Ai));
  real["A"] = A;
  real["c"] = vector_json(R.c.transpose());
  real["x0"] = vector_json(R.x0);
  real["commutation_residual"] = report.commutation;
  real["cayley_hamilton_residual"] = report.cayley_hamilton;
  if (report.descriptor) {
    if (const auto* d = std::get_if<DescriptorRealization>(&*report.descriptor)) {
      real["descriptor"] = {{"m_R", d->m_R}, {"m_S", d->m_S}, {"E0_nilpotency_residual", d->nilpotency_residual}};
    } else {
      const auto& u = std::get<DescriptorUnavailable>(*report.descriptor);
      real["descriptor"] = {{"m_R", u.m_R}, {"m_S", u.m_S}, {"unavailable", u.reason}};
    }
  }
  doc["realization"] = real;
  return doc;
}

void write_grid_csv(std::ostream& os, const TrajectoryGrid& grid) {
  const std::size_t line = grid.values.size() / static_cast<std::size_t>(grid.extents.front());
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    os << format_number(grid.values[k]) << ((k + 1) % line == 0 ? '\n' : ',');
  }
}

std::vector<ClaimedRoot> roots_from_json(const json& doc) {
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("roots")) throw ArgumentError("JSON object has no \"roots\" member");
    list = &doc.at("roots");
  }
  if (!list->is_array()) throw ArgumentError("roots must be a JSON array");
  std::vector<ClaimedRoot> out;
  for (const auto& item : *list) {
    ClaimedRoot r;
    const json* coords = &item;
    if (item.is_object()) {
      if (!item.contains("coords")) throw ArgumentError("root entry has no \"coords\" member");
      coords = &item.at("coords");
      if (item.contains("homogeneous")) r.homogeneous = item.at("homogeneous").get<bool>();
    }
    if (!coords->is_array()) throw ArgumentError("root coordinates must be an array");
    r.coords.resize(static_cast<Eigen::Index>(coords->size()));
    for (std::size_t k = 0; k < coords->size(); ++k) r.coords(static_cast<Eigen::Index>(k)) = complex_from_json((*coords)[k]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace polyreal
