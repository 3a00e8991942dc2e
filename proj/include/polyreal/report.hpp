#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "polyreal/polynomial.hpp"
#include "polyreal/realization.hpp"
#include "polyreal/root_solver.hpp"

namespace polyreal {

/// 12 significant digits, shortest form ("3", "-0.5", "1.5e-14").
std::string format_number(double x);

/// "3", "1-2i"; imaginary parts below realify_tol are dropped.
std::string format_complex(Complex z, double realify_tol);

/// The coordinates a report shows for a root: affine (z1..zn) or homogeneous (z0..zn).
Point displayed_coordinates(const Root& r);

void write_solve_text(std::ostream& os, const PolySystem& sys, const RootSet& roots);
void write_realization_text(std::ostream& os, const PolySystem& sys, const RealizationReport& report);

/// Versioned JSON report ("v1").
nlohmann::ordered_json solve_json(const PolySystem& sys, const RootSet& roots);
nlohmann::ordered_json realization_json(const PolySystem& sys, const RealizationReport& report);

/// Grid as CSV: one line per k_1, the remaining axes flattened along the line.
void write_grid_csv(std::ostream& os, const TrajectoryGrid& grid);

/// A point read back from a report for verification.
struct ClaimedRoot {
  Point coords;
  bool homogeneous = false;
};

/// Accepts a full report object (uses its "roots") or a bare array of roots.
/// Coordinates are {re, im} objects or plain numbers. Throws ArgumentError on
/// malformed input.
std::vector<ClaimedRoot> roots_from_json(const nlohmann::ordered_json& doc);

}  // namespace polyreal
