#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polyreal/parser.hpp"
#include "polyreal/root_solver.hpp"

namespace support {

inline std::string data_path(const std::string& name) { return std::string(POLYREAL_DATA_DIR) + "/" + name; }

inline std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline polyreal::PolySystem load(const std::string& name) { return polyreal::parse_system(read(data_path(name))); }

/// Affine coordinates of the affine roots, repeated by multiplicity when asked.
inline std::vector<Eigen::VectorXcd> affine_points(const polyreal::RootSet& roots, bool repeat = false) {
  std::vector<Eigen::VectorXcd> out;
  for (const auto& r : roots.roots) {
    if (r.at_infinity) continue;
    for (int k = 0; k < (repeat ? r.multiplicity : 1); ++k) out.push_back(r.affine());
  }
  return out;
}

inline std::vector<Eigen::VectorXcd> infinity_points(const polyreal::RootSet& roots) {
  std::vector<Eigen::VectorXcd> out;
  for (const auto& r : roots.roots) {
    if (r.at_infinity) out.push_back(r.point);
  }
  return out;
}

}  // namespace support
