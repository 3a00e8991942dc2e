#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyreal/monomial.hpp"

namespace polyreal {

using Complex = std::complex<double>;

/// Complex coordinate vector: n entries (affine) or n+1 (homogeneous, z0 first).
using Point = Eigen::VectorXcd;

/// Sparse real polynomial in n variables. Never stores a zero coefficient.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, double, DegNegLexLess>;

  explicit Polynomial(int num_vars);
  /// Duplicate monomials are summed; zero results are dropped.
  Polynomial(int num_vars, const std::vector<std::pair<Monomial, double>>& terms);

  int num_vars() const { return n_; }
  int total_degree() const;
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  double coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, double coefficient);

  /// True when every term has the same total degree.
  bool is_homogeneous() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  int n_;
  TermMap terms_;
};

/// A set of polynomial equations f_1 = ... = f_s = 0 sharing one variable list.
class PolySystem {
 public:
  PolySystem(std::vector<Polynomial> polys, std::vector<std::string> variable_names);

  int num_vars() const { return static_cast<int>(names_.size()); }
  std::size_t size() const { return polys_.size(); }
  const Polynomial& operator[](std::size_t i) const { return polys_[i]; }
  const std::vector<Polynomial>& polys() const { return polys_; }
  const std::vector<std::string>& variable_names() const { return names_; }

  std::vector<int> degrees() const;
  int max_degree() const;
  bool is_square() const { return polys_.size() == names_.size(); }
  /// Product of the total degrees.
  long long bezout_number() const;

  friend bool operator==(const PolySystem&, const PolySystem&) = default;

 private:
  std::vector<Polynomial> polys_;
  std::vector<std::string> names_;
};

/// Sum of coeff * prod x_i^alpha_i, with 0^0 = 1.
Complex evaluate(const Polynomial& p, const Point& x);

/// Max |f_i(x)| over the equations of the system.
double max_residual(const PolySystem& sys, const Point& x);

/// Lift every f_i to f_i^h in (z0, z1, ..., zn) with all terms of degree d_i.
PolySystem homogenize(const PolySystem& sys);

/// Substitute z0 = 1 and drop the homogenization variable (index 0).
PolySystem dehomogenize(const PolySystem& sys);

/// Every monomial of degree <= d evaluated at an affine point, in basis order.
Eigen::VectorXcd vandermonde_vector(const Point& x, int d);

/// (1/alpha!) d^|alpha| v_d / dz^alpha evaluated at x; alpha = 0 gives vandermonde_vector.
Eigen::VectorXcd dual_vector(const Point& x, const Monomial& alpha, int d);

/// Printable form accepted back by parse_system (terms in descending order).
std::string to_string(const Polynomial& p, std::span<const std::string> names);

/// Full input-file text: "vars:" header followed by one polynomial per line.
std::string to_string(const PolySystem& sys);

}  // namespace polyreal
