#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polyreal {

/// Exponent vector of a monomial z^alpha. Affine monomials have n entries;
/// homogeneous ones have n+1, with index 0 the homogenization variable z0.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  static Monomial one(int num_vars);
  static Monomial variable(int num_vars, int index);

  int num_vars() const { return static_cast<int>(exponents_.size()); }
  int total_degree() const { return degree_; }
  int operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exponents_; }

  Monomial operator*(const Monomial& other) const;

  /// Same monomial with one exponent changed by delta; the result must stay non-negative.
  Monomial shifted(int index, int delta) const;

  bool divides(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Degree negative lexicographic order: lower total degree first; on a tie,
/// a < b when the left-most nonzero entry of (b - a) is negative.
/// Throws ArgumentError when the variable counts differ.
std::strong_ordering monomial_cmp(const Monomial& a, const Monomial& b);

struct DegNegLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_cmp(a, b) < 0; }
};

/// C(n+d, n): the number of monomials in n variables of degree <= d.
std::size_t monomial_count(int n, int d);

/// All monomials in n variables of total degree <= d, ascending.
std::vector<Monomial> enumerate_monomials(int n, int d);

/// All monomials in n variables of total degree exactly d, ascending.
std::vector<Monomial> enumerate_monomials_of_degree(int n, int d);

/// Ordered monomial basis of degree <= d with index lookup and degree-block bookkeeping.
class MonomialBasis {
 public:
  MonomialBasis(int n, int d);

  int num_vars() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  std::optional<std::size_t> index_of(const Monomial& m) const;

  /// Row range [begin, end) holding the monomials of total degree delta.
  std::size_t block_begin(int delta) const { return monomial_count_below(delta); }
  std::size_t block_end(int delta) const { return monomial_count_below(delta + 1); }

  /// block_end(delta) for delta = 0..d; the last entry equals size().
  std::vector<std::size_t> block_bounds() const;

 private:
  std::size_t monomial_count_below(int delta) const;

  int n_;
  int d_;
  std::vector<Monomial> monomials_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// Human readable label: "1", "z1", "z1^2*z2".
std::string to_string(const Monomial& m, std::span<const std::string> names);

}  // namespace polyreal
