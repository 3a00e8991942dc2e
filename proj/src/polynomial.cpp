#include "polyreal/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "polyreal/error.hpp"

namespace polyreal {

Polynomial::Polynomial(int num_vars) : n_(num_vars) {
  if (num_vars < 1) throw ArgumentError("polynomial needs at least one variable");
}

Polynomial::Polynomial(int num_vars, const std::vector<std::pair<Monomial, double>>& terms) : Polynomial(num_vars) {
  for (const auto& [m, c] : terms) add_term(m, c);
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double coefficient) {
  if (m.num_vars() != n_) throw ArgumentError("term has the wrong number of variables");
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.total_degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.total_degree() == d; });
}

PolySystem::PolySystem(std::vector<Polynomial> polys, std::vector<std::string> variable_names)
    : polys_(std::move(polys)), names_(std::move(variable_names)) {
  if (polys_.empty()) throw ArgumentError("a polynomial system needs at least one equation");
  if (names_.empty()) throw ArgumentError("a polynomial system needs at least one variable");
  for (const auto& p : polys_) {
    if (p.num_vars() != num_vars()) throw ArgumentError("all polynomials must share the variable list");
    if (p.is_zero()) throw ArgumentError("zero polynomial in system");
  }
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> d;
  d.reserve(polys_.size());
  for (const auto& p : polys_) d.push_back(p.total_degree());
  return d;
}

int PolySystem::max_degree() const {
  int d = 0;
  for (const auto& p : polys_) d = std::max(d, p.total_degree());
  return d;
}

long long PolySystem::bezout_number() const {
  long long m = 1;
  for (const auto& p : polys_) m *= p.total_degree();
  return m;
}

namespace {

Complex monomial_value(const Monomial& m, const Point& x) {
  Complex v = 1.0;
  for (int i = 0; i < m.num_vars(); ++i) {
    for (int k = 0; k < m[i]; ++k) v *= x(i);
  }
  return v;
}

}  // namespace

Complex evaluate(const Polynomial& p, const Point& x) {
  if (x.size() != p.num_vars()) throw ArgumentError("point dimension does not match the polynomial");
  Complex sum = 0.0;
  for (const auto& [m, c] : p.terms()) sum += c * monomial_value(m, x);
  return sum;
}

double max_residual(const PolySystem& sys, const Point& x) {
  double r = 0.0;
  for (const auto& p : sys.polys()) r = std::max(r, std::abs(evaluate(p, x)));
  return r;
}

namespace {

std::string homogenizing_name(const std::vector<std::string>& names) {
  std::string candidate = "z0";
  while (std::find(names.begin(), names.end(), candidate) != names.end()) candidate += '_';
  return candidate;
}

}  // namespace

PolySystem homogenize(const PolySystem& sys) {
  const int n = sys.num_vars();
  std::vector<Polynomial> lifted;
  for (const auto& p : sys.polys()) {
    const int d = p.total_degree();
    Polynomial h(n + 1);
    for (const auto& [m, c] : p.terms()) {
      std::vector<int> e;
      e.reserve(static_cast<std::size_t>(n) + 1);
      e.push_back(d - m.total_degree());
      e.insert(e.end(), m.exponents().begin(), m.exponents().end());
      h.add_term(Monomial(std::move(e)), c);
    }
    lifted.push_back(std::move(h));
  }
  std::vector<std::string> names;
  names.push_back(homogenizing_name(sys.variable_names()));
  names.insert(names.end(), sys.variable_names().begin(), sys.variable_names().end());
  return PolySystem(std::move(lifted), std::move(names));
}

PolySystem dehomogenize(const PolySystem& sys) {
  const int n = sys.num_vars() - 1;
  if (n < 1) throw ArgumentError("nothing to dehomogenize");
  std::vector<Polynomial> out;
  for (const auto& p : sys.polys()) {
    Polynomial a(n);
    for (const auto& [m, c] : p.terms()) {
      a.add_term(Monomial(std::vector<int>(m.exponents().begin() + 1, m.exponents().end())), c);
    }
    out.push_back(std::move(a));
  }
  return PolySystem(std::move(out),
                    std::vector<std::string>(sys.variable_names().begin() + 1, sys.variable_names().end()));
}

Eigen::VectorXcd vandermonde_vector(const Point& x, int d) {
  return dual_vector(x, Monomial::one(static_cast<int>(x.size())), d);
}

Eigen::VectorXcd dual_vector(const Point& x, const Monomial& alpha, int d) {
  const int n = static_cast<int>(x.size());
  if (alpha.num_vars() != n) throw ArgumentError("derivative multi-index does not match the point dimension");
  if (d < 0) throw ArgumentError("degree must be non-negative");
  const auto basis = enumerate_monomials(n, d);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Monomial& beta = basis[j];
    Complex value = 1.0;
    for (int i = 0; i < n && value != 0.0; ++i) {
      if (beta[i] < alpha[i]) {
        value = 0.0;
        break;
      }
      // (1/alpha_i!) d^alpha_i/dz^alpha_i z^beta_i = C(beta_i, alpha_i) z^(beta_i - alpha_i)
      double binom = 1.0;
      for (int k = 1; k <= alpha[i]; ++k) binom = binom * (beta[i] - alpha[i] + k) / k;
      value *= binom;
      for (int k = 0; k < beta[i] - alpha[i]; ++k) value *= x(i);
    }
    v(static_cast<Eigen::Index>(j)) = value;
  }
  return v;
}

namespace {

std::string format_coefficient(double c) {
  // Shortest fixed-notation text that parses back to the same double.
  char buf[512];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), c, std::chars_format::fixed);
  if (ec != std::errc()) throw ArgumentError("coefficient cannot be printed");
  return std::string(buf, end);
}

}  // namespace

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    const bool constant = m.total_degree() == 0;
    if (constant) {
      s += format_coefficient(mag);
    } else {
      if (mag != 1.0) s += format_coefficient(mag) + "*";
      s += to_string(m, names);
    }
  }
  return s;
}

std::string to_string(const PolySystem& sys) {
  std::string s = "vars:";
  for (const auto& name : sys.variable_names()) s += " " + name;
  s += "\n";
  for (const auto& p : sys.polys()) s += to_string(p, sys.variable_names()) + "\n";
  return s;
}

}  // namespace polyreal
