#include "polyreal/monomial.hpp"

#include <numeric>

#include "polyreal/error.hpp"

namespace polyreal {

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw ArgumentError("monomial exponents must be non-negative");
  }
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

Monomial Monomial::one(int num_vars) {
  return Monomial(std::vector<int>(static_cast<std::size_t>(num_vars), 0));
}

Monomial Monomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw ArgumentError("variable index out of range");
  std::vector<int> e(static_cast<std::size_t>(num_vars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (num_vars() != other.num_vars()) throw ArgumentError("monomial variable counts differ");
  std::vector<int> e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::shifted(int index, int delta) const {
  if (index < 0 || index >= num_vars()) throw ArgumentError("variable index out of range");
  std::vector<int> e = exponents_;
  e[static_cast<std::size_t>(index)] += delta;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  if (num_vars() != other.num_vars()) return false;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

std::strong_ordering monomial_cmp(const Monomial& a, const Monomial& b) {
  if (a.num_vars() != b.num_vars()) throw ArgumentError("cannot compare monomials with different variable counts");
  if (a.total_degree() != b.total_degree()) return a.total_degree() <=> b.total_degree();
  for (int i = 0; i < a.num_vars(); ++i) {
    const int diff = b[i] - a[i];
    if (diff < 0) return std::strong_ordering::less;
    if (diff > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t monomial_count(int n, int d) {
  if (n < 0 || d < 0) return 0;
  // C(n+d, n) computed incrementally; every partial product is an integer.
  std::size_t c = 1;
  for (int k = 1; k <= n; ++k) {
    c = c * static_cast<std::size_t>(d + k) / static_cast<std::size_t>(k);
  }
  return c;
}

namespace {

// Exponent vectors of degree `remaining` over variables [pos, n), first exponent descending.
void append_degree_block(int n, int pos, int remaining, std::vector<int>& current, std::vector<Monomial>& out) {
  if (pos == n - 1) {
    current[static_cast<std::size_t>(pos)] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[static_cast<std::size_t>(pos)] = e;
    append_degree_block(n, pos + 1, remaining - e, current, out);
  }
  current[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

std::vector<Monomial> enumerate_monomials_of_degree(int n, int d) {
  if (n < 1) throw ArgumentError("need at least one variable");
  if (d < 0) throw ArgumentError("degree must be non-negative");
  std::vector<Monomial> out;
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  append_degree_block(n, 0, d, current, out);
  return out;
}

std::vector<Monomial> enumerate_monomials(int n, int d) {
  if (n < 1) throw ArgumentError("need at least one variable");
  if (d < 0) throw ArgumentError("degree must be non-negative");
  std::vector<Monomial> out;
  out.reserve(monomial_count(n, d));
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  for (int delta = 0; delta <= d; ++delta) append_degree_block(n, 0, delta, current, out);
  return out;
}

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d), monomials_(enumerate_monomials(n, d)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i].exponents(), i);
}

std::optional<std::size_t> MonomialBasis::index_of(const Monomial& m) const {
  if (m.num_vars() != n_ || m.total_degree() > d_) return std::nullopt;
  auto it = index_.find(m.exponents());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MonomialBasis::monomial_count_below(int delta) const {
  if (delta <= 0) return 0;
  return monomial_count(n_, std::min(delta, d_ + 1) - 1);
}

std::vector<std::size_t> MonomialBasis::block_bounds() const {
  std::vector<std::size_t> bounds;
  for (int delta = 0; delta <= d_; ++delta) bounds.push_back(block_end(delta));
  return bounds;
}

std::string to_string(const Monomial& m, std::span<const std::string> names) {
  if (static_cast<int>(names.size()) != m.num_vars()) throw ArgumentError("variable name count mismatch");
  std::string s;
  for (int i = 0; i < m.num_vars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += names[static_cast<std::size_t>(i)];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace polyreal
