#include "polyreal/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "polyreal/error.hpp"

namespace polyreal {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Cursor over a single line with comments already stripped.
class LineScanner {
 public:
  LineScanner(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }
  char peek() {
    skip_space();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    fail_at(what, pos_);
  }

  [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
    throw ParseError(what, line_no_, static_cast<int>(pos) + 1);
  }

  std::size_t position() const { return pos_; }

  std::string_view ident() {
    skip_space();
    if (pos_ >= line_.size() || !is_ident_start(line_[pos_])) fail("expected identifier");
    const std::size_t start = pos_;
    while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
    return line_.substr(start, pos_ - start);
  }

  std::string_view digits() {
    if (pos_ >= line_.size() || !is_digit(line_[pos_])) fail("expected digits");
    const std::size_t start = pos_;
    while (pos_ < line_.size() && is_digit(line_[pos_])) ++pos_;
    return line_.substr(start, pos_ - start);
  }

  int uint_value() {
    skip_space();
    const auto text = digits();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail("exponent out of range");
    return value;
  }

  // coeff := uint | uint "." uint | uint "/" uint
  double coefficient() {
    skip_space();
    const std::size_t start = pos_;
    digits();
    if (pos_ < line_.size() && line_[pos_] == '.') {
      ++pos_;
      digits();
      return to_double(line_.substr(start, pos_ - start), start);
    }
    const double numerator = to_double(line_.substr(start, pos_ - start), start);
    skip_space();
    if (pos_ < line_.size() && line_[pos_] == '/') {
      ++pos_;
      skip_space();
      const std::size_t den_start = pos_;
      const double denominator = to_double(digits(), den_start);
      if (denominator == 0.0) {
        pos_ = den_start;
        fail("division by zero in coefficient");
      }
      return numerator / denominator;
    }
    return numerator;
  }

 private:
  double to_double(std::string_view text, std::size_t start) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      pos_ = start;
      fail("coefficient out of range");
    }
    return value;
  }

  std::string_view line_;
  int line_no_;
  std::size_t pos_ = 0;
};

int variable_index(const std::vector<std::string>& names, std::string_view name, const LineScanner& sc) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  sc.fail_at("unknown variable '" + std::string(name) + "'", sc.position() - name.size());
}

// term := coeff? ("*"? factor)*
void parse_term(LineScanner& sc, const std::vector<std::string>& names, double sign, Polynomial& out) {
  const int n = static_cast<int>(names.size());
  double coeff = 1.0;
  bool seen_anything = false;
  if (is_digit(sc.peek())) {
    coeff = sc.coefficient();
    seen_anything = true;
  }
  std::vector<int> exponents(static_cast<std::size_t>(n), 0);
  for (;;) {
    const char c = sc.peek();
    if (c == '*') {
      if (!seen_anything) sc.fail("'*' without a left operand");
      sc.accept('*');
      if (!is_ident_start(sc.peek())) sc.fail("expected variable after '*'");
      continue;
    }
    if (!is_ident_start(c)) break;
    const int idx = variable_index(names, sc.ident(), sc);
    int power = 1;
    if (sc.accept('^')) power = sc.uint_value();
    exponents[static_cast<std::size_t>(idx)] += power;
    seen_anything = true;
  }
  if (!seen_anything) sc.fail("expected a term");
  out.add_term(Monomial(std::move(exponents)), sign * coeff);
}

Polynomial parse_polynomial(LineScanner& sc, const std::vector<std::string>& names) {
  Polynomial p(static_cast<int>(names.size()));
  double sign = 1.0;
  // A leading sign is accepted in addition to the infix operators.
  if (sc.accept('-')) {
    sign = -1.0;
  } else {
    sc.accept('+');
  }
  parse_term(sc, names, sign, p);
  while (!sc.at_end()) {
    if (sc.accept('+')) {
      sign = 1.0;
    } else if (sc.accept('-')) {
      sign = -1.0;
    } else {
      sc.fail(std::string("unexpected character '") + sc.peek() + "'");
    }
    parse_term(sc, names, sign, p);
  }
  return p;
}

}  // namespace

PolySystem parse_system(std::string_view text) {
  std::vector<std::string> names;
  std::vector<Polynomial> polys;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineScanner sc(line, line_no);
    if (sc.at_end()) continue;

    if (!have_header) {
      const auto keyword = sc.ident();
      if (keyword != "vars" || !sc.accept(':')) sc.fail("expected header 'vars:'");
      while (!sc.at_end()) {
        std::string name(sc.ident());
        for (const auto& existing : names) {
          if (existing == name) sc.fail("duplicate variable '" + name + "'");
        }
        names.push_back(std::move(name));
      }
      if (names.empty()) sc.fail("header declares no variables");
      have_header = true;
      continue;
    }

    Polynomial p = parse_polynomial(sc, names);
    if (p.is_zero()) throw ParseError("polynomial is identically zero", line_no, 1);
    polys.push_back(std::move(p));
  }
  if (!have_header) throw ParseError("empty input: missing 'vars:' header", line_no, 1);
  if (polys.empty()) throw ParseError("empty system: no polynomials after the header", line_no, 1);
  return PolySystem(std::move(polys), std::move(names));
}

}  // namespace polyreal
