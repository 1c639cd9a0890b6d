#include "poscert/text.hpp"

#include <algorithm>
#include <cctype>

namespace poscert {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                  : "column " + std::to_string(column) + ": " + what),
      message_(what),
      line_(line),
      column_(column) {}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars, std::size_t line)
      : text_(text), vars_(vars), line_(line) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    skip_space();
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    Polynomial acc = term();
    if (negative) acc = -acc;
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Integer number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      fail("decimal coefficients are not allowed; use a/b");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  unsigned exponent() {
    if (!accept('^')) return 1;
    Integer e = number();
    if (!e.fits_uint_p() || e > 100000) fail("exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  Polynomial factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    const std::size_t n = vars_.size();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner.pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = number();
      Integer den = 1;
      if (accept('/')) {
        den = number();
        if (den == 0) fail("zero denominator");
      }
      Rational value(num, den);
      value.canonicalize();
      unsigned e = exponent();
      return Polynomial::constant(n, pow(value, e));
    }
    if (c == '.') fail("decimal coefficients are not allowed; use a/b");
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      Monomial m(n);
      m[static_cast<std::size_t>(it - vars_.begin())] = exponent();
      return Polynomial::term(m, 1);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, std::size_t line) {
  return PolyParser(text, vars, line).parse();
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
  if (vars.size() != p.nvars()) throw std::invalid_argument("variable name count mismatch");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += vars[i];
      if (m[i] > 1) factors += "^" + std::to_string(m[i]);
    }
    if (factors.empty()) out += to_string(mag);
    else if (mag == 1) out += factors;
    else out += to_string(mag) + "*" + factors;
  }
  return out;
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

}  // namespace poscert
