#include <cctype>
#include <climits>

#include "splice/symalg.hpp"

namespace splice::symalg {
namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  RatFn parse() {
    RatFn value = rational();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(pos_, msg + " at offset " + std::to_string(pos_));
  }

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

  RatFn rational() {
    RatFn num = expr();
    if (!accept('/')) return num;
    const std::size_t at = pos_;
    RatFn den = expr();
    if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "zero denominator at offset " + std::to_string(at));
    return num / den;
  }

  RatFn expr() {
    skip_space();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    RatFn acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFn term() {
    RatFn acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  RatFn factor() {
    RatFn base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    Integer e = digits("exponent");
    if (!e.fits_sint_p()) {
      pos_ = at;
      fail("exponent out of range");
    }
    int k = static_cast<int>(e.get_si());
    if (negative) k = -k;
    if (k < 0 && base.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero raised to a negative power");
    return base.pow(k);
  }

  Integer digits(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  RatFn atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFn(LaurentPoly(digits("integer")));
    if (c == '(') {
      ++pos_;
      RatFn inner = rational();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 't') {
      const std::size_t start = pos_++;
      if (pos_ < text_.size() && text_[pos_] == '_') {
        ++pos_;
        const std::size_t ident = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          ++pos_;
        if (pos_ == ident) fail("expected identifier after 't_'");
      }
      return RatFn::variable(std::string(text_.substr(start, pos_ - start)));
    }
    fail("expected a term");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render_term(const Monomial& m, const Integer& abs_coeff) {
  std::string out;
  if (m.empty()) return abs_coeff.get_str();
  if (abs_coeff != 1) out = abs_coeff.get_str() + "*";
  bool first = true;
  for (const auto& [var, e] : m.entries()) {
    if (!first) out += '*';
    first = false;
    out += var;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

RatFn parse_rational(std::string_view text) { return ExpressionParser(text).parse(); }

std::string render(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Integer abs_c = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += render_term(m, abs_c);
  }
  return out;
}

std::string render(const RatFn& f) {
  if (f.is_polynomial()) return render(f.numerator());
  auto wrap = [](const LaurentPoly& p) {
    std::string s = render(p);
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(f.numerator()) + "/" + wrap(f.denominator());
}

}  // namespace splice::symalg
