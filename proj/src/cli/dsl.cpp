#include <cctype>
#include <charconv>
#include <optional>

#include "splice/cli.hpp"
#include "splice/errors.hpp"

namespace splice::cli {

namespace {

using engine::ExprPtr;

struct Parsed {
  ExprPtr expr;
  std::optional<link::LinkSpec> spec;  // present for leaves; inner nodes are evaluated on demand
};

class ExprParser {
 public:
  ExprParser(std::string_view text, const link::Catalog& catalog) : text_(text), catalog_(catalog) {}

  ExprPtr run() {
    Parsed p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p.expr;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw SyntaxError(at, "offset " + std::to_string(at) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      const std::string found = pos_ >= text_.size() ? "end of input" : "'" + std::string(1, text_[pos_]) + "'";
      fail("expected '" + std::string(1, c) + "', found " + found);
    }
    ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  }

  std::string word(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    int value = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() || end != digits.data() + digits.size())
      fail_at(start, "expected an integer");
    return value;
  }

  // "expr @ COMP"; checks that the component exists.
  std::pair<Parsed, std::string> anchored() {
    Parsed p = expr();
    expect('@');
    skip_space();
    const std::size_t at = pos_;
    std::string comp = word("a component label");
    if (!p.spec) p.spec = engine::eval(*p.expr);
    if (!p.spec->has_component(comp))
      throw Error(ErrorKind::UnknownComponent, "offset " + std::to_string(at) + ": '" + engine::describe(*p.expr) +
                                                   "' has no component '" + comp + "'");
    return {std::move(p), std::move(comp)};
  }

  static Parsed inner(ExprPtr e) { return {std::move(e), std::nullopt}; }

  Parsed expr() {
    skip_space();
    const std::size_t start = pos_;
    const std::string head = word("a link name or operation");
    if (!peek('(')) return leaf(head, start);
    if (head == "torus") {
      const std::size_t close = text_.find(')', pos_);
      if (close == std::string_view::npos) fail("unclosed 'torus('");
      const std::string name = "torus" + std::string(text_.substr(pos_, close + 1 - pos_));
      pos_ = close + 1;
      return leaf(name, start);
    }
    expect('(');
    if (head == "splice" || head == "connsum") {
      auto [l, lc] = anchored();
      expect(',');
      auto [r, rc] = anchored();
      expect(')');
      return inner(head == "splice" ? engine::make_splice(l.expr, lc, r.expr, rc)
                                        : engine::make_connsum(l.expr, lc, r.expr, rc));
    }
    if (head == "cable") {
      auto [b, comp] = anchored();
      expect(',');
      const int p = integer();
      expect(',');
      const int q = integer();
      expect(',');
      const int d = integer();
      expect(')');
      return inner(engine::make_cable(b.expr, comp, p, q, d));
    }
    if (head == "satellite") {
      Parsed k = expr();
      expect(',');
      auto [pattern, meridian] = anchored();
      expect(')');
      return inner(engine::make_satellite(k.expr, pattern.expr, meridian));
    }
    fail_at(start, "unknown operation '" + head + "'");
  }

  Parsed leaf(const std::string& name, std::size_t at) {
    auto spec = catalog_.lookup(name);
    if (!spec) throw Error(ErrorKind::UnknownName, "offset " + std::to_string(at) + ": no link named '" + name + "'");
    return {engine::make_leaf(*spec), *spec};
  }

  std::string_view text_;
  const link::Catalog& catalog_;
  std::size_t pos_ = 0;
};

}  // namespace

engine::ExprPtr parse_expr(std::string_view text, const link::Catalog& catalog) {
  return ExprParser(text, catalog).run();
}

}  // namespace splice::cli
