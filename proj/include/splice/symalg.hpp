#pragma once

// Exact multivariate Laurent polynomials and rational functions over Z.
//
// Every value is immutable once built. RatFn is always kept in canonical
// form, so structural equality is mathematical equality.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "splice/errors.hpp"

namespace splice::symalg {

using Integer = mpz_class;

bool is_valid_variable_name(std::string_view name) noexcept;

/// A product of variables raised to nonzero integer powers.
class Monomial {
 public:
  using Entry = std::pair<std::string, int>;

  Monomial() = default;
  /// Sorts by name, merges repeats and drops zero exponents.
  explicit Monomial(std::vector<Entry> entries);
  static Monomial variable(std::string name, int exponent = 1);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  int exponent(std::string_view var) const noexcept;
  long degree() const noexcept;
  bool is_nonnegative() const noexcept;

  Monomial operator*(const Monomial& other) const;
  Monomial inverse() const;
  Monomial pow(int k) const;
  Monomial without(std::string_view var) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Graded lexicographic order with variables sorted by name.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return grlex_compare(a, b) > 0;
  }
};

/// Componentwise minimum of exponents (absent counts as 0).
Monomial monomial_meet(const Monomial& a, const Monomial& b);

class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, Integer, GrlexDescending>;

  LaurentPoly() = default;
  LaurentPoly(long constant);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(const Integer& constant);
  LaurentPoly(const Monomial& m, const Integer& coeff);

  static LaurentPoly variable(const std::string& name, int exponent = 1) {
    return LaurentPoly(Monomial::variable(name, exponent), Integer(1));
  }

  /// Iterates in canonical (descending) order.
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  bool is_polynomial() const noexcept;  // no negative exponents
  const Monomial& leading_monomial() const;
  const Integer& leading_coefficient() const;

  std::set<std::string> variables() const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;
  /// Positive gcd of coefficients; 0 for the zero polynomial.
  Integer integer_content() const;
  long max_degree_in(std::string_view var) const;

  void add_term(const Monomial& m, const Integer& coeff);

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Monomial& m) const;
  LaurentPoly operator*(const Integer& c) const;
  LaurentPoly pow(unsigned k) const;
  /// Exact division of every coefficient by c; c must divide them all.
  LaurentPoly divide_coefficients(const Integer& c) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  TermMap terms_;
};

/// q with a == b*q in the Laurent ring, or nullopt if b does not divide a.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

/// Gcd in Z[t^±1], normalized to have no monomial content and a positive
/// leading coefficient. gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Quotient of Laurent polynomials in canonical reduced form:
///  - numerator and denominator are coprime (including integer content);
///  - the denominator has no monomial factor and a positive leading
///    coefficient in canonical term order;
///  - zero is 0/1.
class RatFn {
 public:
  RatFn() : num_(0), den_(1) {}
  RatFn(long constant) : num_(constant), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFn(LaurentPoly poly);                            // NOLINT(google-explicit-constructor)
  /// Throws ZeroDenominator when den is zero.
  RatFn(const LaurentPoly& num, const LaurentPoly& den);

  static RatFn variable(const std::string& name) { return RatFn(LaurentPoly::variable(name)); }

  const LaurentPoly& numerator() const noexcept { return num_; }
  const LaurentPoly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  std::set<std::string> variables() const;

  RatFn operator-() const;
  RatFn operator+(const RatFn& o) const;
  RatFn operator-(const RatFn& o) const;
  RatFn operator*(const RatFn& o) const;
  /// Throws DivisionByZero.
  RatFn operator/(const RatFn& o) const;
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }
  /// Negative exponents invert; throws DivisionByZero for 0^k, k < 0.
  RatFn pow(int k) const;
  RatFn inverse() const;

  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Canonical {};
  RatFn(Canonical, LaurentPoly num, LaurentPoly den)
      : num_(std::move(num)), den_(std::move(den)) {}

  LaurentPoly num_;
  LaurentPoly den_;
};

enum class ArithKind { Add, Sub, Mul, Div, Neg, Pow };

/// Field operation dispatcher. For Pow, b must be an integer constant; for
/// Neg, b is ignored.
RatFn arith(const RatFn& a, const RatFn& b, ArithKind kind);

/// Simultaneous substitution var -> monomial. Throws SingularSpecialization if
/// the denominator vanishes identically.
RatFn substitute(const RatFn& f, const std::map<std::string, Monomial>& images);
RatFn substitute_monomial(const RatFn& f, const std::string& var, const Monomial& image);
LaurentPoly substitute(const LaurentPoly& f, const std::map<std::string, Monomial>& images);

/// f(t_1^-1, ..., t_n^-1).
RatFn invert_vars(const RatFn& f);
/// Sets var to 1.
RatFn specialize_one(const RatFn& f, const std::string& var);
/// Replaces every variable of f by var.
RatFn diagonal(const RatFn& f, const std::string& var);

/// Parses the polynomial expression grammar:
///   rational := expr ('/' expr)?
///   expr := ['-'] term (('+'|'-') term)*   term := factor ('*' factor)*
///   factor := atom ('^' int)?              atom := int | var | '(' rational ')'
///   var := 't' | 't_' ident
/// Throws SyntaxError (with offset) or ZeroDenominator.
RatFn parse_rational(std::string_view text);

std::string render(const LaurentPoly& p);
std::string render(const RatFn& f);

}  // namespace splice::symalg
