#include "splice/symalg.hpp"

namespace splice::symalg {
namespace {

struct Reduced {
  LaurentPoly num;
  LaurentPoly den;
};

// Brings num/den to canonical form. den must be nonzero.
Reduced canonicalize(LaurentPoly num, LaurentPoly den) {
  if (num.is_zero()) return {LaurentPoly{}, LaurentPoly(1)};

  // Monomial units: strip the monomial content of the denominator into the
  // numerator so the denominator is a polynomial with no variable factor.
  const Monomial den_unit = den.monomial_content();
  if (!den_unit.empty()) {
    const Monomial inv = den_unit.inverse();
    den = den * inv;
    num = num * inv;
  }

  if (!den.is_constant()) {
    const Monomial num_unit = num.monomial_content();
    LaurentPoly num_poly = num * num_unit.inverse();
    LaurentPoly g = gcd(num_poly, den);
    if (!g.is_constant()) {
      num = *divide_exact(num, g);
      den = *divide_exact(den, g);
    }
  }

  Integer cn = num.integer_content();
  Integer cd = den.integer_content();
  Integer c;
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (den.leading_coefficient() < 0) c = -c;
  if (c != 1) {
    num = num.divide_coefficients(c);
    den = den.divide_coefficients(c);
  }
  return {std::move(num), std::move(den)};
}

}  // namespace

RatFn::RatFn(LaurentPoly poly) : num_(std::move(poly)), den_(1) {}

RatFn::RatFn(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "zero denominator");
  auto r = canonicalize(num, den);
  num_ = std::move(r.num);
  den_ = std::move(r.den);
}

std::set<std::string> RatFn::variables() const {
  auto v = num_.variables();
  v.merge(den_.variables());
  return v;
}

RatFn RatFn::operator-() const { return RatFn(Canonical{}, -num_, den_); }

RatFn RatFn::operator+(const RatFn& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    if (den_.is_one()) return RatFn(Canonical{}, num_ + o.num_, den_);
    return RatFn(num_ + o.num_, den_);
  }
  return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator-(const RatFn& o) const { return *this + (-o); }

RatFn RatFn::operator*(const RatFn& o) const {
  if (is_zero() || o.is_zero()) return RatFn{};
  if (den_.is_one() && o.den_.is_one()) return RatFn(Canonical{}, num_ * o.num_, den_);
  return RatFn(num_ * o.num_, den_ * o.den_);
}

RatFn RatFn::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return RatFn(den_, num_);
}

RatFn RatFn::operator/(const RatFn& o) const {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (is_zero()) return RatFn{};
  return RatFn(num_ * o.den_, den_ * o.num_);
}

RatFn RatFn::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  // Powers of coprime polynomials stay coprime and the sign and unit
  // normalization of the denominator is multiplicative.
  return RatFn(Canonical{}, num_.pow(static_cast<unsigned>(k)),
               den_.pow(static_cast<unsigned>(k)));
}

RatFn arith(const RatFn& a, const RatFn& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::Add: return a + b;
    case ArithKind::Sub: return a - b;
    case ArithKind::Mul: return a * b;
    case ArithKind::Div: return a / b;
    case ArithKind::Neg: return -a;
    case ArithKind::Pow: {
      if (!b.is_polynomial() || !b.numerator().is_constant())
        throw std::invalid_argument("exponent must be an integer constant");
      Integer e = b.is_zero() ? Integer(0) : b.numerator().leading_coefficient();
      if (!e.fits_sint_p()) throw std::invalid_argument("exponent out of range");
      return a.pow(static_cast<int>(e.get_si()));
    }
  }
  return a;
}

// ----------------------------------------------------------- substitutions

LaurentPoly substitute(const LaurentPoly& f, const std::map<std::string, Monomial>& images) {
  LaurentPoly out;
  for (const auto& [m, c] : f.terms()) {
    std::vector<Monomial::Entry> kept;
    Monomial image;
    for (const auto& [var, e] : m.entries()) {
      auto it = images.find(var);
      if (it == images.end()) {
        kept.emplace_back(var, e);
      } else {
        image = image * it->second.pow(e);
      }
    }
    out.add_term(Monomial(std::move(kept)) * image, c);
  }
  return out;
}

RatFn substitute(const RatFn& f, const std::map<std::string, Monomial>& images) {
  LaurentPoly num = substitute(f.numerator(), images);
  LaurentPoly den = substitute(f.denominator(), images);
  if (den.is_zero()) throw Error(ErrorKind::SingularSpecialization, "denominator vanishes after substitution");
  return RatFn(num, den);
}

RatFn substitute_monomial(const RatFn& f, const std::string& var, const Monomial& image) {
  return substitute(f, {{var, image}});
}

RatFn invert_vars(const RatFn& f) {
  std::map<std::string, Monomial> images;
  for (const auto& v : f.variables()) images.emplace(v, Monomial::variable(v, -1));
  return substitute(f, images);
}

RatFn specialize_one(const RatFn& f, const std::string& var) {
  return substitute_monomial(f, var, Monomial{});
}

RatFn diagonal(const RatFn& f, const std::string& var) {
  std::map<std::string, Monomial> images;
  for (const auto& v : f.variables()) images.emplace(v, Monomial::variable(var));
  return substitute(f, images);
}

}  // namespace splice::symalg
