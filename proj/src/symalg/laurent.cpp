#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "splice/symalg.hpp"

namespace splice::symalg {

bool is_valid_variable_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Entry> entries) {
  for (const auto& [name, e] : entries) {
    if (!is_valid_variable_name(name))
      throw std::invalid_argument("invalid variable name '" + name + "'");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& entry : entries) {
    if (!entries_.empty() && entries_.back().first == entry.first) {
      entries_.back().second += entry.second;
    } else {
      entries_.push_back(std::move(entry));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
}

Monomial Monomial::variable(std::string name, int exponent) {
  return Monomial({{std::move(name), exponent}});
}

int Monomial::exponent(std::string_view var) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const Entry& e, std::string_view v) { return e.first < v; });
  return (it != entries_.end() && it->first == var) ? it->second : 0;
}

long Monomial::degree() const noexcept {
  long d = 0;
  for (const auto& e : entries_) d += e.second;
  return d;
}

bool Monomial::is_nonnegative() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.second > 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) out.entries_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int k) const {
  Monomial out;
  if (k == 0) return out;
  out.entries_ = entries_;
  for (auto& e : out.entries_) e.second *= k;
  return out;
}

Monomial Monomial::without(std::string_view var) const {
  Monomial out;
  out.entries_.reserve(entries_.size());
  for (const auto& e : entries_)
    if (e.first != var) out.entries_.push_back(e);
  return out;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  auto i = ea.begin();
  auto j = eb.begin();
  while (i != ea.end() || j != eb.end()) {
    if (j == eb.end() || (i != ea.end() && i->first < j->first)) {
      return i->second <=> 0;
    }
    if (i == ea.end() || j->first < i->first) {
      return 0 <=> j->second;
    }
    if (i->second != j->second) return i->second <=> j->second;
    ++i;
    ++j;
  }
  return std::strong_ordering::equal;
}

Monomial monomial_meet(const Monomial& a, const Monomial& b) {
  std::vector<Monomial::Entry> out;
  auto i = a.entries().begin();
  auto j = b.entries().begin();
  const auto ie = a.entries().end();
  const auto je = b.entries().end();
  while (i != ie || j != je) {
    if (j == je || (i != ie && i->first < j->first)) {
      if (i->second < 0) out.push_back(*i);
      ++i;
    } else if (i == ie || j->first < i->first) {
      if (j->second < 0) out.push_back(*j);
      ++j;
    } else {
      out.emplace_back(i->first, std::min(i->second, j->second));
      ++i;
      ++j;
    }
  }
  return Monomial(std::move(out));
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Integer(constant));
}

LaurentPoly::LaurentPoly(const Integer& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

LaurentPoly::LaurentPoly(const Monomial& m, const Integer& coeff) {
  if (coeff != 0) terms_.emplace(m, coeff);
}

bool LaurentPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

bool LaurentPoly::is_one() const noexcept {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
}

bool LaurentPoly::is_polynomial() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.is_nonnegative(); });
}

const Monomial& LaurentPoly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Integer& LaurentPoly::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

std::set<std::string> LaurentPoly::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& e : m.entries()) out.insert(e.first);
  return out;
}

Monomial LaurentPoly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial acc = terms_.begin()->first;
  for (const auto& [m, c] : terms_) acc = monomial_meet(acc, m);
  return acc;
}

Integer LaurentPoly::integer_content() const {
  Integer g = 0;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

long LaurentPoly::max_degree_in(std::string_view var) const {
  long best = 0;
  bool any = false;
  for (const auto& [m, c] : terms_) {
    long e = m.exponent(var);
    if (!any || e > best) best = e;
    any = true;
  }
  return best;
}

void LaurentPoly::add_term(const Monomial& m, const Integer& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  if (is_zero() || o.is_zero()) return out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

LaurentPoly LaurentPoly::operator*(const Monomial& m) const {
  if (m.empty()) return *this;
  LaurentPoly out;
  // Multiplying by a monomial preserves the term order.
  for (const auto& [mt, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), mt * m, c);
  return out;
}

LaurentPoly LaurentPoly::operator*(const Integer& c) const {
  if (c == 0) return {};
  LaurentPoly out = *this;
  for (auto& [m, v] : out.terms_) v *= c;
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::divide_coefficients(const Integer& c) const {
  LaurentPoly out = *this;
  for (auto& [m, v] : out.terms_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  return out;
}

// Exact division of polynomials with nonnegative exponents by leading terms.
// Grlex is a well-order on the nonnegative orthant, so this terminates.
static std::optional<LaurentPoly> divide_polynomial(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly q;
  LaurentPoly r = a;
  const Monomial& lb = b.leading_monomial();
  const Integer& cb = b.leading_coefficient();
  const Monomial lb_inv = lb.inverse();
  while (!r.is_zero()) {
    Monomial mq = r.leading_monomial() * lb_inv;
    if (!mq.is_nonnegative()) return std::nullopt;
    if (!mpz_divisible_p(r.leading_coefficient().get_mpz_t(), cb.get_mpz_t())) return std::nullopt;
    Integer cq = r.leading_coefficient() / cb;
    q.add_term(mq, cq);
    for (const auto& [m, c] : b.terms()) r.add_term(m * mq, -(c * cq));
  }
  return q;
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.is_zero()) return LaurentPoly{};
  if (b.size() == 1) {
    const auto& [mb, cb] = *b.terms().begin();
    for (const auto& [m, c] : a.terms())
      if (!mpz_divisible_p(c.get_mpz_t(), cb.get_mpz_t())) return std::nullopt;
    return a.divide_coefficients(cb) * mb.inverse();
  }
  const Monomial ma = a.monomial_content();
  const Monomial mb = b.monomial_content();
  auto q = divide_polynomial(a * ma.inverse(), b * mb.inverse());
  if (!q) return std::nullopt;
  return *q * (ma * mb.inverse());
}

}  // namespace splice::symalg
