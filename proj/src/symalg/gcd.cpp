// Multivariate gcd by recursive content / primitive-part reduction.
//
// A polynomial is viewed as univariate in one chosen variable with
// coefficients in the polynomial ring of the remaining ones. Contents are
// gcds of those coefficients (computed recursively) and the primitive parts
// are combined with a subresultant pseudo-remainder sequence.

#include <algorithm>
#include <optional>

#include "splice/symalg.hpp"

namespace splice::symalg {
namespace {

using Univariate = std::vector<LaurentPoly>;  // index = degree in the main variable

LaurentPoly normalize_sign(LaurentPoly p) {
  if (!p.is_zero() && p.leading_coefficient() < 0) return -p;
  return p;
}

LaurentPoly strip_monomials(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  const Monomial content = p.monomial_content();
  return content.empty() ? p : p * content.inverse();
}

// Monomials are units, so p is first shifted to nonnegative exponents.
Univariate to_univariate(const LaurentPoly& p_in, const std::string& var) {
  const LaurentPoly p = strip_monomials(p_in);
  Univariate out(static_cast<std::size_t>(p.max_degree_in(var)) + 1);
  for (const auto& [m, c] : p.terms()) {
    int e = m.exponent(var);
    out[static_cast<std::size_t>(e)].add_term(m.without(var), c);
  }
  return out;
}

LaurentPoly from_univariate(const Univariate& u, const std::string& var) {
  LaurentPoly out;
  for (std::size_t e = 0; e < u.size(); ++e) {
    const Monomial shift = Monomial::variable(var, static_cast<int>(e));
    for (const auto& [m, c] : u[e].terms()) out.add_term(m * shift, c);
  }
  return out;
}

void trim(Univariate& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

LaurentPoly polynomial_gcd(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly univariate_content(const Univariate& u) {
  LaurentPoly g;
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = polynomial_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// Divides out the content and any monomial factor, including powers of var.
Univariate primitive_part(Univariate u, const std::string& var) {
  trim(u);
  if (u.empty()) return u;
  LaurentPoly content = univariate_content(u);
  if (!content.is_one()) {
    for (auto& c : u) {
      if (c.is_zero()) continue;
      c = *divide_exact(c, content);
    }
  }
  return to_univariate(from_univariate(u, var), var);
}

// lc(b)^(deg a - deg b + 1) * a mod b; both nonzero with deg a >= deg b.
Univariate pseudo_remainder(Univariate a, const Univariate& b) {
  const LaurentPoly& lead = b.back();
  const std::size_t db = b.size() - 1;
  trim(a);
  std::size_t multiplications = a.size() - db;
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const LaurentPoly top = a.back();
    for (auto& c : a) c = c * lead;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - top * b[i];
    trim(a);
    --multiplications;
  }
  if (multiplications > 0 && !a.empty()) {
    const LaurentPoly scale = lead.pow(static_cast<unsigned>(multiplications));
    for (auto& c : a) c = c * scale;
  }
  return a;
}

LaurentPoly exact_quotient(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_one()) return a;
  return *divide_exact(a, b);
}

// Subresultant remainder sequence; a and b are primitive in var.
Univariate subresultant_gcd(Univariate a, Univariate b, const std::string& var) {
  if (a.size() < b.size()) std::swap(a, b);
  LaurentPoly g(1);
  LaurentPoly h(1);
  while (true) {
    if (b.empty()) return primitive_part(std::move(a), var);
    if (b.size() == 1) return Univariate{LaurentPoly(1)};
    const std::size_t delta = a.size() - b.size();
    Univariate r = pseudo_remainder(a, b);
    if (r.empty()) return primitive_part(std::move(b), var);
    const LaurentPoly divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact_quotient(c, divisor);
    a = std::move(b);
    b = std::move(r);
    g = a.back();
    if (delta == 0) continue;
    h = exact_quotient(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
  }
}

Integer integer_gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer max_norm(const LaurentPoly& p) {
  Integer out = 0;
  for (const auto& [m, c] : p.terms())
    if (abs(c) > out) out = abs(c);
  return out;
}

LaurentPoly evaluate_at(const LaurentPoly& p, const std::string& var, const Integer& xi) {
  LaurentPoly out;
  Integer power;
  for (const auto& [m, c] : p.terms()) {
    mpz_pow_ui(power.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(m.exponent(var)));
    out.add_term(m.without(var), c * power);
  }
  return out;
}

// Inverse of evaluate_at using balanced base-xi digits of every coefficient.
LaurentPoly interpolate(LaurentPoly h, const std::string& var, const Integer& xi) {
  LaurentPoly out;
  const Integer half = xi / 2;
  for (int degree = 0; !h.is_zero(); ++degree) {
    LaurentPoly digits;
    for (const auto& [m, c] : h.terms()) {
      Integer d;
      mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (d > half) d -= xi;
      if (d != 0) digits.add_term(m, d);
    }
    const Monomial shift = Monomial::variable(var, degree);
    for (const auto& [m, c] : digits.terms()) out.add_term(m * shift, c);
    h = (h - digits).divide_coefficients(xi);
  }
  return out;
}

std::size_t max_degree(const LaurentPoly& p, const std::string& var) {
  std::size_t out = 0;
  for (const auto& [m, c] : p.terms()) out = std::max(out, static_cast<std::size_t>(m.exponent(var)));
  return out;
}

// Largest coefficient size, in bits, the heuristic gcd may create before
// handing over to the subresultant sequence.
constexpr std::size_t kHeuristicBitBudget = 20000;

bool divides_polynomially(const LaurentPoly& g, const LaurentPoly& p) {
  const auto q = divide_exact(p, g);
  return q && q->is_polynomial();
}

// Heuristic gcd in Z[vars] (Char, Geddes and Gonnet): evaluate one variable
// at a large integer, recurse, and rebuild the candidate from its balanced
// digits. A candidate is accepted only if it divides both inputs.
std::optional<LaurentPoly> heuristic_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  const Integer ca = a.integer_content();
  const Integer cb = b.integer_content();
  const Integer content = integer_gcd(ca, cb);
  if (a.is_constant() || b.is_constant()) return LaurentPoly(content);
  const LaurentPoly pa = a.divide_coefficients(ca);
  const LaurentPoly pb = b.divide_coefficients(cb);
  auto vars = pa.variables();
  vars.merge(pb.variables());
  const std::string var = *vars.begin();

  Integer xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  const std::size_t degree = std::max(max_degree(pa, var), max_degree(pb, var));
  for (int attempt = 0; attempt < 6; ++attempt) {
    const std::size_t bits = mpz_sizeinbase(xi.get_mpz_t(), 2) * degree +
                             std::max(mpz_sizeinbase(max_norm(pa).get_mpz_t(), 2),
                                      mpz_sizeinbase(max_norm(pb).get_mpz_t(), 2));
    if (bits > kHeuristicBitBudget) return std::nullopt;
    const LaurentPoly ea = evaluate_at(pa, var, xi);
    const LaurentPoly eb = evaluate_at(pb, var, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      if (const auto h = heuristic_gcd(ea, eb)) {
        LaurentPoly candidate = interpolate(*h, var, xi);
        if (!candidate.is_zero()) {
          candidate = candidate.divide_coefficients(candidate.integer_content());
          if (divides_polynomially(candidate, pa) && divides_polynomially(candidate, pb))
            return candidate * content;
        }
      }
    }
    Integer root;
    mpz_sqrt(root.get_mpz_t(), xi.get_mpz_t());
    mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
    xi = xi * 73794 * root / 27011;
  }
  return std::nullopt;
}

// Gcd in the Laurent ring, normalized to a polynomial without monomial
// content and with positive leading coefficient.
LaurentPoly polynomial_gcd(const LaurentPoly& a_in, const LaurentPoly& b_in) {
  const LaurentPoly a = strip_monomials(a_in);
  const LaurentPoly b = strip_monomials(b_in);
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  if (a.is_constant() || b.is_constant()) {
    Integer g;
    Integer ca = a.integer_content();
    Integer cb = b.integer_content();
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return LaurentPoly(g);
  }
  if (a == b) return normalize_sign(a);
  if (a.size() <= b.size() ? divide_exact(b, a).has_value() : false) return normalize_sign(a);
  if (b.size() <= a.size() ? divide_exact(a, b).has_value() : false) return normalize_sign(b);

  if (auto g = heuristic_gcd(a, b)) return normalize_sign(strip_monomials(*g));

  const auto va = a.variables();
  const auto vb = b.variables();
  std::vector<std::string> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
  for (const auto& v : va) {
    if (!vb.contains(v)) return polynomial_gcd(univariate_content(to_univariate(a, v)), b);
  }
  for (const auto& v : vb) {
    if (!va.contains(v)) return polynomial_gcd(a, univariate_content(to_univariate(b, v)));
  }

  std::string var = common.front();
  long best = -1;
  for (const auto& v : common) {
    const long degree = std::max(a.max_degree_in(v), b.max_degree_in(v));
    if (best < 0 || degree < best) {
      best = degree;
      var = v;
    }
  }
  Univariate ua = to_univariate(a, var);
  Univariate ub = to_univariate(b, var);
  const LaurentPoly ca = univariate_content(ua);
  const LaurentPoly cb = univariate_content(ub);
  for (auto& c : ua)
    if (!c.is_zero()) c = exact_quotient(c, ca);
  for (auto& c : ub)
    if (!c.is_zero()) c = exact_quotient(c, cb);
  const LaurentPoly content = polynomial_gcd(ca, cb);
  const LaurentPoly prim = from_univariate(
      subresultant_gcd(to_univariate(from_univariate(ua, var), var), to_univariate(from_univariate(ub, var), var), var),
      var);
  return normalize_sign(strip_monomials(content * prim));
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) { return polynomial_gcd(a, b); }

}  // namespace splice::symalg
