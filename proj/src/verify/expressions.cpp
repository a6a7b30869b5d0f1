#include <cstdlib>
#include <numeric>

#include "splice/errors.hpp"
#include "splice/verify.hpp"

namespace splice::verify {

namespace {

using engine::ExprPtr;
using link::LinkSpec;

// Bounds that keep randomly grown Conway functions small enough to check quickly.
constexpr std::size_t kMaxComponents = 7;
constexpr std::size_t kMaxTerms = 600;
constexpr std::int64_t kMaxLinking = 24;
constexpr int kMaxExponent = 80;
constexpr int kAttempts = 24;

struct Grown {
  ExprPtr expr;
  LinkSpec spec;
};

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::pair<int, int> coprime_pair(std::mt19937_64& rng) {
  while (true) {
    const int p = draw(rng, -3, 3);
    const int q = draw(rng, -3, 3);
    if (p != 0 && q != 0 && std::gcd(p, q) == 1) return {p, q};
  }
}

bool small_exponents(const symalg::LaurentPoly& p) {
  for (const auto& [m, c] : p.terms())
    for (const auto& [var, e] : m.entries())
      if (std::abs(e) > kMaxExponent) return false;
  return true;
}

bool small_enough(const LinkSpec& s) {
  if (s.size() > kMaxComponents) return false;
  if (s.conway.numerator().size() + s.conway.denominator().size() > kMaxTerms) return false;
  for (const auto& row : s.lk)
    for (auto v : row)
      if (std::abs(v) > kMaxLinking) return false;
  return small_exponents(s.conway.numerator()) && small_exponents(s.conway.denominator());
}

Grown leaf(std::mt19937_64& rng, const link::Catalog& catalog) {
  const auto names = catalog.names();
  if (names.empty() || draw(rng, 0, 3) == 0) {
    const auto [p, q] = coprime_pair(rng);
    const std::string name =
        "torus(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(draw(rng, 1, 2)) + ")";
    LinkSpec spec = *catalog.lookup(name);
    return {engine::make_leaf(spec), spec};
  }
  LinkSpec spec = *catalog.lookup(pick(rng, names));
  return {engine::make_leaf(spec), spec};
}

Grown grow(std::mt19937_64& rng, const link::Catalog& catalog, std::size_t depth);

std::optional<Grown> try_node(std::mt19937_64& rng, const link::Catalog& catalog, std::size_t depth) {
  switch (draw(rng, 0, 3)) {
    case 0: {
      Grown l = grow(rng, catalog, depth - 1);
      Grown r = grow(rng, catalog, depth - 1);
      if (l.spec.size() == 1 && r.spec.size() == 1) return std::nullopt;
      const ExprPtr e = engine::make_splice(l.expr, pick(rng, l.spec.components), r.expr,
                                            pick(rng, r.spec.components));
      return Grown{e, engine::eval(*e)};
    }
    case 1: {
      Grown b = grow(rng, catalog, depth - 1);
      const auto [p, q] = coprime_pair(rng);
      const ExprPtr e = engine::make_cable(b.expr, pick(rng, b.spec.components), p, q, draw(rng, 1, 2));
      return Grown{e, engine::eval(*e)};
    }
    case 2: {
      Grown l = grow(rng, catalog, depth - 1);
      Grown r = grow(rng, catalog, depth - 1);
      const ExprPtr e = engine::make_connsum(l.expr, pick(rng, l.spec.components), r.expr,
                                             pick(rng, r.spec.components));
      return Grown{e, engine::eval(*e)};
    }
    default: {
      Grown k = grow(rng, catalog, depth - 1);
      Grown p = grow(rng, catalog, depth - 1);
      if (k.spec.size() != 1 || p.spec.size() < 2) return std::nullopt;
      const ExprPtr e = engine::make_satellite(k.expr, p.expr, pick(rng, p.spec.components));
      return Grown{e, engine::eval(*e)};
    }
  }
}

Grown grow(std::mt19937_64& rng, const link::Catalog& catalog, std::size_t depth) {
  if (depth == 0 || draw(rng, 0, 9) < 3) return leaf(rng, catalog);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    try {
      auto node = try_node(rng, catalog, depth);
      if (node && small_enough(node->spec)) return std::move(*node);
    } catch (const Error&) {
      // Degenerate or unsupported combination; draw another.
    }
  }
  return leaf(rng, catalog);
}

}  // namespace

engine::ExprPtr random_expression(std::mt19937_64& rng, const link::Catalog& catalog, std::size_t max_depth) {
  return grow(rng, catalog, max_depth).expr;
}

std::vector<link::LinkSpec> catalog_sample(const link::Catalog& catalog) {
  std::vector<LinkSpec> out;
  for (const auto& name : catalog.names()) out.push_back(*catalog.lookup(name));
  for (int p = -7; p <= 7; ++p)
    for (int q = -7; q <= 7; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (int d = 1; d <= 3; ++d) out.push_back(link::torus_link(p, q, d));
    }
  return out;
}

}  // namespace splice::verify
