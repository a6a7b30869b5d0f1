#include <algorithm>
#include <numeric>
#include <sstream>

#include "splice/errors.hpp"
#include "splice/torsion_rational.hpp"
#include "splice/verify.hpp"

namespace splice::verify {

namespace {

using engine::ExprPtr;
using link::LinkSpec;
using symalg::RatFn;

constexpr std::size_t kMaxDepth = 4;

std::string reproduce(const std::string& suite, const SuiteOptions* opts = nullptr, std::size_t trials = 0) {
  std::string cmd = "splicecalc selftest --suite " + suite;
  if (opts) cmd += " --seed " + std::to_string(opts->seed) + " --trials " + std::to_string(trials);
  return cmd;
}

TrialOutcome fail(std::string message) { return {0, std::move(message)}; }

// Runs fixed cases, one trial per case; the seed is unused.
SuiteResult run_cases(const std::string& name, const std::vector<std::function<TrialOutcome()>>& cases,
                      Execution execution = Execution::Serial) {
  SuiteResult r = run_trials(
      name, cases.size(), 0, [&](std::size_t index, std::uint64_t) { return cases[index](); }, execution);
  r.reproduce = reproduce(name);
  return r;
}

ExprPtr expression_for(const link::Catalog& catalog, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_expression(rng, catalog, kMaxDepth);
}

RatFn torres_multiplier(const LinkSpec& s, const std::string& comp) {
  const symalg::Monomial t = engine::linking_monomial(s, comp);
  return RatFn(symalg::LaurentPoly(t, 1) - symalg::LaurentPoly(t.inverse(), 1));
}

bool has_nonzero_linking(const LinkSpec& s, const std::string& comp) {
  const auto row = s.linking_row(comp);
  return std::any_of(row.begin(), row.end(), [](const auto& e) { return e.second != 0; });
}

// The rebuilt expression's result, relabeled through origins to the labels
// of `traced`; nullopt when some origin cannot be matched.
std::optional<LinkSpec> matched_by_origin(const engine::TracedLink& traced, const engine::TracedLink& rebuilt) {
  std::map<std::string, std::string> by_origin;
  for (const auto& [label, origin] : traced.origin) by_origin[origin] = label;
  std::map<std::string, std::string> mapping;
  for (const auto& [label, origin] : rebuilt.origin) {
    auto it = by_origin.find(origin);
    if (it == by_origin.end()) return std::nullopt;
    mapping[label] = it->second;
  }
  return link::relabel(rebuilt.spec, mapping);
}

// Torres identity and, where the deletion can be pushed into a leaf, the
// independently evaluated sublink.
TrialOutcome torres_trial(const ExprPtr& e) {
  const engine::TracedLink traced = engine::eval_traced(*e);
  const LinkSpec& s = traced.spec;
  TrialOutcome out;
  if (s.size() < 2) return out;
  for (const auto& c : s.components) {
    if (!has_nonzero_linking(s, c)) continue;
    const LinkSpec sub = engine::torres_remove(s, c);
    const RatFn lhs = symalg::specialize_one(s.conway, link::variable_for(c));
    if (!(lhs == torres_multiplier(s, c) * sub.conway))
      return fail("Torres identity fails removing " + c + " from " + engine::describe(*e));
    if (!engine::verify_symmetry(sub))
      return fail("sublink without " + c + " of " + engine::describe(*e) + " violates symmetry");
    ++out.checks;

    const auto rebuilt_expr = engine::remove_leaf_component(e, traced.origin.at(c));
    if (!rebuilt_expr) continue;
    std::optional<engine::TracedLink> rebuilt;
    try {
      rebuilt = engine::eval_traced(**rebuilt_expr);
    } catch (const Error&) {
      continue;
    }
    const auto matched = matched_by_origin(traced, *rebuilt);
    if (!matched) continue;
    if (!link::equivalent(*matched, sub))
      return fail("removing " + c + " from " + engine::describe(*e) + " gives " + symalg::render(sub.conway) +
                  " by the Torres formula but " + symalg::render(matched->conway) + " from " +
                  engine::describe(**rebuilt_expr));
    ++out.checks;
  }
  return out;
}

// Checks linking numbers at one splice-type node: cross pairs are products,
// same-side pairs are inherited.
std::optional<std::string> check_splice_linking(const engine::SpliceExpr& node, const engine::SpliceExpr& left,
                                                const std::string& left_comp, const engine::SpliceExpr& right,
                                                const std::string& right_comp, std::size_t& checks) {
  const engine::TracedLink l = engine::eval_traced(left);
  const engine::TracedLink r = engine::eval_traced(right);
  const engine::TracedLink s = engine::eval_traced(node);
  std::map<std::string, std::pair<char, std::string>> source;
  for (const auto& [label, origin] : l.origin) source["l" + origin] = {'l', label};
  for (const auto& [label, origin] : r.origin) source["r" + origin] = {'r', label};
  std::map<std::string, std::pair<char, std::string>> side_of;
  for (const auto& [label, origin] : s.origin) {
    auto it = source.find(origin);
    if (it == source.end()) return "component " + label + " of " + engine::describe(node) + " has no source";
    side_of[label] = it->second;
  }
  for (const auto& x : s.spec.components) {
    for (const auto& y : s.spec.components) {
      if (x >= y) continue;
      const auto& [sx, lx] = side_of.at(x);
      const auto& [sy, ly] = side_of.at(y);
      std::int64_t expected = 0;
      if (sx == sy) {
        expected = (sx == 'l' ? l.spec : r.spec).linking(lx, ly);
      } else {
        const std::string& left_label = sx == 'l' ? lx : ly;
        const std::string& right_label = sx == 'l' ? ly : lx;
        expected = l.spec.linking(left_comp, left_label) * r.spec.linking(right_comp, right_label);
      }
      ++checks;
      if (s.spec.linking(x, y) != expected)
        return "lk(" + x + "," + y + ") = " + std::to_string(s.spec.linking(x, y)) + " in " +
               engine::describe(node) + ", expected " + std::to_string(expected);
    }
  }
  return std::nullopt;
}

std::optional<std::string> walk_linking(const engine::SpliceExpr& e, std::size_t& checks) {
  return std::visit(
      [&](const auto& n) -> std::optional<std::string> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, engine::LeafNode>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<N, engine::SpliceNode>) {
          if (auto f = walk_linking(*n.left, checks)) return f;
          if (auto f = walk_linking(*n.right, checks)) return f;
          return check_splice_linking(e, *n.left, n.left_comp, *n.right, n.right_comp, checks);
        } else if constexpr (std::is_same_v<N, engine::SatelliteNode>) {
          if (auto f = walk_linking(*n.companion, checks)) return f;
          if (auto f = walk_linking(*n.pattern, checks)) return f;
          const LinkSpec k = engine::eval(*n.companion);
          return check_splice_linking(e, *n.companion, k.components.front(), *n.pattern, n.meridian, checks);
        } else if constexpr (std::is_same_v<N, engine::CableNode>) {
          return walk_linking(*n.base, checks);
        } else {
          if (auto f = walk_linking(*n.left, checks)) return f;
          return walk_linking(*n.right, checks);
        }
      },
      e.node);
}

LinkSpec trefoil_from_torus() {
  return engine::torres_remove(engine::torres_remove(link::torus_link(2, 3, 1), "c1"), "c2");
}

torsion::Matrix<torsion::Rational> random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> entry(-3, 3);
  while (true) {
    torsion::Matrix<torsion::Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
    if (!torsion::is_zero(torsion::determinant(m))) return m;
  }
}

}  // namespace

SuiteResult hopf_neutrality(const link::Catalog& catalog) {
  std::vector<std::function<TrialOutcome()>> cases;
  for (const LinkSpec& x : catalog_sample(catalog)) {
    for (const auto& c : x.components) {
      cases.emplace_back([x, c] {
        const std::string spliced = c == "a" ? "h" : "a";
        const LinkSpec h = link::relabel(link::hopf(), {{"a", spliced}, {"b", c}});
        const ExprPtr e = engine::make_splice(engine::make_leaf(h), spliced, engine::make_leaf(x), c);
        const LinkSpec s = engine::eval(*e);
        if (!link::equivalent(s, x))
          return fail(engine::describe(*e) + " gives " + symalg::render(s.conway) + ", not " + x.name);
        return TrialOutcome{1, std::nullopt};
      });
    }
  }
  return run_cases("hopf-neutrality", cases, Execution::Parallel);
}

SuiteResult symmetry_suite(const link::Catalog& catalog, const SuiteOptions& opts) {
  SuiteResult r = run_trials(
      "symmetry", opts.expressions, opts.seed,
      [&](std::size_t, std::uint64_t seed) -> TrialOutcome {
        const ExprPtr e = expression_for(catalog, seed);
        const LinkSpec s = engine::eval(*e);
        if (!engine::verify_symmetry(s)) return fail("symmetry fails for " + engine::describe(*e));
        if (auto v = link::validate_linkspec(s); !v.empty())
          return fail(std::string(link::violation_name(v.front().kind)) + " in " + engine::describe(*e) + ": " +
                      v.front().detail);
        return {1, std::nullopt};
      },
      opts.execution);
  r.reproduce = reproduce(r.name, &opts, r.trials);
  return r;
}

SuiteResult torres_suite(const link::Catalog& catalog, const SuiteOptions& opts) {
  SuiteResult r = run_trials(
      "torres", opts.expressions, opts.seed,
      [&](std::size_t, std::uint64_t seed) { return torres_trial(expression_for(catalog, seed)); }, opts.execution);
  r.reproduce = reproduce(r.name, &opts, r.trials);
  return r;
}

SuiteResult linking_suite(const link::Catalog& catalog, const SuiteOptions& opts) {
  SuiteResult r = run_trials(
      "linking", opts.expressions, opts.seed,
      [&](std::size_t, std::uint64_t seed) -> TrialOutcome {
        TrialOutcome out;
        if (auto f = walk_linking(*expression_for(catalog, seed), out.checks)) out.failure = *f;
        return out;
      },
      opts.execution);
  r.reproduce = reproduce(r.name, &opts, r.trials);
  return r;
}

SuiteResult cable_oracle() {
  std::vector<std::function<TrialOutcome()>> cases;
  const std::vector<std::pair<int, int>> params = {{2, 1}, {3, 2}, {5, -2}};
  for (const LinkSpec& base : {link::unknot(), link::tilde(), link::hopf()}) {
    for (const auto& comp : base.components) {
      for (const auto& [p, q] : params) {
        for (int d = 1; d <= 3; ++d) {
          cases.emplace_back([base, comp, p, q, d] {
            const std::string what = "cable(" + base.name + "@" + comp + ", " + std::to_string(p) + ", " +
                                     std::to_string(q) + ", " + std::to_string(d) + ")";
            const LinkSpec c = engine::cable(base, comp, p, q, d);
            if (!(c.conway == engine::cable_closed_form(base, comp, p, q, d)))
              return fail(what + ": splice route and closed form differ");
            if (!engine::verify_symmetry(c)) return fail(what + " violates symmetry");
            const LinkSpec removed = engine::cable_remove(base, comp, p, q, d);
            if (!(removed.conway == engine::cable_remove_closed_form(base, comp, p, q, d)))
              return fail(what + " with the core removed: splice route and closed form differ");
            return TrialOutcome{2, std::nullopt};
          });
        }
      }
    }
  }
  cases.emplace_back([] {
    const LinkSpec doubled = engine::cable_remove(link::unknot(), "u", 2, 1, 1);
    if (!(doubled.conway == symalg::parse_rational("1/(t_s1 - t_s1^-1)")))
      return fail("the (2,1)-cable of the unknot has Conway function " + symalg::render(doubled.conway));
    return TrialOutcome{1, std::nullopt};
  });
  return run_cases("cable-oracle", cases, Execution::Parallel);
}

SuiteResult connected_sum_oracle(const link::Catalog& catalog) {
  std::vector<LinkSpec> pool;
  for (const auto& name : catalog.names()) pool.push_back(*catalog.lookup(name));
  for (const char* name : {"torus(2,1,1)", "torus(3,2,1)", "torus(2,-3,2)"}) pool.push_back(*catalog.lookup(name));
  std::vector<std::function<TrialOutcome()>> cases;
  for (const LinkSpec& l : pool)
    for (const LinkSpec& r : pool)
      for (const auto& lc : l.components)
        for (const auto& rc : r.components)
          cases.emplace_back([l, r, lc, rc] {
            const LinkSpec s = engine::connected_sum(l, lc, r, rc);
            if (!(s.conway == engine::connected_sum_closed_form(l, lc, r, rc)))
              return fail("connsum(" + l.name + "@" + lc + ", " + r.name + "@" + rc +
                          "): double splice and closed form differ");
            return TrialOutcome{1, std::nullopt};
          });
  return run_cases("connsum-oracle", cases, Execution::Parallel);
}

SuiteResult exceptional_branch() {
  auto expect_sublink = [](const LinkSpec& knot, const std::string& knot_comp, const LinkSpec& other,
                           const std::string& comp, bool knot_left) {
    return [=]() -> TrialOutcome {
      const LinkSpec s = knot_left ? engine::splice(knot, knot_comp, other, comp)
                                   : engine::splice(other, comp, knot, knot_comp);
      const LinkSpec* expected = other.sublink(comp);
      if (!expected) return fail(other.name + " has no sublink at " + comp);
      if (!link::equivalent(s, *expected))
        return fail("splicing " + knot.name + " with " + other.name + "@" + comp + " gives " +
                    symalg::render(s.conway) + ", not the registered sublink");
      return {1, std::nullopt};
    };
  };
  auto expect_missing = [](const LinkSpec& other, const std::string& comp) {
    return [=]() -> TrialOutcome {
      LinkSpec stripped = other;
      stripped.sublinks.clear();
      try {
        engine::splice(link::unknot(), "u", stripped, comp);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::MissingSublinkData) return {1, std::nullopt};
        return fail(std::string("expected MissingSublinkData, got ") + std::string(e.name()));
      }
      return fail("splicing the unknot with stripped " + other.name + "@" + comp + " did not fail");
    };
  };

  link::Catalog with_split = link::builtin_catalog();
  link::load_catalog(with_split, R"(link hopf_split
components a b c
lk a b 1
conway 0
sublink c hopf
end
)");
  const LinkSpec split = *with_split.lookup("hopf_split");
  const LinkSpec trefoil = trefoil_from_torus();

  std::vector<std::function<TrialOutcome()>> cases = {
      expect_sublink(link::unknot(), "u", link::unlink2(), "a", true),
      expect_sublink(link::unknot(), "u", link::unlink2(), "b", false),
      expect_sublink(trefoil, "s1", link::unlink2(), "a", true),
      expect_sublink(link::unknot(), "u", split, "c", true),
      expect_missing(link::unlink2(), "a"),
      expect_missing(split, "c"),
      [] {
        // Nonzero linking keeps the regular branch even without sublink data.
        LinkSpec t = link::tilde();
        t.sublinks.clear();
        const LinkSpec s = engine::splice(link::unknot(), "u", t, "c");
        if (!s.conway.is_zero()) return fail("splice(unknot@u, tilde@c) should be 0");
        return TrialOutcome{1, std::nullopt};
      },
  };
  return run_cases("exceptional-branch", cases);
}

SuiteResult torsion_multiplicativity(const SuiteOptions& opts) {
  SuiteResult r = run_trials(
      "torsion-multiplicativity", opts.witnesses, opts.seed,
      [](std::size_t, std::uint64_t seed) -> TrialOutcome {
        std::mt19937_64 rng(seed);
        const auto w = torsion::random_witness(rng);
        const auto report = torsion::multiplicativity_check(w);
        if (!report.holds)
          return fail("left side " + torsion::render(report.lhs) + " but right side " + torsion::render(report.rhs));
        return {1, std::nullopt};
      },
      opts.execution);
  r.reproduce = reproduce(r.name, &opts, r.trials);
  return r;
}

SuiteResult torsion_choice_independence(const SuiteOptions& opts) {
  SuiteResult r = run_trials(
      "torsion-choices", opts.complexes, opts.seed,
      [](std::size_t, std::uint64_t seed) -> TrialOutcome {
        std::mt19937_64 rng(seed);
        const auto c = torsion::random_complex(rng);
        const torsion::Rational tau = torsion::torsion(c);
        TrialOutcome out;
        for (int k = 0; k < 3; ++k) {
          const torsion::Rational other = torsion::torsion_with_choices(c, torsion::random_choices(rng, c));
          if (other != tau)
            return fail("torsion " + torsion::render(tau) + " changes to " + torsion::render(other) +
                        " under other choices");
          ++out.checks;
        }
        for (std::size_t i = 0; i < c.dims.size(); ++i) {
          if (c.dims[i] == 0) continue;
          const auto m = random_invertible(rng, c.dims[i]);
          const torsion::Rational det = torsion::determinant(m);
          const torsion::Rational expected = i % 2 == 0 ? torsion::Rational(tau * det) : torsion::Rational(tau / det);
          const torsion::Rational got = torsion::torsion(torsion::rebase(c, i, m));
          if (got != expected)
            return fail("rebasing degree " + std::to_string(i) + " gives " + torsion::render(got) + ", expected " +
                        torsion::render(expected));
          ++out.checks;
        }
        return out;
      },
      opts.execution);
  r.reproduce = reproduce(r.name, &opts, r.trials);
  return r;
}

SuiteResult omega_sanity() {
  auto expect = [](const LinkSpec& s, const char* value) {
    return [s, value]() -> TrialOutcome {
      const symalg::LaurentPoly got = engine::omega(s);
      if (!(RatFn(got) == symalg::parse_rational(value)))
        return fail("omega(" + s.name + ") = " + symalg::render(got) + ", expected " + value);
      return {1, std::nullopt};
    };
  };
  return run_cases("omega", {
                                expect(link::unknot(), "1"),
                                expect(link::hopf(), "t - t^-1"),
                                expect(link::tilde(), "(t - t^-1)^2"),
                                expect(trefoil_from_torus(), "t^2 - 1 + t^-2"),
                            });
}

std::vector<std::string> suite_names() {
  return {"hopf-neutrality",    "symmetry", "torres",       "cable-oracle",     "connsum-oracle",
          "exceptional-branch", "linking",  "torsion-multiplicativity", "torsion-choices", "omega"};
}

std::optional<SuiteResult> run_suite(const std::string& name, const link::Catalog& catalog,
                                     const SuiteOptions& opts) {
  if (name == "hopf-neutrality") return hopf_neutrality(catalog);
  if (name == "symmetry") return symmetry_suite(catalog, opts);
  if (name == "torres") return torres_suite(catalog, opts);
  if (name == "cable-oracle") return cable_oracle();
  if (name == "connsum-oracle") return connected_sum_oracle(catalog);
  if (name == "exceptional-branch") return exceptional_branch();
  if (name == "linking") return linking_suite(catalog, opts);
  if (name == "torsion-multiplicativity") return torsion_multiplicativity(opts);
  if (name == "torsion-choices") return torsion_choice_independence(opts);
  if (name == "omega") return omega_sanity();
  return std::nullopt;
}

std::vector<SuiteResult> run_all(const link::Catalog& catalog, const SuiteOptions& opts) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(*run_suite(name, catalog, opts));
  return out;
}

}  // namespace splice::verify
