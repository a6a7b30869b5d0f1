#include <numeric>
#include <set>

#include "splice/spliceengine.hpp"
#include "splice_internal.hpp"

namespace splice::engine {

using link::variable_for;
using symalg::Monomial;

namespace {

LaurentPoly difference_of_inverses(const Monomial& m) {
  return LaurentPoly(m, 1) - LaurentPoly(m.inverse(), 1);
}

std::string fresh(const std::string& want, const std::set<std::string>& taken) {
  std::string candidate = want;
  while (taken.contains(candidate)) candidate += "_";
  return candidate;
}

void check_agreement(const RatFn& via_splice, const RatFn& closed_form, const std::string& what) {
  if (!(via_splice == closed_form))
    throw Error(ErrorKind::VerificationFailure, what + ": splice route gives " + symalg::render(via_splice) +
                                                    " but the closed form gives " + symalg::render(closed_form));
}

Monomial strand_product(const std::vector<std::string>& strands) {
  std::vector<Monomial::Entry> entries;
  for (const auto& s : strands) entries.emplace_back(variable_for(s), 1);
  return Monomial(std::move(entries));
}

// T = prod_{i != comp} t_i^lk(comp, i) * (t_s1 ... t_sd)^q.
Monomial cable_t(const LinkSpec& base, const std::string& comp, int q, const std::vector<std::string>& strands) {
  return linking_monomial(base, comp) * strand_product(strands).pow(q);
}

void check_cable_args(const LinkSpec& base, const std::string& comp, int p, int q, int d) {
  base.index_of(comp);
  if (std::gcd(p, q) != 1)
    throw Error(ErrorKind::NonCoprime, "cable(" + std::to_string(p) + "," + std::to_string(q) + "): not coprime");
  if (d < 1) throw Error(ErrorKind::InvalidLinkSpec, "cable needs d >= 1");
}

struct ConnSumParts {
  LinkSpec right;  // right with colliding survivors renamed
  std::map<std::string, std::string> right_rename;
  std::string x_label;
  std::string y_label;
};

ConnSumParts connsum_parts(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                           const std::string& right_comp) {
  left.index_of(left_comp);
  right.index_of(right_comp);
  std::set<std::string> taken(left.components.begin(), left.components.end());
  taken.insert(right.components.begin(), right.components.end());
  ConnSumParts parts;
  std::map<std::string, std::string> mapping;
  for (const auto& c : right.components) {
    if (c == right_comp) continue;
    std::string to = c;
    if (left.has_component(c)) {
      to = "right_" + c;
      while (taken.contains(to)) to = "right_" + to;
      taken.insert(to);
      mapping[c] = to;
    }
    parts.right_rename[c] = to;
  }
  parts.right = mapping.empty() ? right : link::relabel(right, mapping);
  parts.x_label = fresh("x", taken);
  taken.insert(parts.x_label);
  parts.y_label = fresh("y", taken);
  return parts;
}

}  // namespace

namespace detail {

// Shared by connected_sum() and traced evaluation.
SpliceOutcome connected_sum_outcome(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                                    const std::string& right_comp) {
  ConnSumParts parts = connsum_parts(left, left_comp, right, right_comp);
  const LinkSpec helper =
      link::relabel(link::tilde(), {{"x", parts.x_label}, {"y", parts.y_label}, {"c", left_comp}});
  LinkSpec first = splice_with_renaming(helper, parts.x_label, left, left_comp, true).spec;
  first.name = "tilde";
  SpliceOutcome second = splice_with_renaming(first, parts.y_label, parts.right, right_comp, true);
  SpliceOutcome out;
  out.spec = std::move(second.spec);
  for (const auto& c : left.components)
    if (c != left_comp) out.left_rename[c] = c;
  out.right_rename = parts.right_rename;
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- satellite

LinkSpec satellite(const LinkSpec& companion, const LinkSpec& pattern, const std::string& meridian,
                   const EvalOptions& opts) {
  if (companion.size() != 1)
    throw Error(ErrorKind::InvalidLinkSpec, "satellite companion '" + companion.name + "' is not a knot");
  pattern.index_of(meridian);
  LinkSpec out = detail::splice_with_renaming(companion, companion.components.front(), pattern, meridian, true).spec;
  out.name = "satellite(" + companion.name + "," + pattern.name + "@" + meridian + ")";
  if (opts.verify) {
    if (auto closed = satellite_closed_form(companion, pattern, meridian))
      check_agreement(out.conway, *closed, out.name);
  }
  return out;
}

std::optional<RatFn> satellite_closed_form(const LinkSpec& companion, const LinkSpec& pattern,
                                           const std::string& meridian) {
  if (companion.size() != 1)
    throw Error(ErrorKind::InvalidLinkSpec, "satellite companion '" + companion.name + "' is not a knot");
  const Monomial t = linking_monomial(pattern, meridian);
  std::optional<LinkSpec> core;
  if (const LinkSpec* sub = pattern.sublink(meridian)) {
    core = *sub;
  } else if (!t.empty()) {
    core = torres_remove(pattern, meridian);
  }
  if (!core) return std::nullopt;
  const RatFn omega_k = RatFn(omega(companion));
  return symalg::substitute_monomial(omega_k, "t", t) * core->conway;
}

// -------------------------------------------------------------------- cable

std::vector<std::string> cable_strand_labels(const LinkSpec& base, int d) {
  std::set<std::string> taken(base.components.begin(), base.components.end());
  std::vector<std::string> out;
  for (int i = 1; i <= d; ++i) {
    std::string s = fresh("s" + std::to_string(i), taken);
    taken.insert(s);
    out.push_back(s);
  }
  return out;
}

namespace detail {

SpliceOutcome cable_outcome(const LinkSpec& base, const std::string& comp, int p, int q, int d) {
  check_cable_args(base, comp, p, q, d);
  const auto strands = cable_strand_labels(base, d);
  std::set<std::string> taken(base.components.begin(), base.components.end());
  taken.insert(strands.begin(), strands.end());
  const std::string outer = fresh("c2", taken);
  std::map<std::string, std::string> mapping{{"c2", outer}, {"c1", comp}};
  for (int i = 1; i <= d; ++i) mapping["s" + std::to_string(i)] = strands[static_cast<std::size_t>(i - 1)];
  const LinkSpec torus = link::relabel(link::torus_link(p, q, d), mapping);
  return splice_with_renaming(base, comp, torus, outer, true);
}

}  // namespace detail

LinkSpec cable(const LinkSpec& base, const std::string& comp, int p, int q, int d, const EvalOptions& opts) {
  LinkSpec out = detail::cable_outcome(base, comp, p, q, d).spec;
  out.name = "cable(" + base.name + "@" + comp + "," + std::to_string(p) + "," + std::to_string(q) + "," +
             std::to_string(d) + ")";
  if (opts.verify) check_agreement(out.conway, cable_closed_form(base, comp, p, q, d), out.name);
  return out;
}

LinkSpec cable_remove(const LinkSpec& base, const std::string& comp, int p, int q, int d, const EvalOptions& opts) {
  LinkSpec out = torres_remove(cable(base, comp, p, q, d, opts), comp);
  if (opts.verify)
    check_agreement(out.conway, cable_remove_closed_form(base, comp, p, q, d), out.name);
  return out;
}

RatFn cable_closed_form(const LinkSpec& base, const std::string& comp, int p, int q, int d) {
  check_cable_args(base, comp, p, q, d);
  const auto strands = cable_strand_labels(base, d);
  const Monomial t = cable_t(base, comp, q, strands);
  const Monomial tn = Monomial::variable(variable_for(comp));
  const RatFn factor(difference_of_inverses(tn.pow(q) * t.pow(p)).pow(static_cast<unsigned>(d)));
  return factor * symalg::substitute_monomial(base.conway, variable_for(comp), tn * strand_product(strands).pow(p));
}

RatFn cable_remove_closed_form(const LinkSpec& base, const std::string& comp, int p, int q, int d) {
  check_cable_args(base, comp, p, q, d);
  const auto strands = cable_strand_labels(base, d);
  const Monomial t = cable_t(base, comp, q, strands);
  const LaurentPoly denominator = difference_of_inverses(t);
  if (denominator.is_zero())
    throw Error(ErrorKind::TorresDegenerate, "cable core links nothing after cabling");
  const RatFn factor(difference_of_inverses(t.pow(p)).pow(static_cast<unsigned>(d)), denominator);
  return factor * symalg::substitute_monomial(base.conway, variable_for(comp), strand_product(strands).pow(p));
}

// ------------------------------------------------------------ connected sum

LinkSpec connected_sum(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                       const std::string& right_comp, const EvalOptions& opts) {
  LinkSpec out = detail::connected_sum_outcome(left, left_comp, right, right_comp).spec;
  out.name = "connsum(" + left.name + "@" + left_comp + "," + right.name + "@" + right_comp + ")";
  if (opts.verify)
    check_agreement(out.conway, connected_sum_closed_form(left, left_comp, right, right_comp), out.name);
  return out;
}

RatFn connected_sum_closed_form(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                                const std::string& right_comp) {
  const ConnSumParts parts = connsum_parts(left, left_comp, right, right_comp);
  const Monomial merged = Monomial::variable(variable_for(left_comp));
  const RatFn right_part =
      symalg::substitute_monomial(parts.right.conway, variable_for(right_comp), merged);
  return RatFn(difference_of_inverses(merged)) * left.conway * right_part;
}

}  // namespace splice::engine
