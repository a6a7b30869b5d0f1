#include <algorithm>
#include <numeric>
#include <set>

#include "splice/spliceengine.hpp"
#include "splice_internal.hpp"

namespace splice::engine {

using link::variable_for;
using symalg::Monomial;

namespace {

std::vector<std::string> surviving(const LinkSpec& s, const std::string& comp) {
  std::vector<std::string> out;
  for (const auto& c : s.components)
    if (c != comp) out.push_back(c);
  return out;
}

std::string fresh_label(const std::string& prefix, const std::string& label, std::set<std::string>& taken) {
  std::string candidate = prefix + label;
  while (taken.contains(candidate)) candidate = prefix + candidate;
  taken.insert(candidate);
  return candidate;
}

bool all_zero(const std::vector<std::pair<std::string, std::int64_t>>& row) {
  return std::all_of(row.begin(), row.end(), [](const auto& e) { return e.second == 0; });
}

Monomial monomial_from_row(const std::vector<std::pair<std::string, std::int64_t>>& row) {
  std::vector<Monomial::Entry> entries;
  for (const auto& [label, v] : row) {
    if (v == 0) continue;
    if (v > INT32_MAX || v < INT32_MIN) throw Error(ErrorKind::InvalidLinkSpec, "linking number out of range");
    entries.emplace_back(variable_for(label), static_cast<int>(v));
  }
  return Monomial(std::move(entries));
}

LinkSpec restrict_to(const LinkSpec& s, const std::vector<std::string>& keep) {
  LinkSpec out;
  out.components = keep;
  out.lk.assign(keep.size(), std::vector<std::int64_t>(keep.size(), 0));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (i != j) out.lk[i][j] = s.linking(keep[i], keep[j]);
  return out;
}

// Sublink of `s` without `comp`, if it is registered or recoverable.
std::optional<LinkSpec> known_sublink(const LinkSpec& s, const std::string& comp) {
  if (const LinkSpec* sub = s.sublink(comp)) return *sub;
  if (s.size() >= 2 && !all_zero(s.linking_row(comp))) return torres_remove(s, comp);
  return std::nullopt;
}

}  // namespace

namespace detail {

Renamed rename_for_splice(const LinkSpec& left_in, const std::string& left_comp, const LinkSpec& right_in,
                          const std::string& right_comp) {
  left_in.index_of(left_comp);
  right_in.index_of(right_comp);
  Renamed out;
  std::set<std::string> taken(left_in.components.begin(), left_in.components.end());
  taken.insert(right_in.components.begin(), right_in.components.end());
  const auto left_rest = surviving(left_in, left_comp);
  const auto right_rest = surviving(right_in, right_comp);
  const std::set<std::string> right_set(right_rest.begin(), right_rest.end());
  std::map<std::string, std::string> lmap;
  std::map<std::string, std::string> rmap;
  for (const auto& c : left_rest) {
    if (right_set.contains(c)) {
      lmap[c] = fresh_label("left_", c, taken);
      rmap[c] = fresh_label("right_", c, taken);
    }
  }
  out.left = lmap.empty() ? left_in : link::relabel(left_in, lmap);
  out.right = rmap.empty() ? right_in : link::relabel(right_in, rmap);
  for (const auto& c : left_rest) out.left_rename[c] = lmap.contains(c) ? lmap[c] : c;
  for (const auto& c : right_rest) out.right_rename[c] = rmap.contains(c) ? rmap[c] : c;
  return out;
}

// Components and linking numbers of the splice of two disjointly labeled links.
LinkingMatrix linking_of_disjoint(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                                  const std::string& right_comp) {
  const auto left_rest = surviving(left, left_comp);
  const auto right_rest = surviving(right, right_comp);
  LinkingMatrix out;
  out.components = left_rest;
  out.components.insert(out.components.end(), right_rest.begin(), right_rest.end());
  const std::size_t n = out.components.size();
  const std::size_t m_left = left_rest.size();
  out.lk.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool i_left = i < m_left;
      const bool j_left = j < m_left;
      const std::string& a = out.components[i];
      const std::string& b = out.components[j];
      if (i_left && j_left) {
        out.lk[i][j] = left.linking(a, b);
      } else if (!i_left && !j_left) {
        out.lk[i][j] = right.linking(a, b);
      } else if (i_left) {
        out.lk[i][j] = left.linking(left_comp, a) * right.linking(right_comp, b);
      } else {
        out.lk[i][j] = right.linking(right_comp, a) * left.linking(left_comp, b);
      }
    }
  }
  return out;
}

SpliceOutcome splice_with_renaming(const LinkSpec& left_in, const std::string& left_comp,
                                   const LinkSpec& right_in, const std::string& right_comp,
                                   bool derive_sublinks) {
  Renamed renamed = rename_for_splice(left_in, left_comp, right_in, right_comp);
  SpliceOutcome outcome;
  outcome.left_rename = std::move(renamed.left_rename);
  outcome.right_rename = std::move(renamed.right_rename);
  const LinkSpec& left = renamed.left;
  const LinkSpec& right = renamed.right;

  const auto left_rest = surviving(left, left_comp);
  const auto right_rest = surviving(right, right_comp);
  if (left_rest.empty() && right_rest.empty())
    throw Error(ErrorKind::DegenerateSplice, "splicing two knots leaves no components");

  // The primed side has m remaining components, the other n - m >= 1.
  const bool right_primed = right_rest.empty();
  const LinkSpec& primed = right_primed ? right : left;
  const std::string& primed_comp = right_primed ? right_comp : left_comp;
  const LinkSpec& other = right_primed ? left : right;
  const std::string& other_comp = right_primed ? left_comp : right_comp;

  const auto primed_row = primed.linking_row(primed_comp);
  const auto other_row = other.linking_row(other_comp);

  LinkSpec& result = outcome.spec;
  LinkingMatrix linking = linking_of_disjoint(left, left_comp, right, right_comp);
  result.components = std::move(linking.components);
  result.lk = std::move(linking.lk);
  const std::size_t n = result.components.size();
  const std::size_t m_left = left_rest.size();

  if (primed_row.empty() && all_zero(other_row)) {
    const LinkSpec* sub = other.sublink(other_comp);
    if (!sub)
      throw Error(ErrorKind::MissingSublinkData,
                  "splice along '" + other_comp + "' of '" + other.name +
                      "' needs the sublink without that component, which is not registered");
    result.conway = sub->conway;
    result.sublinks = sub->sublinks;
    return outcome;
  }

  const RatFn primed_part =
      symalg::substitute_monomial(primed.conway, variable_for(primed_comp), monomial_from_row(other_row));
  const RatFn other_part =
      symalg::substitute_monomial(other.conway, variable_for(other_comp), monomial_from_row(primed_row));
  result.conway = primed_part * other_part;

  if (derive_sublinks && n >= 2) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::string& label = result.components[k];
      if (!all_zero(result.linking_row(label))) continue;
      const bool from_left = k < m_left;
      const LinkSpec& side = from_left ? left : right;
      auto side_minus = known_sublink(side, label);
      if (!side_minus) continue;
      try {
        LinkSpec sub = from_left
                           ? splice_with_renaming(*side_minus, left_comp, right, right_comp, true).spec
                           : splice_with_renaming(left, left_comp, *side_minus, right_comp, true).spec;
        // Labels can only differ if the removal undid a collision rename.
        if (sub.size() + 1 == n) {
          std::vector<std::string> expected;
          for (const auto& c : result.components)
            if (c != label) expected.push_back(c);
          std::map<std::string, std::string> fix;
          for (std::size_t i = 0; i < expected.size(); ++i)
            if (sub.components[i] != expected[i]) fix[sub.components[i]] = expected[i];
          if (!fix.empty()) sub = link::relabel(sub, fix);
          sub.name = "(" + label + " removed)";
          result.sublinks.emplace(label, std::make_shared<const LinkSpec>(std::move(sub)));
        }
      } catch (const Error&) {
        // Not derivable; a later exceptional splice will report it.
      }
    }
  }
  return outcome;
}

}  // namespace detail

LinkSpec splice(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                const std::string& right_comp) {
  LinkSpec out = detail::splice_with_renaming(left, left_comp, right, right_comp, true).spec;
  out.name = "splice(" + left.name + "@" + left_comp + "," + right.name + "@" + right_comp + ")";
  return out;
}

LinkingMatrix splice_linking(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                             const std::string& right_comp) {
  const auto renamed = detail::rename_for_splice(left, left_comp, right, right_comp);
  return detail::linking_of_disjoint(renamed.left, left_comp, renamed.right, right_comp);
}

Monomial linking_monomial(const LinkSpec& s, const std::string& comp) {
  return monomial_from_row(s.linking_row(comp));
}

LinkSpec torres_remove(const LinkSpec& s, const std::string& comp) {
  s.index_of(comp);
  if (s.size() < 2) throw Error(ErrorKind::TorresDegenerate, "cannot remove the only component of a knot");
  const auto row = s.linking_row(comp);
  if (all_zero(row))
    throw Error(ErrorKind::TorresDegenerate,
                "component '" + comp + "' of '" + s.name + "' has all linking numbers zero");
  const Monomial t = monomial_from_row(row);
  const RatFn multiplier(LaurentPoly(t, 1) - LaurentPoly(t.inverse(), 1));
  LinkSpec out = restrict_to(s, surviving(s, comp));
  out.name = "torres(" + s.name + "@" + comp + ")";
  out.conway = symalg::specialize_one(s.conway, variable_for(comp)) / multiplier;
  for (const auto& label : out.components) {
    if (out.size() < 2 || !all_zero(out.linking_row(label))) continue;
    const LinkSpec* without_label = s.sublink(label);
    if (!without_label) continue;
    if (auto sub = known_sublink(*without_label, comp))
      out.sublinks.emplace(label, std::make_shared<const LinkSpec>(std::move(*sub)));
  }
  return out;
}

LaurentPoly omega(const LinkSpec& s) {
  const LaurentPoly t = LaurentPoly::variable("t");
  const RatFn value = symalg::diagonal(s.conway, "t") * RatFn(t - LaurentPoly::variable("t", -1));
  if (!value.is_polynomial())
    throw Error(ErrorKind::NotPolynomial,
                "reduced Conway function of '" + s.name + "' is not a Laurent polynomial: " + symalg::render(value));
  return value.numerator();
}

bool verify_symmetry(const LinkSpec& s) {
  const RatFn inverted = symalg::invert_vars(s.conway);
  return inverted == ((s.size() % 2 == 0) ? s.conway : -s.conway);
}

}  // namespace splice::engine
