#include <algorithm>
#include <numeric>
#include <set>

#include "splice/linkcore.hpp"

namespace splice::link {

std::string variable_for(std::string_view label) { return "t_" + std::string(label); }

bool is_valid_label(std::string_view label) noexcept {
  return symalg::is_valid_variable_name(label);
}

bool LinkSpec::has_component(std::string_view label) const noexcept {
  return std::find(components.begin(), components.end(), label) != components.end();
}

std::size_t LinkSpec::index_of(std::string_view label) const {
  auto it = std::find(components.begin(), components.end(), label);
  if (it == components.end())
    throw Error(ErrorKind::UnknownComponent,
                "link '" + name + "' has no component '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - components.begin());
}

std::int64_t LinkSpec::linking(std::string_view a, std::string_view b) const {
  return lk[index_of(a)][index_of(b)];
}

std::vector<std::pair<std::string, std::int64_t>> LinkSpec::linking_row(std::string_view label) const {
  const std::size_t i = index_of(label);
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (std::size_t j = 0; j < components.size(); ++j)
    if (j != i) out.emplace_back(components[j], lk[i][j]);
  return out;
}

const LinkSpec* LinkSpec::sublink(std::string_view label) const {
  auto it = sublinks.find(std::string(label));
  return it == sublinks.end() ? nullptr : it->second.get();
}

LinkSpec make_spec(std::string name, std::vector<std::string> components,
                   const std::vector<std::tuple<std::string, std::string, std::int64_t>>& links,
                   RatFn conway) {
  LinkSpec spec;
  spec.name = std::move(name);
  spec.components = std::move(components);
  const std::size_t n = spec.components.size();
  spec.lk.assign(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [a, b, v] : links) {
    const std::size_t i = spec.index_of(a);
    const std::size_t j = spec.index_of(b);
    spec.lk[i][j] = v;
    spec.lk[j][i] = v;
  }
  spec.conway = std::move(conway);
  return spec;
}

std::string_view violation_name(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::InvalidLabel: return "invalid-label";
    case Violation::Kind::DuplicateComponent: return "duplicate-component";
    case Violation::Kind::MatrixShape: return "matrix-shape";
    case Violation::Kind::Asymmetric: return "asymmetric-linking";
    case Violation::Kind::NonzeroDiagonal: return "nonzero-diagonal";
    case Violation::Kind::UnknownVariable: return "unknown-variable";
    case Violation::Kind::Symmetry: return "symmetry";
    case Violation::Kind::SublinkMismatch: return "sublink-mismatch";
    case Violation::Kind::SublinkInvalid: return "sublink-invalid";
  }
  return "unknown";
}

std::vector<Violation> validate_linkspec(const LinkSpec& spec) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t n = spec.components.size();

  std::set<std::string> seen;
  for (const auto& c : spec.components) {
    if (!is_valid_label(c)) out.push_back({K::InvalidLabel, "component '" + c + "'"});
    if (!seen.insert(c).second) out.push_back({K::DuplicateComponent, "component '" + c + "'"});
  }

  bool shape_ok = spec.lk.size() == n;
  for (const auto& row : spec.lk) shape_ok = shape_ok && row.size() == n;
  if (!shape_ok) {
    out.push_back({K::MatrixShape, "linking matrix is not " + std::to_string(n) + "x" + std::to_string(n)});
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (spec.lk[i][i] != 0) out.push_back({K::NonzeroDiagonal, "component '" + spec.components[i] + "'"});
      for (std::size_t j = i + 1; j < n; ++j) {
        if (spec.lk[i][j] != spec.lk[j][i])
          out.push_back({K::Asymmetric, "components '" + spec.components[i] + "' and '" + spec.components[j] + "'"});
      }
    }
  }

  std::set<std::string> allowed;
  for (const auto& c : spec.components) allowed.insert(variable_for(c));
  bool variables_ok = true;
  for (const auto& v : spec.conway.variables()) {
    if (!allowed.contains(v)) {
      variables_ok = false;
      out.push_back({K::UnknownVariable, "variable '" + v + "' names no component"});
    }
  }

  if (variables_ok) {
    const RatFn inverted = symalg::invert_vars(spec.conway);
    const RatFn expected = (n % 2 == 0) ? spec.conway : -spec.conway;
    if (!(inverted == expected))
      out.push_back({K::Symmetry, "conway function is not (-1)^" + std::to_string(n) + "-symmetric"});
  }

  for (const auto& [label, sub] : spec.sublinks) {
    if (!sub) {
      out.push_back({K::SublinkMismatch, "sublink at '" + label + "' is empty"});
      continue;
    }
    std::set<std::string> expected(spec.components.begin(), spec.components.end());
    if (expected.erase(label) == 0) {
      out.push_back({K::SublinkMismatch, "sublink key '" + label + "' is not a component"});
      continue;
    }
    std::set<std::string> actual(sub->components.begin(), sub->components.end());
    if (actual != expected || actual.size() != sub->components.size()) {
      out.push_back({K::SublinkMismatch, "sublink at '" + label + "' has the wrong components"});
      continue;
    }
    for (const auto& v : validate_linkspec(*sub))
      out.push_back({K::SublinkInvalid, "sublink at '" + label + "': " + std::string(violation_name(v.kind)) + " " + v.detail});
  }
  return out;
}

LinkSpec relabel(const LinkSpec& spec, const std::map<std::string, std::string>& mapping) {
  auto rename = [&](const std::string& label) {
    auto it = mapping.find(label);
    return it == mapping.end() ? label : it->second;
  };
  LinkSpec out;
  out.name = spec.name;
  out.lk = spec.lk;
  std::set<std::string> used;
  std::map<std::string, symalg::Monomial> images;
  for (const auto& c : spec.components) {
    std::string to = rename(c);
    if (!is_valid_label(to)) throw Error(ErrorKind::CollisionError, "invalid label '" + to + "'");
    if (!used.insert(to).second)
      throw Error(ErrorKind::CollisionError, "relabeling maps two components to '" + to + "'");
    if (to != c) images.emplace(variable_for(c), symalg::Monomial::variable(variable_for(to)));
    out.components.push_back(std::move(to));
  }
  out.conway = images.empty() ? spec.conway : symalg::substitute(spec.conway, images);
  for (const auto& [label, sub] : spec.sublinks) {
    std::map<std::string, std::string> restricted;
    for (const auto& c : sub->components) restricted[c] = rename(c);
    out.sublinks.emplace(rename(label), std::make_shared<const LinkSpec>(relabel(*sub, restricted)));
  }
  return out;
}

bool equivalent(const LinkSpec& a, const LinkSpec& b) {
  if (a.components.size() != b.components.size()) return false;
  for (const auto& c : a.components)
    if (!b.has_component(c)) return false;
  for (const auto& x : a.components)
    for (const auto& y : a.components)
      if (x != y && a.linking(x, y) != b.linking(x, y)) return false;
  return a.conway == b.conway;
}

}  // namespace splice::link
