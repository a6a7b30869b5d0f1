#pragma once

// Link data model: component labels, linking matrix, Conway function and
// optional sublink data, plus the catalog of base links.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splice/symalg.hpp"

namespace splice::link {

using symalg::RatFn;

/// Variable carrying the meridian class of a component: "t_" + label.
std::string variable_for(std::string_view label);
bool is_valid_label(std::string_view label) noexcept;

struct LinkSpec {
  std::string name;
  std::vector<std::string> components;
  /// Symmetric, indexed like `components`; the diagonal is unused and 0.
  std::vector<std::vector<std::int64_t>> lk;
  RatFn conway;
  /// Link with the keyed component removed, when supplied.
  std::map<std::string, std::shared_ptr<const LinkSpec>> sublinks;

  std::size_t size() const noexcept { return components.size(); }
  bool has_component(std::string_view label) const noexcept;
  /// Throws UnknownComponent.
  std::size_t index_of(std::string_view label) const;
  std::int64_t linking(std::string_view a, std::string_view b) const;
  /// lk(label, other) for every other component, in component order.
  std::vector<std::pair<std::string, std::int64_t>> linking_row(std::string_view label) const;
  const LinkSpec* sublink(std::string_view label) const;
};

/// Builds a spec from a sparse list of linking numbers (omitted pairs are 0).
LinkSpec make_spec(std::string name, std::vector<std::string> components,
                   const std::vector<std::tuple<std::string, std::string, std::int64_t>>& links,
                   RatFn conway);

struct Violation {
  enum class Kind {
    InvalidLabel,
    DuplicateComponent,
    MatrixShape,
    Asymmetric,
    NonzeroDiagonal,
    UnknownVariable,
    Symmetry,
    SublinkMismatch,
    SublinkInvalid,
  };
  Kind kind;
  std::string detail;
};

std::string_view violation_name(Violation::Kind kind) noexcept;

/// Empty iff every LinkSpec invariant holds, sublinks included.
std::vector<Violation> validate_linkspec(const LinkSpec& spec);

/// Labels missing from `mapping` keep their names. Throws CollisionError when
/// the renamed labels are not distinct.
LinkSpec relabel(const LinkSpec& spec, const std::map<std::string, std::string>& mapping);

/// Same component set, linking numbers and Conway function. Ignores name,
/// component order and sublinks.
bool equivalent(const LinkSpec& a, const LinkSpec& b);

// Built-in base links.
LinkSpec unknot(const std::string& label = "u");
LinkSpec hopf();
LinkSpec tilde();
LinkSpec unlink2();
/// Components c2, c1, s1..sd. Throws NonCoprime unless gcd(p, q) = 1, and
/// InvalidLinkSpec unless d >= 1.
LinkSpec torus_link(int p, int q, int d);

class Catalog {
 public:
  /// Throws ShadowedName for a repeated name (including torus(...) names) and
  /// InvalidLinkSpec when validation fails.
  void add(LinkSpec spec);
  /// Resolves stored names and the parametric family "torus(p,q,d)".
  std::optional<LinkSpec> lookup(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, LinkSpec, std::less<>> entries_;
};

Catalog builtin_catalog();

/// Parses the line-oriented catalog format and adds every entry to `into`.
/// Sublink references resolve against `into`, including entries defined
/// earlier in the same text. Format errors throw SyntaxError with a line
/// number.
void load_catalog(Catalog& into, std::string_view text);
void load_catalog_file(Catalog& into, const std::string& path);

/// Catalog text for `spec`; sublinks are emitted first as separate entries.
std::string emit_catalog(const LinkSpec& spec);

}  // namespace splice::link
