#pragma once

// Conway functions and linking matrices of links built by splicing.
//
// Production evaluation uses only the splice formula. The closed forms for
// satellites, cables and connected sums are independent routes that run when
// EvalOptions::verify is set and throw VerificationFailure on disagreement.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splice/linkcore.hpp"

namespace splice::engine {

using link::LinkSpec;
using symalg::LaurentPoly;
using symalg::RatFn;

struct SpliceExpr;
using ExprPtr = std::shared_ptr<const SpliceExpr>;

struct LeafNode {
  LinkSpec spec;
};
struct SpliceNode {
  ExprPtr left;
  std::string left_comp;
  ExprPtr right;
  std::string right_comp;
};
struct CableNode {
  ExprPtr base;
  std::string comp;
  int p;
  int q;
  int d;
};
struct ConnSumNode {
  ExprPtr left;
  std::string left_comp;
  ExprPtr right;
  std::string right_comp;
};
struct SatelliteNode {
  ExprPtr companion;
  ExprPtr pattern;
  std::string meridian;
};

struct SpliceExpr {
  std::variant<LeafNode, SpliceNode, CableNode, ConnSumNode, SatelliteNode> node;
};

ExprPtr make_leaf(LinkSpec spec);
ExprPtr make_splice(ExprPtr left, std::string left_comp, ExprPtr right, std::string right_comp);
ExprPtr make_cable(ExprPtr base, std::string comp, int p, int q, int d);
ExprPtr make_connsum(ExprPtr left, std::string left_comp, ExprPtr right, std::string right_comp);
ExprPtr make_satellite(ExprPtr companion, ExprPtr pattern, std::string meridian);

/// DSL text of the expression; leaves print their link name.
std::string describe(const SpliceExpr& e);
std::size_t depth(const SpliceExpr& e);

struct EvalOptions {
  bool verify = false;
};

struct LinkingMatrix {
  std::vector<std::string> components;
  std::vector<std::vector<std::int64_t>> lk;
};

/// Splice of `left` and `right` along the named components.
///
/// Surviving labels that occur on both sides are renamed to left_<label> and
/// right_<label>. A side whose only component is the spliced one takes the
/// m = 0 role; otherwise the left side is primed. When the bare side meets a
/// component with all linking numbers zero, the result is the registered
/// sublink of the other side (MissingSublinkData if there is none).
LinkSpec splice(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                const std::string& right_comp);

/// Linking matrix of the splice, with the same label renaming as splice().
LinkingMatrix splice_linking(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                             const std::string& right_comp);

/// The monomial prod t_i^lk(comp, i) over the other components.
symalg::Monomial linking_monomial(const LinkSpec& s, const std::string& comp);

/// Sublink with `comp` deleted, via the Torres formula.
LinkSpec torres_remove(const LinkSpec& s, const std::string& comp);

/// (t - t^-1) * conway(t, ..., t) in the variable "t".
LaurentPoly omega(const LinkSpec& s);

bool verify_symmetry(const LinkSpec& s);

LinkSpec satellite(const LinkSpec& companion, const LinkSpec& pattern, const std::string& meridian,
                   const EvalOptions& opts = {});
/// Omega_K(prod t_i^l_i) * conway(f(L)); nullopt when f(L) is not available.
std::optional<RatFn> satellite_closed_form(const LinkSpec& companion, const LinkSpec& pattern,
                                           const std::string& meridian);

/// Labels used for the d cable strands added to `base`.
std::vector<std::string> cable_strand_labels(const LinkSpec& base, int d);

/// Adds d parallel (p, q)-cables of `comp`; `comp` survives as the cable core.
LinkSpec cable(const LinkSpec& base, const std::string& comp, int p, int q, int d, const EvalOptions& opts = {});
/// cable() followed by removal of `comp`.
LinkSpec cable_remove(const LinkSpec& base, const std::string& comp, int p, int q, int d,
                      const EvalOptions& opts = {});
RatFn cable_closed_form(const LinkSpec& base, const std::string& comp, int p, int q, int d);
RatFn cable_remove_closed_form(const LinkSpec& base, const std::string& comp, int p, int q, int d);

/// Connected sum along the named components. The merged component is named
/// `left_comp`; surviving right labels that collide are renamed right_<label>.
LinkSpec connected_sum(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                       const std::string& right_comp, const EvalOptions& opts = {});
RatFn connected_sum_closed_form(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                                const std::string& right_comp);

LinkSpec eval(const SpliceExpr& e, const EvalOptions& opts = {});

/// Result plus, for every result label, a key naming where the component
/// came from: "<path>:<label>" for leaf components (path letters l/r from the
/// root), "<path>:cable:<strand>" and "<path>:connsum:merged" for components made by
/// those nodes.
struct TracedLink {
  LinkSpec spec;
  std::map<std::string, std::string> origin;
};
TracedLink eval_traced(const SpliceExpr& e, const EvalOptions& opts = {});

/// Rebuilds `e` with the leaf component named by `origin` deleted (using the
/// leaf's registered sublink or the Torres formula). nullopt when the origin
/// is not a leaf component or the deletion is not available.
std::optional<ExprPtr> remove_leaf_component(const ExprPtr& e, const std::string& origin);

}  // namespace splice::engine
