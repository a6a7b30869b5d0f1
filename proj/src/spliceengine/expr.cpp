#include <algorithm>

#include "splice/spliceengine.hpp"
#include "splice_internal.hpp"

namespace splice::engine {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_agreement(const RatFn& via_splice, const RatFn& closed_form, const std::string& what) {
  if (!(via_splice == closed_form))
    throw Error(ErrorKind::VerificationFailure, what + ": splice route gives " + symalg::render(via_splice) +
                                                    " but the closed form gives " + symalg::render(closed_form));
}

void carry_origins(const std::map<std::string, std::string>& rename, const std::map<std::string, std::string>& from,
                   std::map<std::string, std::string>& into) {
  for (const auto& [old_label, new_label] : rename) into[new_label] = from.at(old_label);
}

TracedLink eval_at(const SpliceExpr& e, const EvalOptions& opts, const std::string& path) {
  return std::visit(
      Overloaded{
          [&](const LeafNode& n) {
            TracedLink out{n.spec, {}};
            for (const auto& c : n.spec.components) out.origin[c] = path + ":" + c;
            return out;
          },
          [&](const SpliceNode& n) {
            TracedLink l = eval_at(*n.left, opts, path + "l");
            TracedLink r = eval_at(*n.right, opts, path + "r");
            auto outcome = detail::splice_with_renaming(l.spec, n.left_comp, r.spec, n.right_comp, true);
            TracedLink out{std::move(outcome.spec), {}};
            std::map<std::string, std::string> origin;
            carry_origins(outcome.left_rename, l.origin, origin);
            carry_origins(outcome.right_rename, r.origin, origin);
            // The exceptional branch keeps only one side.
            for (const auto& c : out.spec.components) out.origin[c] = origin.at(c);
            return out;
          },
          [&](const CableNode& n) {
            TracedLink b = eval_at(*n.base, opts, path + "l");
            auto outcome = detail::cable_outcome(b.spec, n.comp, n.p, n.q, n.d);
            TracedLink out{std::move(outcome.spec), {}};
            const auto strands = cable_strand_labels(b.spec, n.d);
            for (const auto& c : out.spec.components) {
              if (c == n.comp) {
                out.origin[c] = path + ":cable:core";
              } else if (std::find(strands.begin(), strands.end(), c) != strands.end()) {
                out.origin[c] = path + ":cable:" + c;
              } else {
                out.origin[c] = b.origin.at(c);
              }
            }
            if (opts.verify)
              check_agreement(out.spec.conway, cable_closed_form(b.spec, n.comp, n.p, n.q, n.d), describe(e));
            return out;
          },
          [&](const ConnSumNode& n) {
            TracedLink l = eval_at(*n.left, opts, path + "l");
            TracedLink r = eval_at(*n.right, opts, path + "r");
            auto outcome = detail::connected_sum_outcome(l.spec, n.left_comp, r.spec, n.right_comp);
            TracedLink out{std::move(outcome.spec), {}};
            carry_origins(outcome.left_rename, l.origin, out.origin);
            carry_origins(outcome.right_rename, r.origin, out.origin);
            out.origin[n.left_comp] = path + ":connsum:merged";
            if (opts.verify)
              check_agreement(out.spec.conway,
                              connected_sum_closed_form(l.spec, n.left_comp, r.spec, n.right_comp), describe(e));
            return out;
          },
          [&](const SatelliteNode& n) {
            TracedLink c = eval_at(*n.companion, opts, path + "l");
            TracedLink p = eval_at(*n.pattern, opts, path + "r");
            if (c.spec.size() != 1)
              throw Error(ErrorKind::InvalidLinkSpec, "satellite companion '" + describe(*n.companion) +
                                                          "' is not a knot");
            auto outcome =
                detail::splice_with_renaming(c.spec, c.spec.components.front(), p.spec, n.meridian, true);
            TracedLink out{std::move(outcome.spec), {}};
            carry_origins(outcome.right_rename, p.origin, out.origin);
            if (opts.verify) {
              if (auto closed = satellite_closed_form(c.spec, p.spec, n.meridian))
                check_agreement(out.spec.conway, *closed, describe(e));
            }
            return out;
          },
      },
      e.node);
}

std::optional<ExprPtr> remove_at(const ExprPtr& e, std::string_view path, const std::string& label) {
  auto descend = [&](const ExprPtr& child) { return remove_at(child, path.substr(1), label); };
  return std::visit(
      Overloaded{
          [&](const LeafNode& n) -> std::optional<ExprPtr> {
            if (!path.empty() || !n.spec.has_component(label) || n.spec.size() < 2) return std::nullopt;
            LinkSpec sub;
            if (const LinkSpec* registered = n.spec.sublink(label)) {
              sub = *registered;
            } else if (!linking_monomial(n.spec, label).empty()) {
              sub = torres_remove(n.spec, label);
            } else {
              return std::nullopt;
            }
            sub.name = n.spec.name + "-" + label;
            return make_leaf(std::move(sub));
          },
          [&](const SpliceNode& n) -> std::optional<ExprPtr> {
            if (path.empty()) return std::nullopt;
            if (path[0] == 'l') {
              auto child = descend(n.left);
              if (!child) return std::nullopt;
              return make_splice(*child, n.left_comp, n.right, n.right_comp);
            }
            auto child = descend(n.right);
            if (!child) return std::nullopt;
            return make_splice(n.left, n.left_comp, *child, n.right_comp);
          },
          [&](const CableNode& n) -> std::optional<ExprPtr> {
            if (path.empty() || path[0] != 'l') return std::nullopt;
            auto child = descend(n.base);
            if (!child) return std::nullopt;
            return make_cable(*child, n.comp, n.p, n.q, n.d);
          },
          [&](const ConnSumNode& n) -> std::optional<ExprPtr> {
            if (path.empty()) return std::nullopt;
            if (path[0] == 'l') {
              auto child = descend(n.left);
              if (!child) return std::nullopt;
              return make_connsum(*child, n.left_comp, n.right, n.right_comp);
            }
            auto child = descend(n.right);
            if (!child) return std::nullopt;
            return make_connsum(n.left, n.left_comp, *child, n.right_comp);
          },
          [&](const SatelliteNode& n) -> std::optional<ExprPtr> {
            if (path.empty()) return std::nullopt;
            if (path[0] == 'l') return std::nullopt;
            auto child = descend(n.pattern);
            if (!child) return std::nullopt;
            return make_satellite(n.companion, *child, n.meridian);
          },
      },
      e->node);
}

}  // namespace

ExprPtr make_leaf(LinkSpec spec) { return std::make_shared<const SpliceExpr>(SpliceExpr{LeafNode{std::move(spec)}}); }

ExprPtr make_splice(ExprPtr left, std::string left_comp, ExprPtr right, std::string right_comp) {
  return std::make_shared<const SpliceExpr>(
      SpliceExpr{SpliceNode{std::move(left), std::move(left_comp), std::move(right), std::move(right_comp)}});
}

ExprPtr make_cable(ExprPtr base, std::string comp, int p, int q, int d) {
  return std::make_shared<const SpliceExpr>(SpliceExpr{CableNode{std::move(base), std::move(comp), p, q, d}});
}

ExprPtr make_connsum(ExprPtr left, std::string left_comp, ExprPtr right, std::string right_comp) {
  return std::make_shared<const SpliceExpr>(
      SpliceExpr{ConnSumNode{std::move(left), std::move(left_comp), std::move(right), std::move(right_comp)}});
}

ExprPtr make_satellite(ExprPtr companion, ExprPtr pattern, std::string meridian) {
  return std::make_shared<const SpliceExpr>(
      SpliceExpr{SatelliteNode{std::move(companion), std::move(pattern), std::move(meridian)}});
}

std::string describe(const SpliceExpr& e) {
  return std::visit(
      Overloaded{
          [](const LeafNode& n) { return n.spec.name; },
          [](const SpliceNode& n) {
            return "splice(" + describe(*n.left) + "@" + n.left_comp + ", " + describe(*n.right) + "@" +
                   n.right_comp + ")";
          },
          [](const CableNode& n) {
            return "cable(" + describe(*n.base) + "@" + n.comp + ", " + std::to_string(n.p) + ", " +
                   std::to_string(n.q) + ", " + std::to_string(n.d) + ")";
          },
          [](const ConnSumNode& n) {
            return "connsum(" + describe(*n.left) + "@" + n.left_comp + ", " + describe(*n.right) + "@" +
                   n.right_comp + ")";
          },
          [](const SatelliteNode& n) {
            return "satellite(" + describe(*n.companion) + ", " + describe(*n.pattern) + "@" + n.meridian + ")";
          },
      },
      e.node);
}

std::size_t depth(const SpliceExpr& e) {
  return std::visit(Overloaded{
                        [](const LeafNode&) -> std::size_t { return 0; },
                        [](const SpliceNode& n) { return 1 + std::max(depth(*n.left), depth(*n.right)); },
                        [](const CableNode& n) { return 1 + depth(*n.base); },
                        [](const ConnSumNode& n) { return 1 + std::max(depth(*n.left), depth(*n.right)); },
                        [](const SatelliteNode& n) { return 1 + std::max(depth(*n.companion), depth(*n.pattern)); },
                    },
                    e.node);
}

TracedLink eval_traced(const SpliceExpr& e, const EvalOptions& opts) {
  TracedLink out = eval_at(e, opts, "");
  out.spec.name = describe(e);
  return out;
}

LinkSpec eval(const SpliceExpr& e, const EvalOptions& opts) { return eval_traced(e, opts).spec; }

std::optional<ExprPtr> remove_leaf_component(const ExprPtr& e, const std::string& origin) {
  const auto colon = origin.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string_view path(origin.data(), colon);
  const std::string label = origin.substr(colon + 1);
  if (label.find(':') != std::string::npos || label.empty()) return std::nullopt;
  try {
    return remove_at(e, path, label);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace splice::engine
