#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "splice/linkcore.hpp"

namespace splice::link {

using symalg::LaurentPoly;
using symalg::Monomial;

namespace {

// t - t^-1 for the monomial t = m.
LaurentPoly difference_of_inverses(const Monomial& m) {
  return LaurentPoly(m, 1) - LaurentPoly(m.inverse(), 1);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Parses "torus(p,q,d)" with optional spaces.
std::optional<std::array<int, 3>> parse_torus_name(std::string_view name) {
  std::string compact;
  for (char c : name)
    if (c != ' ') compact += c;
  constexpr std::string_view head = "torus(";
  if (!compact.starts_with(head) || !compact.ends_with(")")) return std::nullopt;
  std::string body = compact.substr(head.size(), compact.size() - head.size() - 1);
  std::array<int, 3> v{};
  std::istringstream in(body);
  char c1 = 0;
  char c2 = 0;
  if (!(in >> v[0] >> c1 >> v[1] >> c2 >> v[2]) || c1 != ',' || c2 != ',') return std::nullopt;
  in >> std::ws;
  if (!in.eof()) return std::nullopt;
  return v;
}

}  // namespace

LinkSpec unknot(const std::string& label) {
  return make_spec("unknot", {label}, {},
                   RatFn(LaurentPoly(1), difference_of_inverses(Monomial::variable(variable_for(label)))));
}

LinkSpec hopf() { return make_spec("hopf", {"a", "b"}, {{"a", "b", 1}}, RatFn(1)); }

LinkSpec tilde() {
  return make_spec("tilde", {"x", "y", "c"}, {{"x", "c", 1}, {"y", "c", 1}},
                   RatFn(difference_of_inverses(Monomial::variable(variable_for("c")))));
}

LinkSpec unlink2() {
  LinkSpec spec = make_spec("unlink2", {"a", "b"}, {}, RatFn(0));
  spec.sublinks.emplace("a", std::make_shared<const LinkSpec>(unknot("b")));
  spec.sublinks.emplace("b", std::make_shared<const LinkSpec>(unknot("a")));
  return spec;
}

LinkSpec torus_link(int p, int q, int d) {
  if (std::gcd(p, q) != 1)
    throw Error(ErrorKind::NonCoprime, "torus(" + std::to_string(p) + "," + std::to_string(q) + "," +
                                           std::to_string(d) + "): p and q are not coprime");
  if (d < 1) throw Error(ErrorKind::InvalidLinkSpec, "torus link needs d >= 1");
  std::vector<std::string> comps{"c2", "c1"};
  std::vector<std::tuple<std::string, std::string, std::int64_t>> links{{"c2", "c1", 1}};
  std::vector<Monomial::Entry> strand_product;
  for (int i = 1; i <= d; ++i) {
    const std::string s = "s" + std::to_string(i);
    comps.push_back(s);
    links.emplace_back("c2", s, p);
    links.emplace_back("c1", s, q);
    for (int j = 1; j < i; ++j) links.emplace_back("s" + std::to_string(j), s, static_cast<std::int64_t>(p) * q);
    strand_product.emplace_back(variable_for(s), 1);
  }
  const Monomial base = Monomial::variable(variable_for("c2"), p) * Monomial::variable(variable_for("c1"), q) *
                        Monomial(strand_product).pow(p * q);
  const RatFn conway(difference_of_inverses(base).pow(static_cast<unsigned>(d)));
  return make_spec("torus(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(d) + ")",
                   std::move(comps), links, conway);
}

// ------------------------------------------------------------------ Catalog

void Catalog::add(LinkSpec spec) {
  if (entries_.contains(spec.name) || parse_torus_name(spec.name))
    throw Error(ErrorKind::ShadowedName, "catalog already defines '" + spec.name + "'");
  auto violations = validate_linkspec(spec);
  if (!violations.empty()) {
    std::string msg = "link '" + spec.name + "' is invalid:";
    for (const auto& v : violations) msg += " [" + std::string(violation_name(v.kind)) + ": " + v.detail + "]";
    throw Error(ErrorKind::InvalidLinkSpec, msg);
  }
  std::string key = spec.name;
  entries_.emplace(std::move(key), std::move(spec));
}

std::optional<LinkSpec> Catalog::lookup(std::string_view name) const {
  if (auto it = entries_.find(name); it != entries_.end()) return it->second;
  if (auto t = parse_torus_name(name)) return torus_link((*t)[0], (*t)[1], (*t)[2]);
  return std::nullopt;
}

bool Catalog::contains(std::string_view name) const { return lookup(name).has_value(); }

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : entries_) out.push_back(name);
  return out;
}

Catalog builtin_catalog() {
  Catalog c;
  c.add(unknot());
  c.add(hopf());
  c.add(tilde());
  c.add(unlink2());
  return c;
}

// ------------------------------------------------------------- file format

namespace {

struct PendingLink {
  std::size_t line = 0;
  std::string name;
  std::vector<std::string> components;
  std::map<std::pair<std::string, std::string>, std::int64_t> lk;
  std::optional<RatFn> conway;
  std::vector<std::pair<std::string, std::string>> sublinks;
};

class CatalogReader {
 public:
  CatalogReader(Catalog& into, std::string_view text) : into_(into), text_(text) {}

  void run() {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      handle_line(line_no, text_.substr(start, end - start));
      start = end + 1;
    }
    if (current_) fail(current_->line, "link '" + current_->name + "' is missing 'end'");
  }

 private:
  [[noreturn]] static void fail(std::size_t line, const std::string& msg) {
    throw SyntaxError(0, "catalog line " + std::to_string(line) + ": " + msg, line);
  }

  void handle_line(std::size_t line, std::string_view raw) {
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    std::istringstream in{std::string(text)};
    std::string keyword;
    if (!(in >> keyword)) return;

    if (keyword == "link") {
      if (current_) fail(line, "'link' inside link '" + current_->name + "'");
      std::string name;
      if (!(in >> name)) fail(line, "'link' needs a name");
      expect_end_of_line(in, line);
      current_ = PendingLink{};
      current_->line = line;
      current_->name = name;
      return;
    }
    if (!current_) fail(line, "'" + keyword + "' outside a link block");

    if (keyword == "components") {
      if (!current_->components.empty()) fail(line, "components given twice");
      std::string label;
      std::set<std::string> seen;
      while (in >> label) {
        if (!is_valid_label(label)) fail(line, "invalid component label '" + label + "'");
        if (!seen.insert(label).second) fail(line, "duplicate component '" + label + "'");
        current_->components.push_back(label);
      }
      if (current_->components.empty()) fail(line, "no components listed");
    } else if (keyword == "lk") {
      std::string a;
      std::string b;
      std::string value;
      if (!(in >> a >> b >> value)) fail(line, "'lk' needs two components and an integer");
      expect_end_of_line(in, line);
      require_component(line, a);
      require_component(line, b);
      if (a == b) fail(line, "self-linking of '" + a + "' is not allowed");
      std::int64_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        fail(line, "bad linking number '" + value + "'");
      }
      auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      auto [it, inserted] = current_->lk.emplace(key, v);
      if (!inserted && it->second != v)
        fail(line, "conflicting linking number for '" + a + "' and '" + b + "'");
    } else if (keyword == "conway") {
      if (current_->conway) fail(line, "conway given twice");
      const std::size_t at = raw.find("conway") + std::string_view("conway").size();
      std::string_view expr = text.substr(at);
      try {
        current_->conway = symalg::parse_rational(expr);
      } catch (const SyntaxError& e) {
        throw SyntaxError(at + e.offset(), "catalog line " + std::to_string(line) + ": " + e.what(), line);
      }
    } else if (keyword == "sublink") {
      std::string comp;
      std::string name;
      if (!(in >> comp >> name)) fail(line, "'sublink' needs a component and a link name");
      expect_end_of_line(in, line);
      require_component(line, comp);
      current_->sublinks.emplace_back(comp, name);
    } else if (keyword == "end") {
      expect_end_of_line(in, line);
      finish(line);
    } else {
      fail(line, "unknown keyword '" + keyword + "'");
    }
  }

  void expect_end_of_line(std::istringstream& in, std::size_t line) {
    std::string extra;
    if (in >> extra) fail(line, "unexpected token '" + extra + "'");
  }

  void require_component(std::size_t line, const std::string& label) {
    if (current_->components.empty()) fail(line, "'components' must come first");
    if (std::find(current_->components.begin(), current_->components.end(), label) == current_->components.end())
      fail(line, "unknown component '" + label + "'");
  }

  void finish(std::size_t line) {
    PendingLink p = std::move(*current_);
    current_.reset();
    if (p.components.empty()) fail(line, "link '" + p.name + "' has no components");
    if (!p.conway) fail(line, "link '" + p.name + "' has no conway function");
    std::vector<std::tuple<std::string, std::string, std::int64_t>> links;
    for (const auto& [key, v] : p.lk) links.emplace_back(key.first, key.second, v);
    LinkSpec spec = make_spec(p.name, p.components, links, *p.conway);
    for (const auto& [comp, name] : p.sublinks) {
      auto sub = into_.lookup(name);
      if (!sub) throw Error(ErrorKind::UnknownName, "catalog line " + std::to_string(line) + ": sublink '" + name + "' is not defined");
      if (!spec.sublinks.emplace(comp, std::make_shared<const LinkSpec>(std::move(*sub))).second)
        fail(line, "two sublinks for '" + comp + "'");
    }
    into_.add(std::move(spec));
  }

  Catalog& into_;
  std::string_view text_;
  std::optional<PendingLink> current_;
};

void emit_entry(const LinkSpec& spec, const std::string& name, std::ostringstream& out,
                std::set<std::string>& emitted) {
  std::map<std::string, std::string> sub_names;
  for (const auto& [label, sub] : spec.sublinks) {
    std::string sub_name = name + "_minus_" + label;
    emit_entry(*sub, sub_name, out, emitted);
    sub_names[label] = sub_name;
  }
  if (!emitted.insert(name).second) return;
  out << "link " << name << "\n";
  out << "components " << join(spec.components, " ") << "\n";
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t j = i + 1; j < spec.size(); ++j)
      if (spec.lk[i][j] != 0)
        out << "lk " << spec.components[i] << " " << spec.components[j] << " " << spec.lk[i][j] << "\n";
  out << "conway " << symalg::render(spec.conway) << "\n";
  for (const auto& [label, sub_name] : sub_names) out << "sublink " << label << " " << sub_name << "\n";
  out << "end\n";
}

}  // namespace

void load_catalog(Catalog& into, std::string_view text) { CatalogReader(into, text).run(); }

void load_catalog_file(Catalog& into, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read catalog '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    load_catalog(into, buf.str());
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.offset(), path + ": " + e.what(), e.line());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string emit_catalog(const LinkSpec& spec) {
  std::ostringstream out;
  std::set<std::string> emitted;
  std::string name;
  for (char c : spec.name)
    if (c != ' ' && c != '\t') name += c;
  if (name.empty()) name = "link";
  emit_entry(spec, name, out, emitted);
  return out.str();
}

}  // namespace splice::link
