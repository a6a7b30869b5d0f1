#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "splice/cli.hpp"
#include "splice/errors.hpp"
#include "splice/torsion_rational.hpp"
#include "splice/verify.hpp"

namespace splice::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  std::string expression;
  std::string input;
  std::vector<std::string> catalogs;
  bool emit_catalog = false;
  std::string emit_name = "result";
  bool verify = false;
  std::string component;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  std::vector<std::string> suites;
  bool serial = false;
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, std::string("cannot read ") + what + " '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

link::Catalog load_catalogs(const Settings& s) {
  link::Catalog catalog = link::builtin_catalog();
  for (const auto& path : s.catalogs) link::load_catalog_file(catalog, path);
  return catalog;
}

std::string expression_text(const Settings& s) {
  if (!s.expression.empty() && !s.input.empty())
    throw CLI::ValidationError("give either -e or an input file, not both");
  if (!s.input.empty()) {
    std::string text = read_file(s.input, "expression file");
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return text;
  }
  if (s.expression.empty()) throw CLI::ValidationError("an expression is required (-e or an input file)");
  return s.expression;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& x : items) out += (out.empty() ? "" : " ") + x;
  return out;
}

void print_matrix(std::ostream& out, const link::LinkSpec& spec) {
  std::size_t width = 1;
  for (const auto& c : spec.components) width = std::max(width, c.size());
  for (const auto& row : spec.lk)
    for (auto v : row) width = std::max(width, std::to_string(v).size());
  out << "linking:\n" << std::string(width + 2, ' ');
  for (const auto& c : spec.components) out << " " << std::setw(static_cast<int>(width)) << c;
  out << "\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out << "  " << std::setw(static_cast<int>(width)) << spec.components[i];
    for (auto v : spec.lk[i]) out << " " << std::setw(static_cast<int>(width)) << v;
    out << "\n";
  }
}

Json spec_json(const std::string& expression, const link::LinkSpec& spec, bool with_conway) {
  Json j;
  j["expression"] = expression;
  if (with_conway) j["conway"] = symalg::render(spec.conway);
  j["components"] = spec.components;
  j["linking"] = spec.lk;
  return j;
}

void print_spec(std::ostream& out, const Settings& s, const std::string& expression, const link::LinkSpec& spec,
                bool with_conway) {
  if (s.format == "json") {
    out << spec_json(expression, spec, with_conway).dump(2) << "\n";
    return;
  }
  out << "expression: " << expression << "\n";
  if (with_conway) out << "conway: " << symalg::render(spec.conway) << "\n";
  out << "components: " << join(spec.components) << "\n";
  print_matrix(out, spec);
}

link::LinkSpec evaluate(const Settings& s, std::string& described) {
  const link::Catalog catalog = load_catalogs(s);
  const engine::ExprPtr e = parse_expr(expression_text(s), catalog);
  described = engine::describe(*e);
  return engine::eval(*e, {s.verify});
}

int cmd_conway(const Settings& s, std::ostream& out) {
  std::string described;
  link::LinkSpec spec = evaluate(s, described);
  if (s.emit_catalog) {
    spec.name = s.emit_name;
    out << link::emit_catalog(spec);
    return 0;
  }
  print_spec(out, s, described, spec, true);
  return 0;
}

int cmd_omega(const Settings& s, std::ostream& out) {
  std::string described;
  const link::LinkSpec spec = evaluate(s, described);
  const std::string omega = symalg::render(engine::omega(spec));
  if (s.format == "json") {
    Json j;
    j["expression"] = described;
    j["omega"] = omega;
    out << j.dump(2) << "\n";
  } else {
    out << "expression: " << described << "\n";
    out << "omega: " << omega << "\n";
  }
  return 0;
}

int cmd_linking(const Settings& s, std::ostream& out) {
  std::string described;
  print_spec(out, s, described, evaluate(s, described), false);
  return 0;
}

int cmd_torres(const Settings& s, std::ostream& out) {
  std::string described;
  const link::LinkSpec spec = evaluate(s, described);
  link::LinkSpec sub = engine::torres_remove(spec, s.component);
  const std::string what = described + " without " + s.component;
  if (s.emit_catalog) {
    sub.name = s.emit_name;
    out << link::emit_catalog(sub);
    return 0;
  }
  print_spec(out, s, what, sub, true);
  return 0;
}

std::string join_counts(const std::vector<std::int64_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

int cmd_torsion(const Settings& s, std::ostream& out) {
  if (s.input.empty()) throw CLI::ValidationError("torsion needs a complex file");
  const torsion::RationalComplex c = torsion::read_complex_file(s.input);
  const torsion::Rational tau = torsion::torsion(c);
  const torsion::Counts k = torsion::counts(c);
  if (s.format == "json") {
    Json j;
    j["tau"] = torsion::render(tau);
    j["beta"] = k.beta;
    j["gamma"] = k.gamma;
    j["size"] = k.size;
    out << j.dump(2) << "\n";
  } else {
    out << "tau: " << torsion::render(tau) << "\n";
    out << "beta: " << join_counts(k.beta) << "\n";
    out << "gamma: " << join_counts(k.gamma) << "\n";
    out << "|C|: " << k.size << "\n";
  }
  return 0;
}

int cmd_selftest(const Settings& s, std::ostream& out) {
  const link::Catalog catalog = load_catalogs(s);
  verify::SuiteOptions opts;
  opts.seed = s.seed;
  if (s.trials) opts.expressions = opts.witnesses = opts.complexes = *s.trials;
  opts.execution = s.serial ? verify::Execution::Serial : verify::Execution::Parallel;
  const std::vector<std::string> names = s.suites.empty() ? verify::suite_names() : s.suites;

  std::vector<verify::SuiteResult> results;
  for (const auto& name : names) {
    auto r = verify::run_suite(name, catalog, opts);
    if (!r) throw CLI::ValidationError("unknown suite '" + name + "'");
    results.push_back(std::move(*r));
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.ok() ? 1 : 0;

  if (s.format == "json") {
    Json j;
    j["seed"] = s.seed;
    j["suites"] = Json::array();
    for (const auto& r : results) {
      Json e;
      e["name"] = r.name;
      e["ok"] = r.ok();
      e["passed"] = r.passed;
      e["trials"] = r.trials;
      e["checks"] = r.checks;
      e["failures"] = Json::array();
      for (const auto& f : r.failures) e["failures"].push_back({{"trial", f.index}, {"message", f.message}});
      e["reproduce"] = r.reproduce;
      j["suites"].push_back(std::move(e));
    }
    j["passed_suites"] = passed;
    j["total_suites"] = results.size();
    out << j.dump(2) << "\n";
  } else {
    out << "seed: " << s.seed << "\n";
    for (const auto& r : results) {
      out << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.passed << "/" << r.trials << " trials, " << r.checks
          << " checks\n";
      for (const auto& f : r.failures) out << "  trial " << f.index << ": " << f.message << "\n";
      if (!r.ok()) out << "  reproduce: " << r.reproduce << "\n";
    }
    out << "summary: " << passed << "/" << results.size() << " suites passed\n";
  }
  return passed == results.size() ? 0 : 1;
}

void add_expression_options(CLI::App* sub, Settings& s) {
  sub->add_option("-e,--expr", s.expression, "Inline splice expression");
  sub->add_option("input", s.input, "File holding the splice expression");
  sub->add_option("--catalog", s.catalogs, "Catalog file to load after the built-ins (repeatable)")
      ->check(CLI::ExistingFile);
  sub->add_flag("--verify", s.verify, "Cross-check cables, connected sums and satellites against closed forms");
}

void add_format_option(CLI::App* sub, Settings& s) {
  sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void print_error(std::ostream& err, const Error& e, std::string_view source) {
  err << "error: " << e.name() << ": " << e.what() << "\n";
  const auto* syntax = dynamic_cast<const SyntaxError*>(&e);
  if (syntax && syntax->line() == 0 && !source.empty() && syntax->offset() <= source.size())
    err << "  " << source << "\n  " << std::string(syntax->offset(), ' ') << "^\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app("Conway functions of spliced links and torsion of based chain complexes", "splicecalc");
  app.require_subcommand(1);

  auto* conway = app.add_subcommand("conway", "Conway function, components and linking matrix");
  add_expression_options(conway, s);
  add_format_option(conway, s);
  conway->add_flag("--emit-catalog", s.emit_catalog, "Print the result as a catalog entry");
  conway->add_option("--name", s.emit_name, "Entry name used by --emit-catalog");

  auto* omega = app.add_subcommand("omega", "Reduced Conway polynomial");
  add_expression_options(omega, s);
  add_format_option(omega, s);

  auto* linking = app.add_subcommand("linking", "Components and linking matrix");
  add_expression_options(linking, s);
  add_format_option(linking, s);

  auto* torres = app.add_subcommand("torres", "Sublink with one component removed");
  add_expression_options(torres, s);
  add_format_option(torres, s);
  torres->add_option("-c,--component", s.component, "Component to remove")->required();
  torres->add_flag("--emit-catalog", s.emit_catalog, "Print the sublink as a catalog entry");
  torres->add_option("--name", s.emit_name, "Entry name used by --emit-catalog");

  auto* torsion = app.add_subcommand("torsion", "Torsion and counts of a based chain complex");
  torsion->add_option("input", s.input, "Complex file")->required();
  add_format_option(torsion, s);

  auto* selftest = app.add_subcommand("selftest", "Run the verification suites");
  selftest->add_option("--seed", s.seed, "Root seed of the randomized suites");
  selftest->add_option("--trials", s.trials, "Trials per randomized suite")->check(CLI::PositiveNumber);
  selftest->add_option("--suite", s.suites, "Run only the named suite (repeatable)");
  selftest->add_option("--catalog", s.catalogs, "Catalog file to load after the built-ins (repeatable)")
      ->check(CLI::ExistingFile);
  selftest->add_flag("--serial", s.serial, "Run trials on one thread");
  add_format_option(selftest, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (conway->parsed()) return cmd_conway(s, out);
    if (omega->parsed()) return cmd_omega(s, out);
    if (linking->parsed()) return cmd_linking(s, out);
    if (torres->parsed()) return cmd_torres(s, out);
    if (torsion->parsed()) return cmd_torsion(s, out);
    return cmd_selftest(s, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    print_error(err, e, s.input.empty() ? std::string_view(s.expression) : std::string_view());
    return 2;
  } catch (const Error& e) {
    print_error(err, e, {});
    return 1;
  }
}

}  // namespace splice::cli
