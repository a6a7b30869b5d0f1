#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "splice/cli.hpp"
#include "splice/errors.hpp"
#include "splice/verify.hpp"
#include "support.hpp"

using splice::Error;
using splice::ErrorKind;
namespace cli = splice::cli;
namespace eng = splice::engine;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "splicecalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("splicecalc_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".txt"))
                .string();
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("parse_expr examples") {
  const auto catalog = splice::link::builtin_catalog();
  const auto c = cli::parse_expr("cable(unknot@u, 2, 1, 1)", catalog);
  REQUIRE(std::holds_alternative<eng::CableNode>(c->node));
  const auto& node = std::get<eng::CableNode>(c->node);
  CHECK(node.p == 2);
  CHECK(node.q == 1);
  CHECK(node.d == 1);
  CHECK(node.comp == "u");

  const auto s = cli::parse_expr("splice(hopf@a, hopf@a)", catalog);
  CHECK(std::holds_alternative<eng::SpliceNode>(s->node));
  CHECK(eng::eval(*s).components == std::vector<std::string>{"left_b", "right_b"});

  const auto bad = cli::parse_expr("cable(unknot@u, 2, 4, 1)", catalog);
  CHECK(kind_of([&] { eng::eval(*bad); }) == ErrorKind::NonCoprime);

  const auto t = cli::parse_expr(" satellite( unknot , torus( 2 , 1 , 1 ) @ c2 ) ", catalog);
  CHECK(eng::describe(*t) == "satellite(unknot, torus(2,1,1)@c2)");
  CHECK(eng::describe(*cli::parse_expr(eng::describe(*t), catalog)) == eng::describe(*t));

  auto offset_of = [&](const char* text) {
    try {
      cli::parse_expr(text, catalog);
    } catch (const splice::SyntaxError& e) {
      return e.offset();
    }
    return std::size_t{999};
  };
  CHECK(offset_of("splice(hopf a, tilde@c)") == 12);
  CHECK(offset_of("hopf extra") == 5);
  CHECK(offset_of("cable(unknot@u, x, 1, 1)") == 16);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("frob(hopf@a)") == 0);
  CHECK(kind_of([&] { cli::parse_expr("nothing", catalog); }) == ErrorKind::UnknownName);
  CHECK(kind_of([&] { cli::parse_expr("splice(hopf@z, tilde@c)", catalog); }) == ErrorKind::UnknownComponent);
}

TEST_CASE("conway command") {
  const Outcome r = invoke({"conway", "-e", "splice(hopf@a, tilde@c)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("conway: t_b - t_b^-1\n") != std::string::npos);
  CHECK(r.out.find("components: b x y\n") != std::string::npos);
  CHECK(r.out.find("  b 0 1 1\n") != std::string::npos);
  CHECK(invoke({"conway", "-e", "splice(hopf@a, tilde@c)"}).out == r.out);

  const Outcome j = invoke({"conway", "-e", "splice(hopf@a, tilde@c)", "--format", "json"});
  CHECK(j.code == 0);
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["conway"] == "t_b - t_b^-1");
  CHECK(parsed["components"].size() == 3);
  CHECK(parsed["linking"][0][1] == 1);

  const Outcome v = invoke({"conway", "--verify", "-e", "connsum(cable(hopf@a, 3, 2, 2)@a, tilde@x)"});
  CHECK(v.code == 0);
}

TEST_CASE("omega, linking and torres commands") {
  const Outcome o = invoke({"omega", "-e", "unknot"});
  CHECK(o.code == 0);
  CHECK(o.out.find("omega: 1\n") != std::string::npos);
  const Outcome l = invoke({"linking", "-e", "splice(torus(2,1,1)@c2, hopf@a)"});
  CHECK(l.code == 0);
  CHECK(l.out.find("conway") == std::string::npos);
  const Outcome t = invoke({"torres", "-e", "hopf", "-c", "a"});
  CHECK(t.code == 0);
  CHECK(t.out.find("conway: t_b/(t_b^2 - 1)\n") != std::string::npos);
  const Outcome d = invoke({"torres", "-e", "unlink2", "-c", "a"});
  CHECK(d.code == 1);
  CHECK(d.err.find("TorresDegenerate") != std::string::npos);
}

TEST_CASE("error exit codes") {
  const Outcome syntax = invoke({"conway", "-e", "splice(hopf a, tilde@c)"});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("SyntaxError") != std::string::npos);
  CHECK(syntax.err.find("^") != std::string::npos);
  CHECK(invoke({"conway", "-e", "cable(unknot@u, 2, 4, 1)"}).code == 1);
  CHECK(invoke({"conway", "-e", "missing"}).err.find("UnknownName") != std::string::npos);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"conway"}).code == 2);
  CHECK(invoke({"conway", "--format", "xml", "-e", "hopf"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);

  TempFile expr("hopf\n");
  CHECK(invoke({"conway", "-e", "hopf", expr.path()}).code == 2);
  CHECK(invoke({"conway", expr.path()}).code == 0);
}

TEST_CASE("stripped catalog reports missing sublink data") {
  TempFile catalog(R"(link bare_unlink
components a b
conway 0
end
)");
  const Outcome r = invoke({"conway", "--catalog", catalog.path(), "-e", "splice(unknot@u, bare_unlink@a)"});
  CHECK(r.code == 1);
  CHECK(r.err.find("MissingSublinkData") != std::string::npos);
  const Outcome ok = invoke({"conway", "-e", "splice(unknot@u, unlink2@a)"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("conway: t_b/(t_b^2 - 1)\n") != std::string::npos);
}

TEST_CASE("catalog loading errors") {
  TempFile shadow("link hopf\ncomponents a b\nlk a b 1\nconway 1\nend\n");
  const Outcome s = invoke({"conway", "--catalog", shadow.path(), "-e", "hopf"});
  CHECK(s.code == 1);
  CHECK(s.err.find("ShadowedName") != std::string::npos);
  TempFile broken("link x\ncomponents a\nfrob\nend\n");
  const Outcome b = invoke({"conway", "--catalog", broken.path(), "-e", "hopf"});
  CHECK(b.code == 2);
  CHECK(b.err.find("line 3") != std::string::npos);
  TempFile first("link one\ncomponents p\nconway 1/(t_p - t_p^-1)\nend\n");
  TempFile second("link one\ncomponents q\nconway 1/(t_q - t_q^-1)\nend\n");
  CHECK(invoke({"conway", "--catalog", first.path(), "--catalog", second.path(), "-e", "one"}).code == 1);
  CHECK(invoke({"omega", "--catalog", first.path(), "-e", "one"}).out.find("omega: 1\n") != std::string::npos);
}

TEST_CASE("emitted catalog entries re-parse to equal specs") {
  for (const char* expr : {"splice(hopf@a, tilde@c)", "cable(hopf@a, 3, 2, 2)", "unlink2",
                           "connsum(torus(2,1,1)@c1, tilde@y)"}) {
    INFO(expr);
    const Outcome emitted = invoke({"conway", "--emit-catalog", "--name", "copy", "-e", expr});
    REQUIRE(emitted.code == 0);
    TempFile file(emitted.out);
    const Outcome original = invoke({"conway", "-e", expr});
    const Outcome reread = invoke({"conway", "--catalog", file.path(), "-e", "copy"});
    REQUIRE(reread.code == 0);
    const auto strip = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
    CHECK(strip(reread.out) == strip(original.out));
  }
}

TEST_CASE("torsion command") {
  TempFile complex("complex m=1\ndim 0 1\ndim 1 1\nboundary 1 5\n");
  const Outcome r = invoke({"torsion", complex.path()});
  CHECK(r.code == 0);
  CHECK(r.out == "tau: 1/5\nbeta: 0 0\ngamma: 1 2\n|C|: 0\n");
  const Outcome j = invoke({"torsion", complex.path(), "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["tau"] == "1/5");
  TempFile zero("complex m=1\ndim 0 1\ndim 1 1\nhomology 0 1\nhomology 1 1\n");
  CHECK(invoke({"torsion", zero.path()}).out == "tau: -1\nbeta: 1 2\ngamma: 1 2\n|C|: 5\n");
  TempFile bad("complex m=1\ndim 0 1\ndim 1 1\nhomology 1 1\nboundary 1 1\n");
  const Outcome invalid = invoke({"torsion", bad.path()});
  CHECK(invalid.code == 1);
  CHECK(invalid.err.find("InvalidComplex") != std::string::npos);
  TempFile syntax("complex m=1\ndim 0 1\nboundary 1 1 1\n");
  CHECK(invoke({"torsion", syntax.path()}).code == 2);
}

TEST_CASE("selftest command") {
  const Outcome r = invoke({"selftest", "--seed", "3", "--trials", "12"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("seed: 3\n", 0) == 0);
  CHECK(r.out.find("summary: 10/10 suites passed") != std::string::npos);
  CHECK(invoke({"selftest", "--seed", "3", "--trials", "12", "--serial"}).out == r.out);
  const Outcome one = invoke({"selftest", "--suite", "omega", "--format", "json"});
  CHECK(one.code == 0);
  CHECK(nlohmann::json::parse(one.out)["suites"][0]["name"] == "omega");
  CHECK(invoke({"selftest", "--suite", "nope"}).code == 2);
}

TEST_CASE("trial runner") {
  using namespace splice::verify;
  CHECK(trial_seed(0, 0) != trial_seed(0, 1));
  CHECK(trial_seed(0, 1) != trial_seed(1, 0));
  const Trial trial = [](std::size_t index, std::uint64_t seed) -> TrialOutcome {
    if (index == 5) throw Error(ErrorKind::InvalidComplex, "boom");
    return {static_cast<std::size_t>(seed % 3), index == 7 ? std::optional<std::string>("bad") : std::nullopt};
  };
  const SuiteResult serial = run_trials("t", 20, 9, trial, Execution::Serial);
  const SuiteResult parallel = run_trials("t", 20, 9, trial, Execution::Parallel);
  CHECK(serial.passed == 18);
  CHECK(parallel.passed == serial.passed);
  CHECK(parallel.checks == serial.checks);
  REQUIRE(serial.failures.size() == 2);
  CHECK(serial.failures[0].index == 5);
  CHECK(serial.failures[0].message == "InvalidComplex: boom");
  CHECK(parallel.failures[1].index == 7);
  CHECK(!serial.ok());

  const auto catalog = splice::link::builtin_catalog();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    const auto e = random_expression(rng, catalog, 4);
    CHECK(eng::depth(*e) <= 4);
    CHECK(eng::verify_symmetry(eng::eval(*e)));
    CHECK(eng::describe(*splice::cli::parse_expr(eng::describe(*e), catalog)) == eng::describe(*e));
  }
}
