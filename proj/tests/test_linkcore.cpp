#include "splice/linkcore.hpp"
#include <numeric>

#include "support.hpp"

using namespace splice;
using namespace splice::link;
using symalg::parse_rational;

namespace {

bool has_violation(const LinkSpec& s, Violation::Kind kind) {
  for (const auto& v : validate_linkspec(s))
    if (v.kind == kind) return true;
  return false;
}

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

TEST_CASE("validate_linkspec examples") {
  CHECK(validate_linkspec(hopf()).empty());
  CHECK(has_violation(make_spec("bad", {"1", "2"}, {}, parse_rational("t_1")), Violation::Kind::Symmetry));
  CHECK(has_violation(make_spec("bad", {"a"}, {}, parse_rational("t_z - t_z^-1")),
                      Violation::Kind::UnknownVariable));
  LinkSpec asym = hopf();
  asym.lk[0][1] = 2;
  CHECK(has_violation(asym, Violation::Kind::Asymmetric));
  LinkSpec diag = hopf();
  diag.lk[0][0] = 1;
  CHECK(has_violation(diag, Violation::Kind::NonzeroDiagonal));
  LinkSpec wrong_sub = unlink2();
  wrong_sub.sublinks["a"] = std::make_shared<const LinkSpec>(unknot("z"));
  CHECK(has_violation(wrong_sub, Violation::Kind::SublinkMismatch));
  CHECK(has_violation(make_spec("bad", {"a", "a"}, {}, symalg::RatFn(1)), Violation::Kind::DuplicateComponent));
  CHECK(has_violation(make_spec("bad", {"a-b"}, {}, symalg::RatFn(1)), Violation::Kind::InvalidLabel));
}

TEST_CASE("violations stay stable under relabeling") {
  const LinkSpec bad = make_spec("bad", {"p", "q"}, {{"p", "q", 1}}, parse_rational("t_p"));
  const LinkSpec renamed = relabel(bad, {{"p", "m"}});
  CHECK(validate_linkspec(bad).size() == validate_linkspec(renamed).size());
}

TEST_CASE("builtin catalog values") {
  const Catalog cat = builtin_catalog();
  for (const auto& name : cat.names()) {
    INFO(name);
    CHECK(validate_linkspec(*cat.lookup(name)).empty());
  }
  const LinkSpec h = *cat.lookup("hopf");
  CHECK(h.size() == 2);
  CHECK(h.conway == symalg::RatFn(1));
  CHECK(h.linking("a", "b") == 1);
  CHECK(cat.lookup("unknot")->conway == parse_rational("1/(t_u - t_u^-1)"));
  const LinkSpec t = *cat.lookup("tilde");
  CHECK(t.conway == parse_rational("t_c - t_c^-1"));
  CHECK(t.linking("x", "c") == 1);
  CHECK(t.linking("y", "c") == 1);
  CHECK(t.linking("x", "y") == 0);
  const LinkSpec u2 = *cat.lookup("unlink2");
  CHECK(u2.conway.is_zero());
  REQUIRE(u2.sublink("a") != nullptr);
  CHECK(u2.sublink("a")->components == std::vector<std::string>{"b"});
  CHECK(u2.sublink("a")->conway == parse_rational("1/(t_b - t_b^-1)"));
  CHECK(!cat.lookup("missing").has_value());
}

TEST_CASE("torus family") {
  const Catalog cat = builtin_catalog();
  const LinkSpec t = *cat.lookup("torus(2,1,1)");
  CHECK(t.components == std::vector<std::string>{"c2", "c1", "s1"});
  CHECK(t.conway == parse_rational("t_c2^2*t_c1*t_s1^2 - t_c2^-2*t_c1^-1*t_s1^-2"));
  CHECK(t.linking("c2", "s1") == 2);
  CHECK(t.linking("c1", "s1") == 1);
  CHECK(t.linking("c2", "c1") == 1);
  const LinkSpec t3 = torus_link(3, -2, 2);
  CHECK(t3.linking("s1", "s2") == -6);
  CHECK(cat.lookup("torus( 3 , -2 , 2 )").has_value());
  CHECK(kind_of([] { torus_link(2, 4, 1); }) == ErrorKind::NonCoprime);
  CHECK(kind_of([] { torus_link(2, 1, 0); }) == ErrorKind::InvalidLinkSpec);
  int checked = 0;
  for (int p = -7; p <= 7; ++p) {
    for (int q = -7; q <= 7; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (int d = 1; d <= 3; ++d) {
        const LinkSpec s = torus_link(p, q, d);
        INFO(p << "," << q << "," << d);
        CHECK(validate_linkspec(s).empty());
        ++checked;
      }
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("relabel examples") {
  const LinkSpec h = relabel(hopf(), {{"a", "m"}, {"b", "n"}});
  CHECK(h.components == std::vector<std::string>{"m", "n"});
  CHECK(h.conway == symalg::RatFn(1));
  CHECK(validate_linkspec(h).empty());
  const LinkSpec t = relabel(tilde(), {{"c", "c"}});
  CHECK(equivalent(t, tilde()));
  CHECK(t.conway == tilde().conway);
  CHECK(kind_of([] { relabel(hopf(), {{"a", "b"}, {"b", "b"}}); }) == ErrorKind::CollisionError);
  CHECK(kind_of([] { relabel(hopf(), {{"a", "b"}}); }) == ErrorKind::CollisionError);
  const LinkSpec u = relabel(unlink2(), {{"a", "p"}});
  REQUIRE(u.sublink("p") != nullptr);
  CHECK(u.sublink("b")->components == std::vector<std::string>{"p"});
  CHECK(validate_linkspec(u).empty());
}

TEST_CASE("catalog shadowing") {
  Catalog cat = builtin_catalog();
  CHECK(kind_of([&] { cat.add(hopf()); }) == ErrorKind::ShadowedName);
  LinkSpec t = hopf();
  t.name = "torus(2,1,1)";
  CHECK(kind_of([&] { cat.add(t); }) == ErrorKind::ShadowedName);
  LinkSpec bad = make_spec("bad", {"a", "b"}, {}, parse_rational("t_a"));
  CHECK(kind_of([&] { cat.add(bad); }) == ErrorKind::InvalidLinkSpec);
}

TEST_CASE("catalog file parsing") {
  Catalog cat = builtin_catalog();
  load_catalog(cat, R"(# two knots
link knot_b
components b
conway 1/(t_b - t_b^-1)
end

link split
components a b   # unlinked
conway 0
sublink a knot_b
end
)");
  const LinkSpec s = *cat.lookup("split");
  CHECK(s.conway.is_zero());
  REQUIRE(s.sublink("a") != nullptr);
  CHECK(s.sublink("a")->conway == parse_rational("1/(t_b - t_b^-1)"));

  auto line_of = [](const char* text) {
    Catalog c = builtin_catalog();
    try {
      load_catalog(c, text);
    } catch (const SyntaxError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("link x\ncomponents a\nfrob 1\nend\n") == 3);
  CHECK(line_of("link x\ncomponents a a\nend\n") == 2);
  CHECK(line_of("link x\ncomponents a b\nlk a b 1\nlk b a 2\nconway 1\nend\n") == 4);
  CHECK(line_of("link x\ncomponents a\nconway t_a +\nend\n") == 3);
  CHECK(line_of("link x\ncomponents a\nconway 1/(t_a-t_a^-1)\n") == 1);
  CHECK(line_of("components a\n") == 1);

  Catalog c2 = builtin_catalog();
  CHECK(kind_of([&] { load_catalog(c2, "link hopf\ncomponents a b\nlk a b 1\nconway 1\nend\n"); }) ==
        ErrorKind::ShadowedName);
  CHECK(kind_of([&] { load_catalog_file(c2, "/nonexistent/catalog.txt"); }) == ErrorKind::IoError);
}

TEST_CASE("emitted catalogs re-parse to equal specs") {
  LinkSpec torus = torus_link(3, 2, 2);
  torus.name = "torus_copy";
  for (const LinkSpec& s : {hopf(), tilde(), unlink2(), torus, unknot()}) {
    Catalog cat;
    load_catalog(cat, emit_catalog(s));
    const auto back = cat.lookup(s.name);
    REQUIRE(back.has_value());
    CHECK(equivalent(*back, s));
    CHECK(back->components == s.components);
    CHECK(back->sublinks.size() == s.sublinks.size());
  }
}
