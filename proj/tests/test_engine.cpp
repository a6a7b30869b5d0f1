#include <algorithm>
#include <numeric>
#include <random>

#include "splice/spliceengine.hpp"
#include "support.hpp"

using splice::Error;
using splice::ErrorKind;
namespace lc = splice::link;
namespace symalg = splice::symalg;
using namespace splice::engine;
namespace eng = splice::engine;
using lc::hopf;
using lc::tilde;
using lc::torus_link;
using lc::unknot;
using lc::unlink2;
using symalg::parse_rational;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::IoError;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Trefoil as a single knot: Omega = t^2 - 1 + t^-2.
lc::LinkSpec trefoil() {
  return lc::make_spec("trefoil", {"k"}, {}, parse_rational("(t_k^2 - 1 + t_k^-2)/(t_k - t_k^-1)"));
}

}  // namespace

TEST_CASE("splice examples") {
  const LinkSpec s = eng::splice(hopf(), "a", tilde(), "c");
  CHECK(sorted(s.components) == std::vector<std::string>{"b", "x", "y"});
  CHECK(s.conway == parse_rational("t_b - t_b^-1"));
  CHECK(s.linking("b", "x") == 1);
  CHECK(s.linking("b", "y") == 1);
  CHECK(s.linking("x", "y") == 0);
  CHECK(lc::validate_linkspec(s).empty());

  const LinkSpec u = eng::splice(unknot(), "u", tilde(), "c");
  CHECK(sorted(u.components) == std::vector<std::string>{"x", "y"});
  CHECK(u.conway.is_zero());

  const LinkSpec v = eng::splice(unknot(), "u", unlink2(), "a");
  CHECK(v.components == std::vector<std::string>{"b"});
  CHECK(v.conway == parse_rational("1/(t_b - t_b^-1)"));

  LinkSpec stripped = unlink2();
  stripped.sublinks.clear();
  CHECK(kind_of([&] { eng::splice(unknot(), "u", stripped, "a"); }) == ErrorKind::MissingSublinkData);
  CHECK(kind_of([] { eng::splice(unknot(), "u", unknot(), "u"); }) == ErrorKind::DegenerateSplice);
  CHECK(kind_of([] { eng::splice(hopf(), "z", tilde(), "c"); }) == ErrorKind::UnknownComponent);
}

TEST_CASE("splice renames colliding labels") {
  const LinkSpec s = eng::splice(hopf(), "a", hopf(), "a");
  CHECK(sorted(s.components) == std::vector<std::string>{"left_b", "right_b"});
  CHECK(s.linking("left_b", "right_b") == 1);
  CHECK(s.conway == symalg::RatFn(1));
}

TEST_CASE("splice_linking products") {
  const LinkingMatrix m = splice_linking(hopf(), "a", tilde(), "c");
  auto at = [](const LinkingMatrix& lm, const std::string& i, const std::string& j) {
    const auto pi = std::find(lm.components.begin(), lm.components.end(), i) - lm.components.begin();
    const auto pj = std::find(lm.components.begin(), lm.components.end(), j) - lm.components.begin();
    REQUIRE(static_cast<std::size_t>(pi) < lm.components.size());
    REQUIRE(static_cast<std::size_t>(pj) < lm.components.size());
    return lm.lk[pi][pj];
  };
  CHECK(at(m, "b", "x") == 1);
  const LinkingMatrix t = splice_linking(torus_link(2, 1, 1), "c2", hopf(), "a");
  CHECK(at(t, "s1", "b") == 2);
  CHECK(at(t, "c1", "b") == 1);
  const LinkingMatrix z = splice_linking(unlink2(), "a", hopf(), "a");
  CHECK(at(z, "left_b", "right_b") == 0);
  CHECK(kind_of([] { splice_linking(hopf(), "q", hopf(), "a"); }) == ErrorKind::UnknownComponent);
}

TEST_CASE("torres examples") {
  const LinkSpec h = torres_remove(hopf(), "a");
  CHECK(h.components == std::vector<std::string>{"b"});
  CHECK(h.conway == parse_rational("1/(t_b - t_b^-1)"));
  CHECK(torres_remove(tilde(), "c").conway.is_zero());
  CHECK(kind_of([] { torres_remove(unlink2(), "a"); }) == ErrorKind::TorresDegenerate);
}

TEST_CASE("omega examples") {
  CHECK(omega(unknot()) == LaurentPoly(1));
  CHECK(omega(hopf()) == parse_rational("t - t^-1").numerator());
  CHECK(omega(tilde()) == parse_rational("t^2 - 2 + t^-2").numerator());
  CHECK(omega(trefoil()) == parse_rational("t^2 - 1 + t^-2").numerator());
  const LinkSpec bad = lc::make_spec("bad", {"a"}, {}, parse_rational("1/(t_a^2 - t_a^-2)"));
  CHECK(kind_of([&] { omega(bad); }) == ErrorKind::NotPolynomial);
}

TEST_CASE("verify_symmetry examples") {
  CHECK(verify_symmetry(hopf()));
  CHECK(verify_symmetry(tilde()));
  CHECK(!verify_symmetry(lc::make_spec("bad", {"1", "2"}, {}, parse_rational("t_1"))));
}

TEST_CASE("satellite examples") {
  const EvalOptions verify{true};
  const LinkSpec id = satellite(trefoil(), hopf(), "a", verify);
  CHECK(id.components == std::vector<std::string>{"b"});
  CHECK(id.conway == parse_rational("(t_b^2 - 1 + t_b^-2)/(t_b - t_b^-1)"));
  const LinkSpec triv = satellite(unknot(), tilde(), "c", verify);
  CHECK(triv.conway.is_zero());
  const LinkSpec zero = satellite(trefoil(), unlink2(), "a", verify);
  CHECK(zero.conway == parse_rational("1/(t_b - t_b^-1)"));
  const auto closed = satellite_closed_form(trefoil(), torus_link(2, 1, 1), "c2");
  REQUIRE(closed.has_value());
  CHECK(*closed == satellite(trefoil(), torus_link(2, 1, 1), "c2").conway);
}

TEST_CASE("cable examples") {
  const EvalOptions verify{true};
  const LinkSpec c = cable_remove(unknot(), "u", 2, 1, 1, verify);
  CHECK(c.components == std::vector<std::string>{"s1"});
  CHECK(c.conway == parse_rational("1/(t_s1 - t_s1^-1)"));
  const LinkSpec h = cable(hopf(), "a", 3, 2, 2, verify);
  CHECK(h.size() == 4);
  CHECK(h.conway == cable_closed_form(hopf(), "a", 3, 2, 2));
  CHECK(verify_symmetry(h));
  CHECK(lc::validate_linkspec(h).empty());
  CHECK(kind_of([] { cable(hopf(), "a", 2, 4, 1); }) == ErrorKind::NonCoprime);
  CHECK(kind_of([] { cable(hopf(), "z", 2, 3, 1); }) == ErrorKind::UnknownComponent);
  for (int p = -3; p <= 3; ++p)
    for (int q = -3; q <= 3; ++q) {
      if (std::gcd(p, q) != 1) continue;
      INFO(p << "," << q);
      CHECK(cable(trefoil(), "k", p, q, 1, verify).conway == cable_closed_form(trefoil(), "k", p, q, 1));
      if (p * q == 0) continue;
      CHECK(cable_remove(trefoil(), "k", p, q, 2, verify).conway ==
            cable_remove_closed_form(trefoil(), "k", p, q, 2));
    }
}

TEST_CASE("connected sum examples") {
  const EvalOptions verify{true};
  const LinkSpec h = connected_sum(hopf(), "a", hopf(), "a", verify);
  CHECK(h.size() == 3);
  CHECK(h.conway == parse_rational("t_a - t_a^-1"));
  const LinkSpec u = connected_sum(unknot(), "u", tilde(), "c", verify);
  CHECK(sorted(u.components) == std::vector<std::string>{"u", "x", "y"});
  CHECK(u.conway == lc::relabel(tilde(), {{"c", "u"}}).conway);
  const LinkSpec k = connected_sum(trefoil(), "k", trefoil(), "k", verify);
  CHECK(k.conway == connected_sum_closed_form(trefoil(), "k", trefoil(), "k"));
  CHECK(omega(k) == parse_rational("(t^2 - 1 + t^-2)*(t^2 - 1 + t^-2)").numerator());
}

TEST_CASE("properties on catalog values") {
  const std::vector<LinkSpec> pool = {hopf(), tilde(), torus_link(2, 1, 1), torus_link(3, -2, 2), trefoil(),
                                      unlink2()};
  for (const auto& x : pool) {
    for (const auto& c : x.components) {
      INFO(x.name << "@" << c);
      const LinkSpec a = eng::splice(lc::relabel(hopf(), {{"b", "nu"}}), "a", x, c);
      CHECK(a.conway == lc::relabel(x, {{c, "nu"}}).conway);
      if (x.size() > 1) {
        const LinkSpec ab = eng::splice(trefoil(), "k", x, c);
        const LinkSpec ba = eng::splice(x, c, trefoil(), "k");
        CHECK(ab.conway == ba.conway);
        CHECK(verify_symmetry(ab));
        for (const auto& d : ab.components) {
          bool linked = false;
          for (const auto& e : ab.components) linked = linked || (e != d && ab.linking(d, e) != 0);
          if (!linked) continue;
          const auto rem = torres_remove(ab, d);
          const auto mono = linking_monomial(ab, d);
          const RatFn mult = RatFn(LaurentPoly(mono, 1) - LaurentPoly(mono.inverse(), 1));
          CHECK(symalg::specialize_one(ab.conway, lc::variable_for(d)) == mult * rem.conway);
        }
      }
    }
  }
}

TEST_CASE("expression trees and traced origins") {
  const ExprPtr e = make_connsum(make_cable(make_leaf(hopf()), "a", 2, 3, 1), "b", make_leaf(trefoil()), "k");
  CHECK(depth(*e) == 2);
  const LinkSpec v = eval(*e, {true});
  CHECK(verify_symmetry(v));
  const TracedLink t = eval_traced(*e);
  CHECK(t.spec.conway == v.conway);
  CHECK(t.origin.size() == v.size());
  for (const auto& [label, origin] : t.origin) {
    INFO(label << " <- " << origin);
    CHECK(std::find(v.components.begin(), v.components.end(), label) != v.components.end());
  }
}
