#include <random>
#include <sstream>

#include "splice/symalg.hpp"
#include "splice/torsion_rational.hpp"
#include "support.hpp"

using splice::Error;
using splice::ErrorKind;
using namespace splice::torsion;

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

template <class F>
BasedComplex<F> two_term(const F& a) {
  BasedComplex<F> c = make_complex<F>({1, 1});
  c.boundary[1](0, 0) = a;
  return c;
}

template <class F>
SesWitness<F> direct_sum(const BasedComplex<F>& sub, const BasedComplex<F>& quotient) {
  SesWitness<F> w;
  w.sub = sub;
  w.quotient = quotient;
  for (std::size_t i = 0; i < sub.dims.size(); ++i) {
    w.glue.emplace_back(sub.dims[i], quotient.dims[i]);
    w.base_change.push_back(Matrix<F>::identity(sub.dims[i] + quotient.dims[i]));
  }
  return w;
}

}  // namespace

TEST_CASE("torsion examples") {
  CHECK(torsion(two_term(Rational(1))) == 1);
  CHECK(torsion(two_term(Rational(5))) == Rational(1, 5));
  const Rational a(7, 3);
  const auto c = two_term(Rational(2));
  Matrix<Rational> scale(1, 1);
  scale(0, 0) = a;
  CHECK(torsion(rebase(c, 0, scale)) == torsion(c) * a);
  CHECK(torsion(rebase(c, 1, scale)) == torsion(c) / a);
  CHECK(torsion(make_complex<Rational>({})) == 1);
}

TEST_CASE("counts examples") {
  const Counts acyclic = counts(two_term(Rational(1)));
  CHECK(acyclic.beta == std::vector<std::int64_t>{0, 0});
  CHECK(acyclic.gamma == std::vector<std::int64_t>{1, 2});
  CHECK(acyclic.size == 0);
  auto zero = make_complex<Rational>({1, 1});
  zero.homology[0] = {{Rational(1)}};
  zero.homology[1] = {{Rational(1)}};
  const Counts z = counts(zero);
  CHECK(z.beta == std::vector<std::int64_t>{1, 2});
  CHECK(z.gamma == std::vector<std::int64_t>{1, 2});
  CHECK(z.size == 5);
  CHECK(torsion(zero) == -1);
  const Counts empty = counts(make_complex<Rational>({}));
  CHECK(empty.beta.empty());
  CHECK(empty.size == 0);
}

TEST_CASE("validation errors") {
  auto c = make_complex<Rational>({1, 1, 1});
  c.boundary[1](0, 0) = 1;
  c.boundary[2](0, 0) = 1;
  CHECK(kind_of([&] { validate(c); }) == ErrorKind::InvalidComplex);
  auto h = make_complex<Rational>({1, 1});
  h.boundary[1](0, 0) = 1;
  h.homology[1] = {{Rational(1)}};
  CHECK(kind_of([&] { validate(h); }) == ErrorKind::InvalidComplex);
  auto missing = make_complex<Rational>({1});
  CHECK(kind_of([&] { torsion(missing); }) == ErrorKind::InvalidComplex);
  auto shape = make_complex<Rational>({1, 2});
  shape.boundary[1] = Matrix<Rational>(2, 2);
  CHECK(kind_of([&] { validate(shape); }) == ErrorKind::DegenerateBasis);
  Matrix<Rational> singular(1, 1);
  CHECK(kind_of([&] { rebase(two_term(Rational(1)), 0, singular); }) == ErrorKind::DegenerateBasis);
}

TEST_CASE("assemble_ses and multiplicativity examples") {
  const auto w = direct_sum(two_term(Rational(1)), two_term(Rational(1)));
  const auto a = assemble_ses(w);
  CHECK(a.total.dims == std::vector<std::size_t>{2, 2});
  CHECK(counts(a.homology_sequence).gamma.back() == 0);
  CHECK(torsion(a.homology_sequence) == 1);
  const auto r = multiplicativity_check(w);
  CHECK(r.nu == 2);
  CHECK(r.mu == 0);
  CHECK(r.basis_dets == std::vector<Rational>{1, 1});
  CHECK(r.lhs == 1);
  CHECK(r.holds);

  const Rational s(4, 9);
  const auto scaled = multiplicativity_check(direct_sum(two_term(s), two_term(Rational(3))));
  CHECK(scaled.tau_sub == 1 / s);
  CHECK(scaled.tau_total == scaled.tau_sub * scaled.tau_quotient);
  CHECK(scaled.holds);

  auto with_homology = make_complex<Rational>({1, 1});
  with_homology.homology = canonical_homology(with_homology.dims, with_homology.boundary);
  const auto split = assemble_ses(direct_sum(with_homology, with_homology));
  const auto& maps = split.homology_sequence.boundary;
  CHECK(maps.size() == 6);
  CHECK(maps[3].is_zero_matrix());
  CHECK(!maps[4].is_zero_matrix());
  CHECK(!maps[5].is_zero_matrix());
  CHECK(multiplicativity_check(direct_sum(with_homology, with_homology)).holds);

  auto bad = w;
  bad.base_change[0] = Matrix<Rational>(2, 2);
  CHECK(kind_of([&] { assemble_ses(bad); }) == ErrorKind::InvalidWitness);
  bad = w;
  bad.glue.pop_back();
  CHECK(kind_of([&] { assemble_ses(bad); }) == ErrorKind::InvalidWitness);
}

TEST_CASE("random witnesses satisfy the multiplicativity identity") {
  std::mt19937_64 rng(42);
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const RationalWitness w = random_witness(rng);
    const auto total = assemble_ses(w).total;
    for (std::size_t i = 2; i < total.dims.size(); ++i)
      CHECK((total.boundary[i - 1] * total.boundary[i]).is_zero_matrix());
    const auto r = multiplicativity_check(w);
    INFO("trial " << trial);
    CHECK(r.holds);
    if (!assemble_ses(w).homology_sequence.dims.empty() && counts(w.sub).size + counts(w.quotient).size > 0)
      ++nontrivial;
  }
  CHECK(nontrivial > 10);
}

TEST_CASE("torsion does not depend on the choices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const RationalComplex c = random_complex(rng);
    validate(c);
    const Rational tau = torsion(c);
    for (int k = 0; k < 3; ++k) CHECK(torsion_with_choices(c, random_choices(rng, c)) == tau);
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
      if (c.dims[i] == 0) continue;
      Matrix<Rational> m = Matrix<Rational>::identity(c.dims[i]);
      m(0, 0) = 3;
      if (c.dims[i] > 1) m(1, 0) = -2;
      const Rational expected = i % 2 == 0 ? Rational(tau * 3) : Rational(tau / 3);
      CHECK(torsion(rebase(c, i, m)) == expected);
    }
  }
}

TEST_CASE("rational function field") {
  using splice::symalg::parse_rational;
  using splice::symalg::RatFn;
  const RatFn d = parse_rational("t - t^-1");
  CHECK(torsion(two_term(d)) == d.inverse());
  BasedComplex<RatFn> c = make_complex<RatFn>({2, 2});
  c.boundary[1](0, 0) = parse_rational("t");
  c.boundary[1](1, 1) = parse_rational("t + 1");
  c.boundary[1](0, 1) = parse_rational("t^2");
  CHECK(torsion(c) == parse_rational("1/(t^2 + t)"));
  const auto r = multiplicativity_check(direct_sum(two_term(d), c));
  CHECK(r.holds);
}

TEST_CASE("complex files") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalComplex c = random_complex(rng);
    std::istringstream in(write_complex(c));
    const RationalComplex back = read_complex(in);
    CHECK(back.dims == c.dims);
    CHECK(back.boundary == c.boundary);
    CHECK(back.homology == c.homology);
  }
  std::istringstream text(R"(# identity with a scaled entry
complex m=1
dim 0 1
dim 1 1
boundary 1 5/2
)");
  CHECK(torsion(read_complex(text)) == Rational(2, 5));
  auto line_of = [](const char* s) {
    std::istringstream in(s);
    try {
      read_complex(in);
    } catch (const splice::SyntaxError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("complex m=1\ndim 0 1\ndim 1 1\nboundary 1 1 2\n") == 4);
  CHECK(line_of("complex m=1\ndim 0 1\nboundry 1 1\n") == 3);
  CHECK(line_of("dim 0 1\n") == 1);
  CHECK(line_of("complex m=1\ndim 0 1\ndim 1 x\n") == 3);
  CHECK(line_of("complex m=1\ndim 0 1\nboundary 1 1/0\n") == 3);
  CHECK(kind_of([] { read_complex_file("/nonexistent/c.txt"); }) == ErrorKind::IoError);
}
