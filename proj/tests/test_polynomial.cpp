#include <doctest.h>

#include <map>

#include "support.hpp"
#include "tssos/generators.hpp"
#include "tssos/pop_file.hpp"

using namespace tssos;
using testsupport::Gen;

namespace {

Polynomial random_polynomial(std::size_t n, int deg, std::size_t terms, Gen& g) {
  auto pool = testsupport::all_exponents(n, deg);
  Polynomial f(n);
  for (std::size_t t = 0; t < terms; ++t) {
    double c = std::round(g.real(-50.0, 50.0) * 8.0) / 8.0;
    if (c == 0.0) c = 0.5;
    f.add_term(pool[g.below(pool.size())], c);
  }
  return f;
}

}  // namespace

TEST_CASE("parse merges like terms and drops cancellations") {
  Polynomial f = parse_polynomial("1+x1+x1^8", 1);
  CHECK(f.num_terms() == 3);
  CHECK(f.coefficient(Exponent{0}) == 1.0);
  CHECK(f.coefficient(Exponent{1}) == 1.0);
  CHECK(f.coefficient(Exponent{8}) == 1.0);
  CHECK(f.degree() == 8);

  CHECK(parse_polynomial("x1^2 - x1^2", 1).is_zero());
  CHECK(parse_polynomial("x1^2 - x1^2", 1).degree() == 0);
  CHECK(parse_polynomial("2*x1*x2 + 3 * x2 * x1", 2).coefficient(Exponent{1, 1}) == 5.0);
  CHECK(testsupport::example33().num_terms() == 10);
}

TEST_CASE("parse accepts scientific coefficients, bare constants and whitespace") {
  Polynomial f = parse_polynomial(" -1.5e-1 * x2 ^ 3 + 4 - x1 ", 2);
  CHECK(f.coefficient(Exponent{0, 3}) == doctest::Approx(-0.15));
  CHECK(f.coefficient(Exponent{0, 0}) == 4.0);
  CHECK(f.coefficient(Exponent{1, 0}) == -1.0);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_polynomial("x1 + ", 1), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 * * x2", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("", 2), ParseError);
  try {
    parse_polynomial("x1 + y2", 2);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("support is the stored key set") {
  auto s = support(parse_polynomial("1+x1+x1^8", 1));
  CHECK(s == std::vector<Exponent>{Exponent{0}, Exponent{1}, Exponent{8}});
  CHECK(support(Polynomial(3)).empty());

  Gen g(11);
  for (int rep = 0; rep < 20; ++rep) {
    std::map<Exponent, double, GradedLess> ref;
    Polynomial f(3);
    auto pool = testsupport::all_exponents(3, 4);
    for (int t = 0; t < 12; ++t) {
      Exponent e = pool[g.below(pool.size())];
      f.add_term(e, 1.0);
      ref[e] += 1.0;
    }
    CHECK(support(f).size() == ref.size());
  }
}

TEST_CASE("sign types") {
  CHECK(sign_type(Exponent{2, 0, 4}).is_even());
  CHECK(sign_type(Exponent{1, 2}).bits == std::vector<std::uint8_t>{1, 0});

  std::map<std::vector<std::uint8_t>, int> census;
  for (const auto& e : testsupport::all_exponents(3, 2)) census[sign_type(e).bits]++;
  // Brute count of N^3_2 by parity class.
  std::map<std::vector<std::uint8_t>, int> brute;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b)
      for (int c = 0; a + b + c <= 2; ++c)
        brute[{static_cast<std::uint8_t>(a % 2), static_cast<std::uint8_t>(b % 2), static_cast<std::uint8_t>(c % 2)}]++;
  CHECK(census == brute);

  Gen g(5);
  auto pool = testsupport::all_exponents(4, 5);
  for (int rep = 0; rep < 200; ++rep) {
    const auto& a = pool[g.below(pool.size())];
    const auto& b = pool[g.below(pool.size())];
    CHECK(sign_type(a + b) == (sign_type(a) ^ sign_type(b)));
  }
}

TEST_CASE("evaluate") {
  Polynomial f = parse_polynomial("1+x1+x1^8", 1);
  std::vector<double> one{1.0};
  CHECK(f.evaluate(one) == 3.0);
  std::vector<double> zero(3, 0.0);
  CHECK(testsupport::example33().evaluate(zero) == 0.0);

  // Straight-line evaluation of the Rosenbrock sum.
  Polynomial r = gen_rosenbrock(10);
  std::vector<double> ones(10, 1.0);
  CHECK(r.evaluate(ones) == doctest::Approx(1.0));
  Gen g(3);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(10);
    for (auto& v : x) v = g.real(-1.5, 1.5);
    double ref = 1.0;
    for (std::size_t i = 1; i < 10; ++i)
      ref += 100.0 * (x[i] - x[i - 1] * x[i - 1]) * (x[i] - x[i - 1] * x[i - 1]) + (1.0 - x[i]) * (1.0 - x[i]);
    CHECK(r.evaluate(x) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("evaluate is linear and support of a sum is contained in the union") {
  Gen g(17);
  for (int rep = 0; rep < 30; ++rep) {
    Polynomial f = random_polynomial(3, 4, 8, g), h = random_polynomial(3, 4, 8, g);
    std::vector<double> x{g.real(-1, 1), g.real(-1, 1), g.real(-1, 1)};
    CHECK((f + 2.0 * h).evaluate(x) == doctest::Approx(f.evaluate(x) + 2.0 * h.evaluate(x)).epsilon(1e-12));
    auto sf = support(f), sh = support(h);
    for (const auto& e : support(f + h)) {
      bool in = std::find(sf.begin(), sf.end(), e) != sf.end() || std::find(sh.begin(), sh.end(), e) != sh.end();
      CHECK(in);
    }
  }
}

TEST_CASE("print and parse round trip") {
  Gen g(23);
  for (int rep = 0; rep < 50; ++rep) {
    Polynomial f = random_polynomial(4, 5, 10, g);
    if (rep % 3 == 0) f = f * g.real(-3.0, 3.0);
    CHECK(parse_polynomial(f.to_string(), 4) == f);
  }
  CHECK(parse_polynomial(Polynomial(2).to_string(), 2).is_zero());
}

TEST_CASE("arithmetic drops negligible coefficients") {
  Polynomial a = parse_polynomial("x1 + 1e-15*x2", 2);
  Polynomial b = a * 1.0;
  CHECK(b.num_terms() == 1);
  Polynomial c = parse_polynomial("x1 + x2", 2);
  Polynomial d = c - parse_polynomial("x2", 2);
  CHECK(d == parse_polynomial("x1", 2));
  CHECK((c * c).coefficient(Exponent{1, 1}) == 2.0);
  CHECK(c.pow(3).num_terms() == 4);
  CHECK_THROWS(c + parse_polynomial("x1", 1));
}

TEST_CASE("POP files") {
  PopProblem p = parse_pop("# demo\nnvars 3\nx1^2 + x2\n - x3\nsubject to\n1 - x1^2 - x2^2\nx3\n");
  CHECK(p.nvars() == 3);
  CHECK(p.objective == parse_polynomial("x1^2 + x2 - x3", 3));
  REQUIRE(p.constraints.size() == 2);
  CHECK(p.min_relaxation_order() == 1);
  CHECK(parse_pop(format_pop(p)).objective == p.objective);
  CHECK(parse_pop(format_pop(p)).constraints == p.constraints);

  PopProblem q = parse_pop("x1*x4^3\n");
  CHECK(q.nvars() == 4);
  CHECK(q.unconstrained());
  CHECK(q.min_relaxation_order() == 2);

  CHECK_THROWS(parse_pop("subject to\nx1\n"));
  CHECK_THROWS(parse_pop("nvars 0\nx1\n"));
  CHECK_THROWS(parse_pop("nvars 1\nx2\n"));
}
