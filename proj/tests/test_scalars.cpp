#include <doctest.h>

#include "generators.hpp"
#include "qpoincare/scalars.hpp"

using namespace qpoincare;
using qpoincare::testing::Gen;

TEST_CASE("gauss rationals") {
  GaussRational z(mpq_class(1, 2), mpq_class(-3, 4));
  CHECK(z * z.inverse() == GaussRational(1));
  CHECK(z.conj().conj() == z);
  CHECK(GaussRational::i() * GaussRational::i() == GaussRational(-1));
  CHECK_THROWS_AS(GaussRational(0).inverse(), DivisionByZero);
}

TEST_CASE("field axioms on random rational functions") {
  Gen g(7);
  for (int round = 0; round < 40; ++round) {
    Scalar x = g.scalar(), y = g.scalar(), z = g.scalar();
    CHECK((x + y) + z == x + (y + z));
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == Scalar(0));
    Scalar n = g.nonzero_scalar();
    CHECK(n * n.inverse() == Scalar(1));
    CHECK((x / n) * n == x);
    CHECK(x.conj().conj() == x);
    CHECK((x * y).conj() == x.conj() * y.conj());
  }
}

TEST_CASE("canonical form makes equal values identical") {
  Scalar q = Scalar::param(Param::q);
  Scalar a = (q * q - 1) / (q - 1);
  CHECK(a == q + 1);
  CHECK(a.denominator() == Polynomial(GaussRational(1)));
  CHECK(a.hash() == (q + 1).hash());
  CHECK(Scalar::q_half_power(1) * Scalar::q_half_power(1) == q);
  CHECK(Scalar::q_power(-2) * q * q == Scalar(1));
  CHECK(q.pow(-3) == Scalar::q_power(-3));
}

TEST_CASE("gcd divides both arguments") {
  Gen g(11);
  for (int round = 0; round < 30; ++round) {
    Polynomial f = g.poly(2), u = g.poly(2), v = g.poly(2);
    if (f.is_zero() || u.is_zero() || v.is_zero())
      continue;
    Polynomial a = f * u, b = f * v;
    Polynomial d = gcd(a, b);
    REQUIRE(!d.is_zero());
    CHECK_NOTHROW(a.divided_by(d));
    CHECK_NOTHROW(b.divided_by(d));
    // f divides the gcd.
    CHECK_NOTHROW(d.divided_by(f.monic()));
  }
}

TEST_CASE("common factors cancel") {
  Gen g(19);
  for (int round = 0; round < 30; ++round) {
    Polynomial f = g.poly(3), u = g.poly(3), v = g.poly(2);
    if (f.is_zero() || u.is_zero() || v.is_zero())
      continue;
    CHECK(Scalar::fraction(f * u, f * v) == Scalar::fraction(u, v));
    CHECK(Scalar::fraction(u, v) * Scalar::fraction(v, u) == Scalar(1));
  }
}

TEST_CASE("exact division refuses non-divisors") {
  Polynomial x = Polynomial::variable(Param::hbar);
  Polynomial one(GaussRational(1));
  CHECK((x * x - one).divided_by(x - one) == x + one);
  CHECK_THROWS_AS((x * x + one).divided_by(x - one), std::logic_error);
}

TEST_CASE("substitution") {
  Scalar q = Scalar::param(Param::q);
  Scalar h = Scalar::param(Param::hbar);
  Bindings b{{Param::q, GaussRational::fraction(9, 4)}, {Param::hbar, GaussRational(2)}};
  CHECK(Scalar::q_half_power(1).substitute(b) == Scalar::rational(3, 2));
  CHECK((q * h + 1).substitute(b) == Scalar::rational(11, 2));
  CHECK((h / (q - 1)).substitute({{Param::hbar, GaussRational(3)}}) == Scalar(3) / (q - 1));

  // Odd powers of q^(1/2) need a perfect square.
  CHECK_THROWS_AS(Scalar::q_half_power(1).substitute({{Param::q, GaussRational(2)}}), EvaluationError);
  CHECK(Scalar::q_half_power(2).substitute({{Param::q, GaussRational(2)}}) == Scalar(2));
  CHECK_THROWS_AS((h / (q - 1)).substitute({{Param::q, GaussRational(1)}}), EvaluationError);
}

TEST_CASE("substitution is a ring homomorphism") {
  Gen g(3);
  Bindings b{{Param::q, GaussRational::fraction(4, 9)}, {Param::hbar, GaussRational::fraction(-5, 3)},
             {Param::a, GaussRational(7)}};
  for (int round = 0; round < 25; ++round) {
    Scalar x = g.scalar(), y = g.scalar();
    try {
      CHECK((x * y).substitute(b) == x.substitute(b) * y.substitute(b));
      CHECK((x + y).substitute(b) == x.substitute(b) + y.substitute(b));
    } catch (const EvaluationError &) {
      // a random denominator vanished at the sample point
    }
  }
}

TEST_CASE("names and printing") {
  CHECK(param_from_name("lambda") == Param::lambda);
  CHECK(param_from_name("hbar") == Param::hbar);
  CHECK(!param_from_name("x").has_value());
  CHECK(std::string(param_name(Param::beta)) == "beta");
  CHECK(Scalar(0).str() == "0");
  CHECK(Scalar::rational(-3, 4).str() == "-3/4");
  CHECK(Scalar::i().conj() == -Scalar::i());
  CHECK(Scalar::param(Param::q).depends_on(Param::q));
  CHECK(!Scalar::param(Param::q).depends_on(Param::hbar));
}
