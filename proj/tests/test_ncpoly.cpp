#include <doctest.h>

#include "generators.hpp"
#include "qpoincare/tensorcalc.hpp"

using namespace qpoincare;
using qpoincare::testing::Gen;
using qpoincare::testing::sector_letters;

namespace {
NCPoly g(const char *name) { return NCPoly::gen(name); }
} // namespace

TEST_CASE("alphabet layout") {
  const Alphabet &A = Alphabet::standard();
  CHECK(A[A.entry(Sector::P, 1, 2)].name == "P12");
  CHECK(A[A.entry(Sector::Gb, 2, 1)].name == "Gb21");
  CHECK(A.find("T22") == A.entry(Sector::T, 2, 2));
  CHECK(A[A.p_component(0)].name == "P0");
  CHECK(A[A.j_component(2, 3)].name == "J23");
  CHECK(!A.find("Q11").has_value());
  for (const Generator &gen : A.generators())
    CHECK(A.find(gen.name) == gen.id);
}

TEST_CASE("canonical terms") {
  NCPoly x = g("P11") * g("P22") - g("P22") * g("P11");
  CHECK(x.size() == 2);
  CHECK(x - x == NCPoly());
  CHECK((x + x).coefficient(Word(std::string{char(0), char(3)})) == Scalar(2));
  CHECK(commutator(g("P11"), g("P11")).is_zero());
  CHECK(NCPoly(Scalar(0)).is_zero());
  CHECK(NCPoly(3).is_scalar());
  CHECK((g("G11") * NCPoly(2)).degree() == 1);
}

TEST_CASE("degree is additive") {
  Gen gen(5);
  auto letters = sector_letters({Sector::P, Sector::G});
  for (int round = 0; round < 50; ++round) {
    NCPoly x = gen.ncpoly(letters), y = gen.ncpoly(letters);
    if (x.is_zero() || y.is_zero())
      continue;
    CHECK((x * y).degree() == x.degree() + y.degree());
  }
}

TEST_CASE("ring laws on random polynomials") {
  Gen gen(9);
  auto letters = sector_letters({Sector::P, Sector::Gb});
  for (int round = 0; round < 30; ++round) {
    NCPoly x = gen.ncpoly(letters), y = gen.ncpoly(letters), z = gen.ncpoly(letters);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(commutator(x, y) == -commutator(y, x));
    NCPolyBuilder b;
    b.add(x);
    b.add(y, Scalar(-1));
    CHECK(b.build() == x - y);
  }
}

TEST_CASE("dagger on hermitian sectors") {
  CHECK(dagger(g("P12")) == g("P21"));
  CHECK(dagger(g("P11")) == g("P11"));
  CHECK(dagger(g("W21")) == g("W12"));
  CHECK(dagger(NCPoly(Scalar::i()) * g("P11")) == NCPoly(-Scalar::i()) * g("P11"));

  Gen gen(13);
  auto letters = sector_letters({Sector::P, Sector::W});
  for (int round = 0; round < 40; ++round) {
    NCPoly x = gen.ncpoly(letters), y = gen.ncpoly(letters);
    CHECK(dagger(dagger(x)) == x);
    CHECK(dagger(x * y) == dagger(y) * dagger(x));
  }
}

TEST_CASE("dagger on Gamma is linear and anti-multiplicative") {
  // Gamma^dagger = Gamma-bar^-1, T^dagger = T-bar^-1, entrywise.
  OpMatrix2 gbi = gamma_bar_inverse(), tbi = t_inverse(Sector::Tb);
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) {
      const Alphabet &A = Alphabet::standard();
      CHECK(dagger(NCPoly::gen(A.entry(Sector::G, c, r))) == gbi(r, c));
      CHECK(dagger(NCPoly::gen(A.entry(Sector::T, c, r))) == tbi(r, c));
    }
  for (GenId id : sector_letters({Sector::G, Sector::Gb, Sector::T, Sector::Tb}))
    CHECK(dagger_image(id).degree() == 1);
  Gen gen(17);
  auto letters = sector_letters({Sector::G, Sector::Gb, Sector::P});
  for (int round = 0; round < 25; ++round) {
    NCPoly x = gen.ncpoly(letters), y = gen.ncpoly(letters);
    CHECK(dagger(x * y) == dagger(y) * dagger(x));
    CHECK(dagger(x + y) == dagger(x) + dagger(y));
  }
}

TEST_CASE("generator substitution is a homomorphism") {
  Gen gen(21);
  auto letters = sector_letters({Sector::P});
  std::map<GenId, NCPoly> table;
  for (GenId id : letters)
    table[id] = gen.ncpoly(sector_letters({Sector::G}), 2, 2);
  for (int round = 0; round < 20; ++round) {
    NCPoly x = gen.ncpoly(letters), y = gen.ncpoly(letters);
    CHECK((x * y).substitute_generators(table) == x.substitute_generators(table) * y.substitute_generators(table));
  }
}

TEST_CASE("parameter substitution") {
  NCPoly x = NCPoly(Scalar::param(Param::q)) * g("P11") - g("P11");
  CHECK(x.substitute({{Param::q, GaussRational(1)}}).is_zero());
  CHECK(x.substitute({{Param::q, GaussRational(4)}}) == NCPoly(3) * g("P11"));
  CHECK(x.str() == "(q - 1)*P11");
}
