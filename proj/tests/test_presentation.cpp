#include <doctest.h>

#include "qpoincare/limits.hpp"
#include "qpoincare/presentation.hpp"
#include "qpoincare/suite.hpp"

using namespace qpoincare;

namespace {

NCPoly g(const char *name) { return NCPoly::gen(name); }
NCPoly parse(const std::string &s) { return parse_expression(s); }

const std::map<std::string, Mat4> &base() {
  static const auto m = base_relation_residuals(generator_matrix(Sector::P), generator_matrix(Sector::G),
                                                generator_matrix(Sector::Gb));
  return m;
}

const Relation *find(const RelationSet &set, const std::string &label) {
  for (const auto &r : set.relations())
    if (r.label == label)
      return &r;
  return nullptr;
}

// x == c * y for some nonzero Scalar c.
bool proportional(const NCPoly &x, const NCPoly &y) {
  if (x.is_zero() || y.is_zero())
    return x.is_zero() && y.is_zero();
  Scalar c = x.terms()[0].second / y.coefficient(x.terms()[0].first);
  return !c.is_zero() && x == y.scaled(c);
}

} // namespace

// Reference entries computed independently with a computer algebra system.
TEST_CASE("pp entries") {
  const Mat4 &pp = base().at("pp");
  CHECK(pp(1, 4).is_zero());
  CHECK(pp(4, 1).is_zero());
  CHECK(pp(2, 2) == parse("P11*P22 - P22*P11"));
  CHECK(pp(2, 3) == parse("(1/q)*P12*P21 + (-1/q)*P21*P12 + (-q+1/q)*P22*P11 + (q-1/q)*P22*P22"));
  CHECK(pp(3, 2) == parse("(q-1/q)*P11*P22 + (-1/q)*P12*P21 + (1/q)*P21*P12 + (-q+1/q)*P22*P22"));
}

TEST_CASE("pg entries") {
  const Mat4 &pg = base().at("pg");
  CHECK(pg(1, 4) == parse("(-1)*G12*P12 + (1/q)*P12*G12"));
  CHECK(pg(4, 1) == parse("(-1)*G21*P21 + (1/q)*P21*G21"));
  CHECK(pg(2, 3) == parse("(-1)*G21*P12 + (q^2-1)*G22*P22 + (q-1/q)*P11*G11 + (q)*P12*G21 + (-q+1/q)*P22*G11"));
  CHECK(pg(3, 2) == parse("(q^2-1)*G11*P22 + (-1)*G12*P21 + (q)*P21*G12"));
  CHECK(pg(2, 2) ==
        parse("(q-1/q)*G21*P12 + (-q)*G22*P11 + (-q^3+2*q-1/q)*G22*P22 + P11*G22 + (1-q^2)*P21*G12"));
}

TEST_CASE("relation set keeps the reference entries up to scale") {
  RelationSet rels = build_defining_relations();
  for (const char *label : {"pp[2,3]", "pp[3,2]", "pg[2,3]", "pg[1,4]"}) {
    const Relation *r = find(rels, label);
    REQUIRE(r != nullptr);
    int row = label[3] - '0', col = label[5] - '0';
    CHECK(proportional(r->poly, base().at(std::string(label, 2))(row, col)));
  }
  CHECK(find(rels, "pp[1,4]") == nullptr);
}

TEST_CASE("base relations degenerate to commutators at q = 1") {
  for (const auto &[name, m] : base())
    for (const NCPoly &e : m.entries())
      CHECK(commutative_sort(e.substitute({{Param::q, GaussRational(1)}})).is_zero());
}

TEST_CASE("relation set insertion") {
  RelationSet set("scratch");
  NCPoly c = commutator(g("P11"), g("P12"));
  CHECK(set.add("a", c));
  CHECK(!set.add("b", c.scaled(Scalar::param(Param::q))));
  CHECK(!set.add("zero", NCPoly()));
  CHECK(set.size() == 1);
  CHECK(set.close_under_dagger() == 1);
  CHECK(set.relations().back().poly == commutator(g("P21"), g("P11")));
  CHECK(set.close_under_dagger() == 0);
  CHECK(set.to_json()["relations"].size() == 2);
  CHECK(set.without("dagger(").size() == 1);
}

TEST_CASE("presentation options") {
  PresentationOptions plain;
  plain.with_unimodularity = false;
  plain.with_dagger_closure = false;
  RelationSet a = build_defining_relations(plain);
  RelationSet b = build_defining_relations();
  CHECK(b.size() > a.size());
  CHECK(b.includes_unimodularity);
  CHECK(b.sectors() == std::set<Sector>{Sector::P, Sector::G, Sector::Gb});

  std::set<GenId> p_only;
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c)
      p_only.insert(Alphabet::standard().entry(Sector::P, r, c));
  RelationSet pp = b.restricted_to(p_only);
  CHECK(pp.size() > 0);
  for (const auto &r : pp.relations())
    CHECK(r.label.find("pp") != std::string::npos);

  PresentationOptions with_t;
  with_t.with_T = true;
  CHECK(build_defining_relations(with_t).sectors().count(Sector::T) == 1);
}

TEST_CASE("unimodularity") {
  Scalar q2 = Scalar::q_power(2);
  CHECK(gamma_unimodularity() == g("G11") * g("G22") - NCPoly(q2) * g("G21") * g("G12") - NCPoly(1));
  CHECK(t_unimodularity(Sector::T) ==
        g("T11") * g("T22") - NCPoly(Scalar::q_power(1)) * g("T12") * g("T21") - NCPoly(1));
}

TEST_CASE("commuting set and Casimirs") {
  auto k = define_omega_and_K();
  CHECK(k.at("K1") == g("P11") + NCPoly(Scalar::q_power(2)) * g("P22"));
  CHECK(k.at("K3") == g("P22"));
  CHECK(define_omega_and_K(K3Choice::P11).at("K3") == g("P11"));

  // C1 is the mass shell p^2 (signature -+++) at q = 1.
  NCPoly c1 = define_casimirs().at("C1").substitute({{Param::q, GaussRational(1)}});
  NCPoly p2 = -(ComponentMap::P(0) * ComponentMap::P(0));
  for (int k2 = 1; k2 <= 3; ++k2)
    p2 += ComponentMap::P(k2) * ComponentMap::P(k2);
  CHECK(commutative_sort(ComponentMap::standard().apply(c1)) == commutative_sort(p2));
}

TEST_CASE("transformed generators") {
  CHECK_THROWS_AS(define_transformed(Transformed::P, {}), MissingSector);
  PresentationOptions opt;
  opt.with_T = true;
  OpMatrix2 pt = define_transformed(Transformed::P, opt);

  // With T = T-bar = identity nothing moves.
  std::map<GenId, NCPoly> id;
  const Alphabet &A = Alphabet::standard();
  for (Sector s : {Sector::T, Sector::Tb})
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        id[A.entry(s, r, c)] = NCPoly(r == c ? 1 : 0);
  CHECK(pt.substitute_generators(id) == generator_matrix(Sector::P));
}
