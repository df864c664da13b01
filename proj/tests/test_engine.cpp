#include <doctest.h>

#include "generators.hpp"
#include "qpoincare/engine.hpp"

using namespace qpoincare;
using qpoincare::testing::Gen;
using qpoincare::testing::sector_letters;

namespace {

NCPoly g(const char *name) { return NCPoly::gen(name); }
NCPoly sc(const Scalar &s) { return NCPoly(s); }

const RelationSet &relations() {
  static const RelationSet r = build_defining_relations();
  return r;
}

const RewriteSystem &standard_system() {
  static const RewriteSystem s = orient(relations(), MonomialOrder::standard());
  return s;
}

MonomialOrder literal() { return MonomialOrder::from_precedence("Tb>T>Gb>G[11>12>21>22]>P"); }

} // namespace

TEST_CASE("orienting single relations") {
  Scalar q = Scalar::q_power(1), q2 = Scalar::q_power(2);

  RewriteRule lit = orient_relation(gamma_unimodularity(), literal());
  CHECK(lit.lhs == (g("G11") * g("G22")).terms()[0].first);
  CHECK(lit.rhs == sc(1) + sc(q2) * g("G21") * g("G12"));

  RewriteRule def = orient_relation(gamma_unimodularity(), MonomialOrder::standard());
  CHECK(def.lhs == (g("G21") * g("G12")).terms()[0].first);
  CHECK(def.rhs == sc(q2.inverse()) * (g("G11") * g("G22") - sc(1)));

  RewriteRule t = orient_relation(t_unimodularity(Sector::T), MonomialOrder::standard());
  CHECK(t.lhs == (g("T11") * g("T22")).terms()[0].first);
  CHECK(t.rhs == sc(1) + sc(q) * g("T12") * g("T21"));

  CHECK_THROWS_AS(orient_relation(NCPoly(), MonomialOrder::standard()), OrientationError);
}

TEST_CASE("deglex order") {
  const MonomialOrder &o = MonomialOrder::standard();
  Word p11 = Word::single(*Alphabet::standard().find("P11"));
  Word g11 = Word::single(*Alphabet::standard().find("G11"));
  Word tb = Word::single(*Alphabet::standard().find("Tb22"));
  CHECK(o.less(p11, g11));
  CHECK(o.less(g11, tb));
  CHECK(o.less(g11, p11 * p11));
  CHECK(!o.less(p11, p11));
}

TEST_CASE("precedence parsing") {
  CHECK_NOTHROW(MonomialOrder::from_precedence("Tb>T>Gb>G>P"));
  CHECK_THROWS_AS(MonomialOrder::from_precedence("Tb>T>X>P"), std::invalid_argument);
  CHECK_THROWS_AS(MonomialOrder::from_precedence("G>G"), std::invalid_argument);
  CHECK_THROWS_AS(MonomialOrder::from_precedence("G[11>12"), std::invalid_argument);
}

TEST_CASE("orientation under bindings") {
  RelationSet set("bound");
  set.add("r", sc(Scalar::q_power(1) - 1) * g("P11") * g("P22") + g("P12"));
  CHECK_THROWS_AS(orient(set, MonomialOrder::standard(), {}, {{Param::q, GaussRational(1)}}), OrientationError);
  CHECK_NOTHROW(orient(set, MonomialOrder::standard(), {}, {{Param::q, GaussRational(4)}}));
}

TEST_CASE("standard system") {
  const RewriteSystem &sys = standard_system();
  CHECK(sys.rules().size() == 68);
  CHECK(overlap_report(sys, 3).empty());
  Reducer red(sys);
  for (const auto &r : relations().relations())
    CHECK(red.reduces_to_zero(r.poly));
  CHECK(!red.reduces_to_zero(g("P11")));
  CHECK(red.normal_form(g("P22") * g("P11")) == red.normal_form(g("P11") * g("P22")));
}

TEST_CASE("the literal order leaves unresolved overlaps") {
  RewriteSystem sys = orient(relations(), literal());
  CHECK(!overlap_report(sys, 3).empty());
}

TEST_CASE("normal forms are idempotent and linear") {
  Reducer red(standard_system());
  Gen gen(29);
  auto letters = sector_letters({Sector::P, Sector::G, Sector::Gb});
  for (int round = 0; round < 40; ++round) {
    NCPoly x = gen.ncpoly(letters), y = gen.ncpoly(letters);
    Scalar c = gen.nonzero_scalar();
    NCPoly nx = red.normal_form(x);
    CHECK(red.normal_form(nx) == nx);
    CHECK(red.normal_form(x + y) == nx + red.normal_form(y));
    CHECK(red.normal_form(x.scaled(c)) == nx.scaled(c));
    for (const auto &t : nx.terms())
      CHECK(!standard_system().find_redex(t.first).has_value());
  }
}

TEST_CASE("caps") {
  RewriteSystem sys = standard_system();
  sys.set_caps(Caps{10, 1});
  NCPoly x = g("P11") * g("P11") * g("P22") * g("P22");
  Reduction r = normal_form(x, sys);
  CHECK(r.status == ReductionStatus::step_cap);
  Reducer red(sys);
  CHECK_THROWS_AS(red.normal_form(x), CapExceeded);

  RewriteSystem shallow = standard_system();
  shallow.set_caps(Caps{3, 1'000'000});
  CHECK(normal_form(x, shallow).status == ReductionStatus::degree_cap);
  CHECK(normal_form(g("P22") * g("P11"), shallow).complete());
}

TEST_CASE("membership with certificates") {
  NCPoly c3 = gamma_unimodularity();
  NCPoly x = g("P11") * c3 - c3 * g("G22");
  MembershipVerdict v = ideal_membership(x, relations(), 3, MonomialOrder::standard());
  REQUIRE(v.status == MembershipStatus::member);
  CHECK(expand_certificate(v.certificate, relations()) == x);
  CHECK(certificate_to_json(v, relations()).contains("terms"));

  MembershipVerdict no = ideal_membership(g("P11"), relations(), 2, MonomialOrder::standard());
  CHECK(no.status == MembershipStatus::not_member_at_degree);

  MembershipOptions tiny;
  tiny.max_rows = 5;
  CHECK(ideal_membership(x, relations(), 3, MonomialOrder::standard(), tiny).status ==
        MembershipStatus::inconclusive);
}

TEST_CASE("membership agrees with reduction to zero") {
  std::set<GenId> p;
  for (GenId id : sector_letters({Sector::P}))
    p.insert(id);
  RelationSet p_rel = relations().restricted_to(p);
  RewriteSystem sys = orient(p_rel, MonomialOrder::standard());
  Reducer red(sys);
  MembershipOracle oracle(p_rel, 3, MonomialOrder::standard());
  Gen gen(31);
  for (int round = 0; round < 30; ++round) {
    NCPoly x = gen.ncpoly(sector_letters({Sector::P}), 3, 3);
    NCPoly d = x - red.normal_form(x);
    CHECK(oracle.test(d).status == MembershipStatus::member);
    if (!red.normal_form(x).is_zero())
      CHECK(oracle.test(x).status != MembershipStatus::member);
  }
}

TEST_CASE("null space and linear ansatz") {
  auto ns = null_space({{{0, Scalar(1)}, {1, Scalar(1)}}, {{2, Scalar(1)}}}, 3);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == -ns[0][1]);
  CHECK(ns[0][2].is_zero());

  Reducer red(standard_system());
  AnsatzSolution sol = linear_ansatz_solve({{g("P11") * g("P22")}, {g("P22") * g("P11")}}, red);
  CHECK(sol.unknowns == 2);
  REQUIRE(sol.basis.size() == 1);
  CHECK(sol.basis[0][0] == -sol.basis[0][1]);
}
