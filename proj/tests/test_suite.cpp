#include <doctest.h>

#include <set>

#include "qpoincare/suite.hpp"

using namespace qpoincare;

namespace {

NCPoly g(const char *name) { return NCPoly::gen(name); }

std::size_t error_position(const std::string &text) {
  try {
    parse_expression(text);
  } catch (const ParseError &e) {
    return e.position();
  }
  FAIL("no parse error for " << text);
  return 0;
}

SuiteConfig sampled_config() {
  SuiteConfig c;
  c.mode = RunMode::sampled;
  c.samples = 3;
  c.seed = 5;
  return c;
}

} // namespace

TEST_CASE("parser") {
  Scalar q2 = Scalar::q_power(2);
  CHECK(parse_expression("G11*G22 - q^2*G21*G12 - 1") == gamma_unimodularity());
  CHECK(parse_expression("(P12)†") == g("P21"));
  CHECK(parse_expression("P12† * P21†") == g("P21") * g("P12"));
  CHECK(parse_expression("[P11, P22]") == g("P11") * g("P22") - g("P22") * g("P11"));
  CHECK(parse_expression("-P11 + 2*P22") == NCPoly(2) * g("P22") - g("P11"));
  CHECK(parse_expression("q^(3/2) * q^(1/2)") == NCPoly(q2));
  CHECK(parse_expression("q^-2 * q^2") == NCPoly(1));
  CHECK(parse_expression("1/(2*lambda)") == NCPoly(Scalar(1) / (Scalar(2) * Scalar::param(Param::lambda))));
  CHECK(parse_expression("i*i") == NCPoly(-1));
  CHECK(parse_expression("P11^3") == g("P11") * g("P11") * g("P11"));
  CHECK(parse_expression("2 - 3 - 4") == NCPoly(-5));
  CHECK(parse_expression("K1") == g("P11") + NCPoly(q2) * g("P22"));
  CHECK(parse_expression("C2") == parse_expression("C2a"));
  CHECK(parse_expression("W11", {false}) == g("W11"));
  CHECK(parse_expression("W11") != g("W11"));
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_position("P11 +") == 5);
  CHECK(error_position("P11 + X7") == 6);
  CHECK(error_position("P11 / P22") == 4);
  CHECK(error_position("P11^(1/2)") == 3);
  CHECK(error_position("q^(1/3)") == 6);
  CHECK(error_position("(P11") == 4);
  CHECK(error_position("[P11 P22]") == 5);
  CHECK(error_position("P11 )") == 4);
  CHECK(error_position("1/(q-q)") == 1);
  CHECK_THROWS_WITH_AS(parse_expression("Z"), "position 0: unknown symbol 'Z'", ParseError);
}

TEST_CASE("registry covers every claim") {
  const std::vector<std::string> required = {
      "qybe", "classical-ybe", "det-centrality", "gamma-inverse", "t-inverse", "dagger-involution",
      "relation-self-reduction", "engine-confluence", "engine-self-consistency", "w-relations",
      "w-hermiticity", "casimir-C1", "casimir-C2", "casimir-identities", "adjugate-P", "adjugate-W",
      "adjugate-ansatz-P", "adjugate-ansatz-W", "trq-cyclic", "trq-asymmetry", "scalar-product-invariance",
      "commuting-set", "commuting-set-k5", "k3-vs-k5", "det-omega", "omega-universal", "k-commutators",
      "covariance", "covariance-w", "pp-covariance-chain", "k2-alternate-form", "classical-casimir-equality",
      "classical-limit-pp", "classical-limit-gg", "classical-limit-ggb", "classical-limit-pg",
      "classical-limit-wg", "classical-limit-wgb", "classical-limit-pw", "classical-limit-ww",
      "canonical-limit-pp", "canonical-limit-gg", "canonical-limit-ggb", "canonical-limit-pg",
      "canonical-limit-components", "pauli-lubanski-limit", "omega-limit", "r-vs-exp", "completeness-scan"};
  std::set<std::string> seen;
  for (const auto &spec : check_registry()) {
    CAPTURE(spec.name);
    CHECK(seen.insert(spec.name).second);
    CHECK(!spec.anchor.empty());
    CHECK(static_cast<bool>(spec.run));
  }
  for (const auto &name : required) {
    CAPTURE(name);
    CHECK(find_check(name) != nullptr);
  }
  CHECK(find_check("completeness-scan")->optional);
  CHECK(find_check("trq-asymmetry")->expected == Expectation::nonzero_witness);
  CHECK(find_check("k3-vs-k5")->expected == Expectation::nonzero_witness);
  auto defaults = default_check_names();
  CHECK(std::find(defaults.begin(), defaults.end(), "completeness-scan") == defaults.end());
  CHECK_THROWS_AS(run_checks({"no-such-check"}, SuiteConfig{}), std::invalid_argument);
}

TEST_CASE("sample bindings") {
  auto a = sample_bindings(42, 4), b = sample_bindings(42, 4), c = sample_bindings(43, 4);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto &s : a) {
    const GaussRational &q = s.at(Param::q);
    CHECK(q.is_real());
    CHECK(q != GaussRational(1));
    mpz_class n = q.re().get_num(), d = q.re().get_den();
    CHECK(mpz_perfect_square_p(n.get_mpz_t()));
    CHECK(mpz_perfect_square_p(d.get_mpz_t()));
    for (Param p : {Param::hbar, Param::lambda, Param::a, Param::beta})
      CHECK(!s.at(p).is_zero());
  }
}

TEST_CASE("reports are deterministic without timing") {
  const std::vector<std::string> names = {"qybe", "trq-asymmetry", "det-omega", "gamma-inverse"};
  SuiteConfig cfg = sampled_config();
  auto first = reports_to_json(run_checks(names, cfg), cfg, false);
  auto second = reports_to_json(run_checks(names, cfg), cfg, false);
  CHECK(first.dump() == second.dump());
  CHECK(first["summary"]["pass"] == 4);
  CHECK(first["checks"][0].contains("bindings"));
  CHECK(!first["checks"][0].contains("wallMillis"));
}

TEST_CASE("exact and sampled modes agree") {
  const std::vector<std::string> names = {"gamma-inverse", "casimir-C1", "det-omega", "trq-asymmetry",
                                          "k-commutators", "adjugate-P"};
  auto exact = run_checks(names, SuiteConfig{});
  auto sampled = run_checks(names, sampled_config());
  REQUIRE(exact.size() == sampled.size());
  for (std::size_t k = 0; k < exact.size(); ++k) {
    CAPTURE(exact[k].name);
    CHECK(exact[k].status == CheckStatus::pass);
    CHECK(sampled[k].status == exact[k].status);
    CHECK(sampled[k].bindings.size() == 3);
  }
}

TEST_CASE("limit checks stay exact in sampled mode") {
  auto r = run_checks({"r-vs-exp"}, sampled_config());
  REQUIRE(r.size() == 1);
  CHECK(r[0].status == CheckStatus::pass);
  CHECK(r[0].mode == RunMode::exact);
}

TEST_CASE("a wrong relation is caught at a sampled point") {
  Bindings b = sample_bindings(9, 1)[0];
  RelationSet good = build_defining_relations().substitute(b);
  RelationSet bad("mutated");
  for (const auto &r : good.relations())
    bad.add(r.label, r.label == "pg[2,3]" ? r.poly + g("P11") * g("G11") : r.poly);

  NCPoly c1 = parse_expression("C1").substitute(b);
  RewriteSystem ok = orient(good, MonomialOrder::standard());
  RewriteSystem broken = orient(bad, MonomialOrder::standard());
  Reducer rok(ok), rbroken(broken);
  int nonzero = 0;
  for (const char *gen : {"P11", "P12", "P21", "P22", "G11", "G12", "G21", "G22", "Gb11", "Gb12", "Gb21", "Gb22"}) {
    NCPoly x = commutator(c1, g(gen));
    CHECK(rok.normal_form(x).is_zero());
    nonzero += !rbroken.normal_form(x).is_zero();
  }
  CHECK(nonzero > 0);
}

TEST_CASE("caps turn into inconclusive results") {
  SuiteConfig cfg;
  cfg.caps.max_steps = 3;
  auto r = run_checks({"casimir-C1"}, cfg);
  CHECK(r[0].status == CheckStatus::inconclusive);
  CHECK(report_line(r[0]).rfind("INCONCLUSIVE", 0) == 0);
}
