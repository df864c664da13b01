#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qpoincare/limits.hpp"
#include "qpoincare/suite.hpp"

using namespace qpoincare;
using json = nlohmann::json;

namespace {

void write_json(const std::string &path, const json &doc) {
  if (path.empty())
    return;
  if (path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

int run_named(const std::vector<std::string> &names, const SuiteConfig &cfg, const std::string &json_path) {
  bool to_stdout = json_path == "-";
  auto reports = run_checks(names, cfg, [&](const CheckReport &r) {
    if (!to_stdout)
      std::cout << report_line(r) << std::endl;
  });
  int failed = 0;
  for (const auto &r : reports)
    failed += r.status != CheckStatus::pass;
  if (!to_stdout)
    std::cout << reports.size() - failed << "/" << reports.size() << " checks passed\n";
  write_json(json_path, reports_to_json(reports, cfg));
  return failed == 0 ? 0 : 1;
}

LimitResidue run_limit(const std::string &name, const std::string &beta) {
  const std::string cl = "classical-limit-", ca = "canonical-limit-";
  if (name.rfind(cl, 0) == 0)
    return classical_limit_check(name.substr(cl.size()));
  if (name == "canonical-limit-components")
    return canonical_component_check();
  if (name.rfind(ca, 0) == 0)
    return canonical_limit_check(name.substr(ca.size()));
  if (name == "pauli-lubanski-limit") {
    if (beta.empty())
      return pauli_lubanski_limit_check();
    NCPoly b = parse_expression(beta);
    if (!b.is_scalar())
      throw std::invalid_argument("--beta must be a parameter expression");
    return pauli_lubanski_limit_check(b.is_zero() ? Scalar(0) : b.terms()[0].second);
  }
  if (name == "omega-limit")
    return omega_limit_check();
  if (name == "r-vs-exp")
    return r_vs_exp_check();
  throw std::invalid_argument("unknown limit check '" + name + "'");
}

std::vector<std::string> limit_names() {
  std::vector<std::string> out;
  for (const auto &r : classical_limit_relations())
    out.push_back("classical-limit-" + r);
  for (const auto &r : canonical_limit_relations())
    out.push_back("canonical-limit-" + r);
  for (const char *n : {"canonical-limit-components", "pauli-lubanski-limit", "omega-limit", "r-vs-exp"})
    out.push_back(n);
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Symbolic checks for a two-parameter deformed Poincare algebra"};
  app.require_subcommand(1);
  app.fallthrough();

  SuiteConfig cfg;
  std::string mode = "exact", json_path;
  std::size_t step_cap = cfg.caps.max_steps;
  app.add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  app.add_option("--samples", cfg.samples, "random parameter bindings in sampled mode")->check(CLI::PositiveNumber);
  app.add_option("--degree-cap", cfg.caps.max_degree, "longest word the reducer accepts");
  app.add_option("--step-cap", step_cap, "rewrite steps per normal form");
  app.add_option("--precedence", cfg.precedence, "sector order, e.g. \"Tb>T>Gb>G[22>21>12>11]>P\"");
  app.add_flag("--with-T", cfg.with_T, "include the T sector in every engine");
  app.add_option("--json", json_path, "write a JSON report ('-' for stdout)");
  app.add_option("--seed", cfg.seed, "seed for sampled bindings and random inputs");

  auto *list = app.add_subcommand("list", "list registered checks");

  std::vector<std::string> names;
  auto *run = app.add_subcommand("run", "run the named checks");
  run->add_option("names", names, "check names")->required();

  bool include_optional = false;
  auto *run_all = app.add_subcommand("run-all", "run every registered check");
  run_all->add_flag("--include-optional", include_optional, "also run optional checks (completeness-scan)");

  std::string expr;
  auto *nf = app.add_subcommand("nf", "normal form of an expression");
  nf->add_option("expr", expr, "expression, e.g. \"G11*G22 - q^2*G21*G12\"")->required();

  std::string limit_name, beta;
  auto *limits = app.add_subcommand("limits", "run one limit check and print its residue");
  limits->add_option("name", limit_name, "limit check name, or 'all'")->required();
  limits->add_option("--beta", beta, "beta for pauli-lubanski-limit (default 1)");

  bool rules = false;
  int overlaps = 0;
  auto *dump = app.add_subcommand("dump-relations", "print the defining relations as JSON");
  dump->add_flag("--rules", rules, "include the oriented rewrite rules");
  dump->add_option("--overlaps", overlaps, "include the overlap report up to this degree");

  CLI11_PARSE(app, argc, argv);
  cfg.mode = mode == "sampled" ? RunMode::sampled : RunMode::exact;
  cfg.caps.max_steps = step_cap;

  try {
    if (*list) {
      json doc = json::array();
      for (const auto &s : check_registry()) {
        std::cout << s.name << (s.optional ? " (optional)" : "")
                  << (s.expected == Expectation::nonzero_witness ? " [expects nonzero witness]" : "") << "\n    "
                  << s.anchor << "\n";
        doc.push_back({{"name", s.name},
                       {"anchor", s.anchor},
                       {"expected", s.expected == Expectation::pass ? "pass" : "expected-nonzero-witness"},
                       {"sampled", s.sampled_applicable},
                       {"optional", s.optional}});
      }
      write_json(json_path, doc);
      return 0;
    }
    if (*run)
      return run_named(names, cfg, json_path);
    if (*run_all) {
      std::vector<std::string> all;
      for (const auto &s : check_registry())
        if (include_optional || !s.optional)
          all.push_back(s.name);
      return run_named(all, cfg, json_path);
    }
    if (*nf) {
      NCPoly x = parse_expression(expr);
      bool needs_T = cfg.with_T;
      for (GenId g : x.support()) {
        Sector s = Alphabet::standard()[g].sector;
        needs_T = needs_T || s == Sector::T || s == Sector::Tb;
      }
      CheckContext ctx(cfg, {});
      Reduction r = normal_form(x, ctx.reducer(needs_T).system());
      std::cout << (r.value.is_zero() ? "0" : r.value.str()) << "\n";
      if (!r.complete()) {
        std::cerr << "inconclusive: " << (r.status == ReductionStatus::degree_cap ? "degree" : "step")
                  << " cap exceeded; partial result shown\n";
        return 2;
      }
      write_json(json_path, {{"input", expr}, {"normalForm", r.value.str()}, {"steps", r.steps}});
      return 0;
    }
    if (*limits) {
      std::vector<std::string> todo = limit_name == "all" ? limit_names() : std::vector<std::string>{limit_name};
      json doc = json::array();
      bool ok = true;
      for (const auto &n : todo) {
        LimitResidue r = run_limit(n, beta);
        ok = ok && r.passed();
        std::cout << (r.passed() ? "PASS  " : "FAIL  ") << n << "  (through order " << r.checked_through << " in "
                  << param_name(r.variable) << ")\n";
        for (std::size_t k = 0; k < r.witnesses.size() && k < 4; ++k)
          std::cout << "      " << r.witnesses[k].where << ": " << r.witnesses[k].value.str() << "\n";
        for (const auto &note : r.notes)
          std::cout << "      note: " << note << "\n";
        doc.push_back(r.to_json());
      }
      write_json(json_path, doc);
      return ok ? 0 : 1;
    }
    if (*dump) {
      PresentationOptions opt;
      opt.with_T = cfg.with_T;
      RelationSet rels = build_defining_relations(opt);
      json doc = rels.to_json();
      if (rules || overlaps > 0) {
        CheckContext ctx(cfg, {});
        const RewriteSystem &sys = ctx.reducer(cfg.with_T).system();
        if (rules)
          doc["rewriteSystem"] = sys.to_json();
        if (overlaps > 0)
          doc["ambiguities"] = ambiguities_to_json(overlap_report(sys, overlaps));
      }
      if (json_path.empty())
        std::cout << doc.dump(2) << "\n";
      else
        write_json(json_path, doc);
      return 0;
    }
  } catch (const ParseError &e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
