// Runs the full suite in exact and sampled mode and prints one line per
// acceptance criterion. Exit status is 0 when every criterion passes or when
// the only failures are the documented discrepancies listed below, each with
// its pinned residue signature.

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qpoincare/suite.hpp"

using namespace qpoincare;

namespace {

// Pinned tolerances. Every algebraic check is an exact zero test; only the
// runtimes have budgets.
constexpr double kQybeMillis = 1000;
constexpr double kExactSuiteSeconds = 30 * 60;
constexpr double kSampledSuiteSeconds = 2 * 60;
constexpr int kSamples = 3;

struct KnownDiscrepancy {
  std::string check;
  std::string note; // must appear in the residue notes
  std::string reason;
};

const std::vector<KnownDiscrepancy> kKnown = {
    {"pauli-lubanski-limit", "residual equals -(3/2) hbar P entrywise",
     "at beta = 1 the hbar^1 residue is -(3/2) hbar P; beta = q^3 removes it"},
    {"omega-limit", "exactly twice the expected matrix",
     "(Omega - I)/lambda tends to twice the expected angular momentum matrix"},
};

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> checks;
};

std::vector<Criterion> criteria() {
  std::vector<Criterion> c = {
      {1, "Yang-Baxter equations", {"qybe", "classical-ybe"}},
      {2, "centrality of the unimodularity determinants", {"det-centrality"}},
      {3, "inverse matrices", {"gamma-inverse", "t-inverse"}},
      {4, "W relations and hermiticity", {"w-relations", "w-hermiticity"}},
      {5, "Casimir operators", {"casimir-C1", "casimir-C2", "casimir-identities"}},
      {6, "adjugates", {"adjugate-P", "adjugate-W", "adjugate-ansatz-P", "adjugate-ansatz-W"}},
      {7, "commuting sets", {"commuting-set", "commuting-set-k5", "k3-vs-k5", "det-omega"}},
      {8, "Omega universality", {"omega-universal"}},
      {9, "covariance", {"covariance", "covariance-w", "scalar-product-invariance", "pp-covariance-chain"}},
      {10, "limits", {}},
      {11, "engine self-consistency", {"engine-self-consistency", "engine-confluence", "relation-self-reduction"}},
  };
  for (const char *r : {"pp", "gg", "ggb", "pg", "wg", "wgb", "pw", "ww"})
    c[9].checks.push_back(std::string("classical-limit-") + r);
  for (const char *r : {"pp", "gg", "ggb", "pg"})
    c[9].checks.push_back(std::string("canonical-limit-") + r);
  for (const char *n : {"canonical-limit-components", "pauli-lubanski-limit", "omega-limit", "r-vs-exp"})
    c[9].checks.push_back(n);
  return c;
}

struct Run {
  std::map<std::string, CheckReport> reports;
  double seconds = 0;
};

Run run(const SuiteConfig &cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Run out;
  for (auto &r : run_checks(default_check_names(), cfg))
    out.reports.emplace(r.name, std::move(r));
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

const KnownDiscrepancy *known(const CheckReport &r) {
  for (const auto &k : kKnown) {
    if (k.check != r.name || r.status != CheckStatus::fail)
      continue;
    for (const auto &n : r.details.value("notes", nlohmann::json::array()))
      if (n.get<std::string>().find(k.note) != std::string::npos)
        return &k;
  }
  return nullptr;
}

} // namespace

int main() {
  SuiteConfig exact_cfg;
  SuiteConfig sampled_cfg;
  sampled_cfg.mode = RunMode::sampled;
  sampled_cfg.samples = kSamples;

  std::cout << "running the exact suite..." << std::endl;
  Run exact = run(exact_cfg);
  std::cout << "running the sampled suite (" << kSamples << " bindings)..." << std::endl;
  Run sampled = run(sampled_cfg);
  std::cout << std::fixed << std::setprecision(1) << "exact " << exact.seconds << " s, sampled " << sampled.seconds
            << " s\n\n";

  bool unexpected = false;
  std::vector<std::string> explained;
  std::set<std::string> covered;

  for (const auto &c : criteria()) {
    std::vector<std::string> problems;
    bool all_known = true;
    for (const auto &name : c.checks) {
      covered.insert(name);
      auto it = exact.reports.find(name);
      if (it == exact.reports.end()) {
        problems.push_back(name + ": not run");
        all_known = false;
        continue;
      }
      const CheckReport &r = it->second;
      if (r.status == CheckStatus::pass)
        continue;
      if (const KnownDiscrepancy *k = known(r)) {
        problems.push_back(name + ": known discrepancy");
        explained.push_back(name + ": " + k->reason);
      } else {
        problems.push_back(name + ": " + status_name(r.status) + (r.witness ? " (" + *r.witness + ")" : ""));
        all_known = false;
      }
    }

    if (c.number == 1) {
      double ms = exact.reports.at("qybe").wall_millis;
      if (ms >= kQybeMillis) {
        problems.push_back("qybe took " + std::to_string(ms) + " ms");
        all_known = false;
      }
    }
    if (c.number == 2) {
      const auto &r = exact.reports.at("det-centrality");
      if (!r.certificates || r.certificates->empty()) {
        problems.push_back("det-centrality: no membership certificates");
        all_known = false;
      }
    }
    if (c.number == 5) {
      for (const auto &name : c.checks) {
        const CheckReport &s = sampled.reports.at(name);
        std::set<std::string> qs;
        for (const auto &b : s.bindings)
          qs.insert(b.at(Param::q).re().get_str());
        if (s.status != exact.reports.at(name).status || s.mode != RunMode::sampled ||
            static_cast<int>(qs.size()) < kSamples) {
          problems.push_back(name + ": sampled mode disagrees");
          all_known = false;
        }
      }
    }
    if (c.number == 11) {
      if (exact.seconds > kExactSuiteSeconds) {
        problems.push_back("exact suite over budget");
        all_known = false;
      }
      if (sampled.seconds > kSampledSuiteSeconds) {
        problems.push_back("sampled suite over budget");
        all_known = false;
      }
    }

    std::cout << (problems.empty() ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.number << "  "
              << c.title;
    if (c.number == 1)
      std::cout << "  (qybe " << exact.reports.at("qybe").wall_millis << " ms, limit " << kQybeMillis << " ms)";
    if (c.number == 11)
      std::cout << "  (exact " << exact.seconds << " s, limit " << kExactSuiteSeconds << " s; sampled "
                << sampled.seconds << " s, limit " << kSampledSuiteSeconds << " s)";
    std::cout << "\n";
    for (const auto &p : problems)
      std::cout << "        " << p << "\n";
    unexpected = unexpected || (!problems.empty() && !all_known);
  }

  // Checks outside the numbered criteria must pass as well, in both modes.
  int extra = 0, extra_ok = 0;
  for (const auto &[name, r] : exact.reports) {
    if (covered.count(name))
      continue;
    ++extra;
    bool ok = r.status == CheckStatus::pass && sampled.reports.at(name).status == CheckStatus::pass;
    extra_ok += ok;
    if (!ok) {
      std::cout << "        " << name << ": " << status_name(r.status) << "\n";
      unexpected = true;
    }
  }
  for (const auto &[name, r] : sampled.reports)
    if (covered.count(name) && r.status != CheckStatus::pass && !known(exact.reports.at(name)) &&
        exact.reports.at(name).status == CheckStatus::pass) {
      std::cout << "        " << name << ": sampled " << status_name(r.status) << "\n";
      unexpected = true;
    }
  std::cout << "supplementary checks: " << extra_ok << "/" << extra << " pass in both modes\n";

  if (!explained.empty()) {
    std::cout << "\nknown discrepancies:\n";
    for (const auto &e : explained)
      std::cout << "  " << e << "\n";
  }
  std::cout << "\n" << (unexpected ? "unexpected failures" : "no unexpected failures") << "\n";
  return unexpected ? 1 : 0;
}
