#ifndef QPOINCARE_SUITE_HPP
#define QPOINCARE_SUITE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpoincare/engine.hpp"

namespace qpoincare {

// ---------------------------------------------------------------------------
// Expression parser

class ParseError : public std::invalid_argument {
public:
  ParseError(std::size_t position, const std::string &message);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

struct ParseOptions {
  // W11..W22, O11..O22, K1..K5 and C1, C2, C2a..C2c expand into base
  // generators. With false, W11..W22 are the W letters of the alphabet.
  bool expand_sugar = true;
};

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | factor
// factor := atom ('^' exponent | '†')*
// atom   := name | integer | '(' expr ')' | '[' expr ',' expr ']'
// Exponents are integers, optionally negative or parenthesised; q also
// takes half-integer exponents such as q^(3/2). Division and negative
// powers apply to parameter expressions only.
NCPoly parse_expression(const std::string &text, const ParseOptions &options = {});

// ---------------------------------------------------------------------------
// Checks

enum class CheckStatus { pass, fail, inconclusive };
enum class RunMode { exact, sampled };
enum class Expectation { pass, nonzero_witness };

const char *status_name(CheckStatus s);
const char *mode_name(RunMode m);

struct SuiteConfig {
  RunMode mode = RunMode::exact;
  int samples = 3;
  std::uint64_t seed = 1;
  Caps caps;
  std::string precedence; // empty: MonomialOrder::standard()
  bool with_T = false;    // put the T sector into every engine
};

// Engines and parameter bindings shared by the checks of one run. In
// sampled mode every sample gets its own context.
class CheckContext {
public:
  CheckContext(const SuiteConfig &config, Bindings bindings);

  const SuiteConfig &config() const { return config_; }
  const Bindings &bindings() const { return bindings_; }
  bool sampled() const { return !bindings_.empty(); }
  const MonomialOrder &order() const { return order_; }

  NCPoly bind(const NCPoly &x) const { return sampled() ? x.substitute(bindings_) : x; }
  Scalar bind(const Scalar &x) const { return sampled() ? x.substitute(bindings_) : x; }
  template <int N> OpMatrix<N> bind(const OpMatrix<N> &m) const { return sampled() ? m.substitute(bindings_) : m; }
  // Bindings without one parameter (used to keep beta formal).
  Bindings bindings_without(Param p) const;

  // Relations (already bound) and a reducer for the given configuration.
  const RelationSet &relations(bool with_T, bool unimodularity = true);
  Reducer &reducer(bool with_T = false, bool unimodularity = true);
  std::size_t steps_used() const;

private:
  struct Engine {
    RelationSet relations;
    std::unique_ptr<RewriteSystem> system;
    std::unique_ptr<Reducer> reducer;
  };
  Engine &engine(bool with_T, bool unimodularity);

  SuiteConfig config_;
  Bindings bindings_;
  MonomialOrder order_;
  std::map<std::pair<bool, bool>, Engine> engines_;
};

struct CheckOutcome {
  CheckStatus status = CheckStatus::pass;
  std::optional<std::string> witness;
  nlohmann::json details = nlohmann::json::object();
  std::optional<nlohmann::json> certificates;
};

struct CheckSpec {
  std::string name;
  std::string anchor; // the claim being checked
  Expectation expected = Expectation::pass;
  bool sampled_applicable = true;
  bool needs_T = false;
  bool optional = false; // skipped by run-all
  std::function<CheckOutcome(CheckContext &)> run;
};

const std::vector<CheckSpec> &check_registry();
const CheckSpec *find_check(const std::string &name);

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  RunMode mode = RunMode::exact;
  std::vector<Bindings> bindings;
  Caps caps;
  std::size_t steps = 0;
  std::optional<std::string> witness;
  std::optional<std::string> certificate_ref;
  std::optional<nlohmann::json> certificates;
  nlohmann::json details = nlohmann::json::object();
  double wall_millis = 0;

  // {name, status, mode, bindings, capsUsed, witness?, certificateRef?,
  //  wallMillis, details}
  nlohmann::json to_json(bool with_timing = true) const;
};

// Parameter bindings for sampled mode: q is the square of a random rational
// (so half powers stay rational), the other parameters random nonzero
// rationals. Deterministic in the seed.
std::vector<Bindings> sample_bindings(std::uint64_t seed, int count);

// Throws std::invalid_argument for an unknown name.
std::vector<CheckReport> run_checks(const std::vector<std::string> &names, const SuiteConfig &config,
                                    const std::function<void(const CheckReport &)> &on_report = {});
std::vector<std::string> default_check_names();

// Whole-run document: config, summary counts, reports, certificates.
nlohmann::json reports_to_json(const std::vector<CheckReport> &reports, const SuiteConfig &config,
                               bool with_timing = true);
std::string report_line(const CheckReport &r);

} // namespace qpoincare

#endif
