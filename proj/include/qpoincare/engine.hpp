#ifndef QPOINCARE_ENGINE_HPP
#define QPOINCARE_ENGINE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpoincare/presentation.hpp"

namespace qpoincare {

class OrientationError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Degree-graded lexicographic order on words; letters compared by a
// precedence rank (higher rank = larger letter).
class MonomialOrder {
public:
  // Tb > T > Gb > G > P; entries 11 > 12 > 21 > 22 except Gamma, which
  // uses 22 > 21 > 12 > 11.
  static MonomialOrder standard();
  // Parses a sector permutation such as "Tb>T>Gb>G>P" or
  // "Tb>T>Gb>G[11>12>21>22]>P". Unlisted sectors follow in default order;
  // a sector without brackets keeps its default entry order.
  static MonomialOrder from_precedence(const std::string &perm);

  explicit MonomialOrder(std::vector<int> rank) : rank_(std::move(rank)) {}

  int rank(GenId g) const { return rank_.at(g); }
  bool less(const Word &a, const Word &b) const;
  // Leading (largest) word of a nonzero polynomial.
  const NCPoly::Term &leading_term(const NCPoly &p) const;
  std::string describe() const;

private:
  std::vector<int> rank_;
};

struct Caps {
  int max_degree = 10;
  std::size_t max_steps = 1'000'000;
};

struct RewriteRule {
  Word lhs;
  NCPoly rhs; // every word strictly smaller than lhs
  std::string source;
};

// Orients a single relation: lhs is its leading word, scaled to coefficient 1.
RewriteRule orient_relation(const NCPoly &relation, const MonomialOrder &order, const std::string &source = {});

class RewriteSystem {
public:
  RewriteSystem(MonomialOrder order, Caps caps) : order_(std::move(order)), caps_(caps) {}

  const std::vector<RewriteRule> &rules() const { return rules_; }
  const MonomialOrder &order() const { return order_; }
  const Caps &caps() const { return caps_; }
  void set_caps(Caps c) { caps_ = c; }

  // Index of the first rule (in rule order) whose lhs is a prefix of w
  // starting at `pos`, or -1.
  int match_at(const Word &w, std::size_t pos) const;
  // Leftmost occurrence of any lhs in w: (position, rule index) or nullopt.
  std::optional<std::pair<std::size_t, int>> find_redex(const Word &w) const;

  void add_rule(RewriteRule rule);
  nlohmann::json to_json() const;

private:
  MonomialOrder order_;
  Caps caps_;
  std::vector<RewriteRule> rules_;
  std::unordered_map<Word, int, WordHash> by_lhs_;
  std::vector<std::size_t> lengths_;
};

// Orients every relation of the set. The set is first inter-reduced
// (linear elimination plus reduction by the rules found so far) so that the
// resulting rules have pairwise distinct, mutually irreducible left sides.
// With bindings, orientation happens after substitution; a relation whose
// symbolic leading coefficient vanishes under the bindings is rejected.
RewriteSystem orient(const RelationSet &relations, const MonomialOrder &order, const Caps &caps = {},
                     const Bindings &bindings = {});

enum class ReductionStatus { complete, step_cap, degree_cap };

struct Reduction {
  NCPoly value;
  ReductionStatus status = ReductionStatus::complete;
  std::size_t steps = 0;
  bool complete() const { return status == ReductionStatus::complete; }
};

class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(ReductionStatus s) : std::runtime_error("reduction cap exceeded"), status(s) {}
  ReductionStatus status;
};

// Normal-form computation with a memo of reduced words. A Reducer is not
// shared between threads; the RewriteSystem it reads is never modified.
class Reducer {
public:
  explicit Reducer(const RewriteSystem &sys) : sys_(sys) {}

  // Partial results keep unreduced terms when a cap is hit.
  Reduction reduce(const NCPoly &x);
  // Throws CapExceeded instead of returning a partial result.
  NCPoly normal_form(const NCPoly &x);
  bool reduces_to_zero(const NCPoly &x) { return normal_form(x).is_zero(); }
  std::size_t total_steps() const { return steps_; }
  std::size_t memo_size() const { return memo_.size(); }
  const RewriteSystem &system() const { return sys_; }

private:
  const NCPoly &nf_word(const Word &w);
  const NCPoly &nf_left(GenId x, const Word &v);
  NCPoly nf_product(const Word &m, const Word &v);

  const RewriteSystem &sys_;
  std::unordered_map<Word, NCPoly, WordHash> memo_;
  std::size_t steps_ = 0;
  std::size_t budget_ = 0;
};

Reduction normal_form(const NCPoly &x, const RewriteSystem &sys);

struct Ambiguity {
  Word word;                // overlap word u*o*v (or inclusion)
  std::string rule_a, rule_b;
  NCPoly difference;        // reduced difference of the two resolutions
  bool inconclusive = false; // cap exhausted
};

// Reduces both resolutions of every overlap/inclusion of rule left sides up
// to `max_degree` and returns the ones that do not agree.
std::vector<Ambiguity> overlap_report(const RewriteSystem &sys, int max_degree);
nlohmann::json ambiguities_to_json(const std::vector<Ambiguity> &amb);

// Explicit bounded completion: adds the nonzero overlap differences as new
// relations and re-orients, for at most `rounds` rounds. Only used when a
// configuration asks for it.
RewriteSystem promote_overlaps(const RelationSet &relations, const MonomialOrder &order, const Caps &caps,
                               int max_degree, int rounds, RelationSet *promoted = nullptr);

// ---------------------------------------------------------------------------
// Ideal membership by linear algebra over bounded-degree multiples.

struct CertificateTerm {
  Word left;
  std::size_t relation; // index into the relation set used
  Word right;
  Scalar coefficient;
};

enum class MembershipStatus { member, not_member_at_degree, inconclusive };

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::inconclusive;
  int degree_used = 0;
  std::size_t rows = 0;
  std::vector<CertificateTerm> certificate;
};

struct MembershipOptions {
  // Letters allowed in the multipliers u, v; empty = every letter of x and
  // of the relations. Relations using other letters are skipped.
  std::vector<GenId> alphabet;
  std::size_t max_rows = 200'000;
};

// Row-reduces all products u * rel * v up to `degree` once; test() then
// decides membership of many inputs against the same span. An empty
// alphabet means the letters of the relations.
class MembershipOracle {
public:
  MembershipOracle(const RelationSet &relations, int degree, const MonomialOrder &order,
                   const MembershipOptions &options = {});
  ~MembershipOracle();
  MembershipOracle(MembershipOracle &&) noexcept;

  MembershipVerdict test(const NCPoly &x) const;
  std::size_t rows() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MembershipVerdict ideal_membership(const NCPoly &x, const RelationSet &relations, int degree,
                                   const MonomialOrder &order, const MembershipOptions &options = {});
// Re-expands sum c * u * rel * v.
NCPoly expand_certificate(const std::vector<CertificateTerm> &cert, const RelationSet &relations);
nlohmann::json certificate_to_json(const MembershipVerdict &v, const RelationSet &relations);

// ---------------------------------------------------------------------------
// Linear ansatz: find all coefficient vectors c with
//   sum_k c_k * normal_form(contributions[k][e]) = 0   for every slot e.
struct AnsatzSolution {
  std::size_t unknowns = 0;
  // Basis of the solution space (each vector has `unknowns` entries).
  std::vector<std::vector<Scalar>> basis;
};

AnsatzSolution linear_ansatz_solve(const std::vector<std::vector<NCPoly>> &contributions, Reducer &reducer);

// Null space of a sparse matrix given as rows of (column, value) pairs.
std::vector<std::vector<Scalar>> null_space(const std::vector<std::vector<std::pair<std::size_t, Scalar>>> &rows,
                                            std::size_t columns);

} // namespace qpoincare

#endif
