#ifndef QPOINCARE_LIMITS_HPP
#define QPOINCARE_LIMITS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpoincare/presentation.hpp"

namespace qpoincare {

// Power series in one parameter (hbar or lambda) with NCPoly coefficients,
// truncated after `order`. Throughout, q = exp(hbar * lambda).
class TruncatedSeries {
public:
  TruncatedSeries(Param variable, int order);
  static TruncatedSeries constant(Param variable, int order, const NCPoly &c);

  Param variable() const { return var_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const NCPoly &operator[](int k) const { return c_.at(k); }
  NCPoly &operator[](int k) { return c_.at(k); }
  const std::vector<NCPoly> &coefficients() const { return c_; }
  bool is_zero() const;
  // First order with a nonzero coefficient, or order()+1.
  int valuation() const;

  TruncatedSeries &operator+=(const TruncatedSeries &o);
  TruncatedSeries &operator-=(const TruncatedSeries &o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
  TruncatedSeries scaled(const Scalar &c) const;
  TruncatedSeries map(const std::function<NCPoly(const NCPoly &)> &f) const;

private:
  Param var_;
  std::vector<NCPoly> c_;
};

// Taylor coefficients of a parameter function, with s = q^(1/2) read as
// exp(hbar * lambda / 2). Removable singularities at 0 are fine; throws
// std::domain_error on a pole.
std::vector<Scalar> expand_scalar(const Scalar &f, Param variable, int order);

// Replaces every generator in `images` by its series and expands every
// coefficient. Other generators stay as they are.
TruncatedSeries series_substitute(const NCPoly &x, const std::map<GenId, TruncatedSeries> &images, Param variable,
                                  int order);

template <int N> struct SeriesMatrix {
  Param variable;
  std::vector<OpMatrix<N>> coeffs; // index = order

  SeriesMatrix(Param v, int order) : variable(v), coeffs(order + 1) {}
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  TruncatedSeries entry(int r, int c) const {
    TruncatedSeries s(variable, order());
    for (int k = 0; k <= order(); ++k)
      s[k] = coeffs[k](r, c);
    return s;
  }
  friend SeriesMatrix operator*(const SeriesMatrix &a, const SeriesMatrix &b) {
    SeriesMatrix out(a.variable, std::min(a.order(), b.order()));
    for (int n = 0; n <= out.order(); ++n)
      for (int k = 0; k <= n; ++k)
        out.coeffs[n] = out.coeffs[n] + a.coeffs[k] * b.coeffs[n - k];
    return out;
  }
  friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix &b) {
    for (int n = 0; n <= a.order(); ++n)
      a.coeffs[n] = a.coeffs[n] - b.coeffs[n];
    return a;
  }
};

// Entrywise expansion of a matrix with Scalar coefficients.
template <int N> SeriesMatrix<N> expand_matrix(const OpMatrix<N> &m, Param variable, int order);

SeriesMatrix<4> expand_R_in_hbar(int order);
// R - exp(-i hbar r), r the classical r-matrix.
SeriesMatrix<4> compare_R_vs_exp(int order);
// sum_k M^k / k!; M must have a zero constant term.
template <int N> SeriesMatrix<N> exp_matrix_truncated(const SeriesMatrix<N> &m, int order);

// Swap rules "y x -> x y - [x, y]" for out-of-order adjacent letters, where
// [x, y] = variable^shift * c. Letters are ordered by GenId.
class LimitRuleSet {
public:
  LimitRuleSet(std::string name, Param variable, int shift) : name_(std::move(name)), var_(variable), shift_(shift) {}

  // Sets [x, y] and [y, x] = -[x, y].
  void set_commutator(GenId x, GenId y, const NCPoly &c);
  // Adds [y^dagger, x^dagger] = [x, y]^dagger where the daggers are letters.
  void close_under_dagger();
  bool has(GenId x, GenId y) const { return comm_.count({x, y}) > 0; }
  const NCPoly &commutator(GenId x, GenId y) const;
  const std::string &name() const { return name_; }
  int shift() const { return shift_; }

  TruncatedSeries reorder(const TruncatedSeries &s) const;
  // Only for shift 0.
  NCPoly reorder(const NCPoly &x) const;

private:
  std::string name_;
  Param var_;
  int shift_;
  std::map<std::pair<GenId, GenId>, NCPoly> comm_;
};

// Sorts every word by GenId, ignoring noncommutativity.
NCPoly commutative_sort(const NCPoly &x);

// Classical Poisson brackets: {a_ik, b_jl} is entry ((i,j),(k,l)) of the
// 4x4 bracket formulas; stored as [x, y] = hbar * (i {x, y}).
// `mutated` flips the sign of r (negative control).
LimitRuleSet classical_rules(bool mutated = false);
// Canonical commutators for P, J, J^dagger entries.
LimitRuleSet canonical_rules(bool mutated = false);
// Poincare commutators for P_mu, J_{mu nu}.
LimitRuleSet component_rules();

// P and J entries in terms of P_mu and J_{mu nu}; J^dagger by conjugation.
class ComponentMap {
public:
  static const ComponentMap &standard();
  NCPoly apply(const NCPoly &x) const { return x.substitute_generators(table_); }
  const std::map<GenId, NCPoly> &table() const { return table_; }
  // Component symbols with antisymmetry, J(mu, nu) = -J(nu, mu), J(mu, mu) = 0.
  static NCPoly P(int mu);
  static NCPoly J(int mu, int nu);
  static int eta(int mu, int nu);
  static int epsilon3(int k, int m, int n);
  static int epsilon4(int a, int b, int c, int d);
  // -I X0 + sigma_k X_k.
  static OpMatrix2 from_vector(const NCPoly &x0, const NCPoly &x1, const NCPoly &x2, const NCPoly &x3);

private:
  ComponentMap();
  std::map<GenId, NCPoly> table_;
};

struct LimitWitness {
  std::string where; // e.g. "order 1, entry (2,3)"
  NCPoly value;
};

struct LimitResidue {
  std::string name;
  Param variable = Param::hbar;
  int checked_through = 0;
  std::vector<LimitWitness> witnesses;
  std::vector<std::string> notes;
  bool passed() const { return witnesses.empty(); }
  nlohmann::json to_json() const;
};

// pp, gg, ggb, pg, wg, wgb, pw (alias wp), ww.
LimitResidue classical_limit_check(const std::string &relation, bool mutated = false);
// pp (through lambda^0), gg, ggb (through lambda^2), pg (through lambda^1).
LimitResidue canonical_limit_check(const std::string &relation, bool mutated = false);
// 2x2 canonical commutators mapped to components agree with the Poincare rules.
LimitResidue canonical_component_check();
// a = 1/(2 lambda); beta = 1 unless given.
LimitResidue pauli_lubanski_limit_check(const Scalar &beta = Scalar(1));
LimitResidue omega_limit_check();
LimitResidue r_vs_exp_check();

std::vector<std::string> classical_limit_relations();
std::vector<std::string> canonical_limit_relations();

} // namespace qpoincare

#endif
