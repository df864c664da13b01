#ifndef QPOINCARE_PRESENTATION_HPP
#define QPOINCARE_PRESENTATION_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpoincare/tensorcalc.hpp"

namespace qpoincare {

class MissingSector : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Relation {
  std::string label; // e.g. "pp[2,3]" or "dagger(gg[1,4])"
  NCPoly poly;       // understood as poly = 0
};

// Set of defining relations. Scalar multiples and zero polynomials are
// rejected on insertion.
class RelationSet {
public:
  RelationSet() = default;
  explicit RelationSet(std::string name) : name_(std::move(name)) {}

  // Returns false when the polynomial is zero or a Scalar multiple of an
  // existing relation.
  bool add(const std::string &label, const NCPoly &poly);
  void add_all(const RelationSet &other);
  // Appends the daggers of all relations until nothing new appears.
  // Returns the number of relations added.
  std::size_t close_under_dagger();

  const std::string &name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<Relation> &relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }
  std::vector<NCPoly> polys() const;
  std::set<Sector> sectors() const;
  bool includes_unimodularity = false;
  bool includes_dagger_closure = false;

  // Relations whose generators all lie in `alphabet`.
  RelationSet restricted_to(const std::set<GenId> &alphabet) const;
  RelationSet substitute(const Bindings &b) const;
  // Drops relations whose label starts with `prefix`.
  RelationSet without(const std::string &prefix) const;
  nlohmann::json to_json() const;

private:
  std::string name_;
  std::vector<Relation> relations_;
  std::set<std::string> keys_;
};

struct PresentationOptions {
  bool with_T = false;
  bool with_unimodularity = true;
  bool with_dagger_closure = true;
  // Matrix equations to expand; empty means all base equations
  // (pp, gg, ggb, pg, plus tt, ttb, tbtb, cross when with_T).
  std::set<std::string> equations;
};

// Matrix relation residuals LHS - RHS; each entry is a polynomial relation.
// The names refer to the defining equations; the same shapes are reused for
// the Pauli-Lubanski, transformed and limit relations.
Mat4 residual_pp(const OpMatrix2 &a, const OpMatrix2 &b);  // R A1 R^-1 B2 - B2 R21^-1 A1 R21
Mat4 residual_gg(const OpMatrix2 &a, const OpMatrix2 &b);  // R21^-1 A1 R21 B2 - B2 R A1 R^-1
Mat4 residual_ggb(const OpMatrix2 &a, const OpMatrix2 &b); // R A1 R^-1 B2 - B2 R A1 R^-1
Mat4 residual_pg(const OpMatrix2 &a, const OpMatrix2 &b);  // R21^-1 A1 R21 B2 - B2 R21^-1 A1 R^-1
Mat4 residual_wgb(const OpMatrix2 &a, const OpMatrix2 &b); // R A1 R^-1 B2 - B2 R21^-1 A1 R^-1
Mat4 residual_rtt(const OpMatrix2 &a, const OpMatrix2 &b); // R A1 B2 - B2 A1 R
// Z1 R21 Om2 R - R21 Om2 R Z1
Mat4 residual_sigma(const OpMatrix2 &z, const OpMatrix2 &omega);

// The four quantum W relations (wg, wgb, pw, ww) for given W, P, Gamma,
// Gamma-bar matrices.
std::map<std::string, Mat4> w_relation_residuals(const OpMatrix2 &w, const OpMatrix2 &p, const OpMatrix2 &g,
                                                  const OpMatrix2 &gb);
// The four base relations (pp, gg, ggb, pg).
std::map<std::string, Mat4> base_relation_residuals(const OpMatrix2 &p, const OpMatrix2 &g, const OpMatrix2 &gb);

RelationSet build_defining_relations(const PresentationOptions &options = {});
// Adds the 16 entries of a residual matrix under `name[r,c]` labels.
void add_matrix_relation(RelationSet &set, const std::string &name, const Mat4 &residual);

// Unimodularity: det_{1/q}(Gamma^T) - 1 and det_q(Gamma-bar) - 1.
NCPoly gamma_unimodularity();
NCPoly gamma_bar_unimodularity();
NCPoly t_unimodularity(Sector s);

// Derived operators, expanded into base generators.
OpMatrix2 define_W();
OpMatrix2 define_omega();

enum class K3Choice { P22, P11 };
std::map<std::string, NCPoly> define_omega_and_K(K3Choice k3 = K3Choice::P22);
std::map<std::string, NCPoly> define_casimirs();

enum class Transformed { P, Gamma, GammaBar, W };
// Requires with_T in `options`; throws MissingSector otherwise.
OpMatrix2 define_transformed(Transformed which, const PresentationOptions &options);

} // namespace qpoincare

#endif
