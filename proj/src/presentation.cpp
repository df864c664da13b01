#include "qpoincare/presentation.hpp"

namespace qpoincare {

namespace {

std::string normalized_key(const NCPoly &p) {
  Scalar lead = p.terms().front().second;
  return p.scaled(lead.inverse()).str();
}

} // namespace

bool RelationSet::add(const std::string &label, const NCPoly &poly) {
  if (poly.is_zero())
    return false;
  if (!keys_.insert(normalized_key(poly)).second)
    return false;
  relations_.push_back(Relation{label, poly});
  return true;
}

void RelationSet::add_all(const RelationSet &other) {
  for (const auto &r : other.relations_)
    add(r.label, r.poly);
  includes_unimodularity = includes_unimodularity || other.includes_unimodularity;
  includes_dagger_closure = includes_dagger_closure || other.includes_dagger_closure;
}

std::size_t RelationSet::close_under_dagger() {
  std::size_t added = 0, begin = 0;
  while (begin < relations_.size()) {
    std::size_t end = relations_.size();
    for (std::size_t k = begin; k < end; ++k) {
      Relation r = relations_[k];
      if (add("dagger(" + r.label + ")", dagger(r.poly)))
        ++added;
    }
    begin = end;
  }
  includes_dagger_closure = true;
  return added;
}

std::vector<NCPoly> RelationSet::polys() const {
  std::vector<NCPoly> out;
  out.reserve(relations_.size());
  for (const auto &r : relations_)
    out.push_back(r.poly);
  return out;
}

std::set<Sector> RelationSet::sectors() const {
  const auto &alpha = Alphabet::standard();
  std::set<Sector> s;
  for (const auto &r : relations_)
    for (GenId g : r.poly.support())
      s.insert(alpha[g].sector);
  return s;
}

RelationSet RelationSet::restricted_to(const std::set<GenId> &alphabet) const {
  RelationSet out(name_ + "|restricted");
  for (const auto &r : relations_) {
    bool inside = true;
    for (GenId g : r.poly.support())
      inside = inside && alphabet.count(g) > 0;
    if (inside)
      out.add(r.label, r.poly);
  }
  out.includes_unimodularity = includes_unimodularity;
  out.includes_dagger_closure = includes_dagger_closure;
  return out;
}

RelationSet RelationSet::substitute(const Bindings &b) const {
  RelationSet out(name_);
  for (const auto &r : relations_)
    out.add(r.label, r.poly.substitute(b));
  out.includes_unimodularity = includes_unimodularity;
  out.includes_dagger_closure = includes_dagger_closure;
  return out;
}

RelationSet RelationSet::without(const std::string &prefix) const {
  RelationSet out(name_);
  for (const auto &r : relations_)
    if (r.label.rfind(prefix, 0) != 0)
      out.add(r.label, r.poly);
  out.includes_unimodularity = includes_unimodularity;
  out.includes_dagger_closure = includes_dagger_closure;
  return out;
}

nlohmann::json RelationSet::to_json() const {
  const auto &alpha = Alphabet::standard();
  nlohmann::json gens = nlohmann::json::array();
  std::set<GenId> used;
  for (const auto &r : relations_)
    for (GenId g : r.poly.support())
      used.insert(g);
  for (GenId g : used)
    gens.push_back({{"name", alpha[g].name}, {"dagger", dagger_image(g).str()}});
  nlohmann::json rels = nlohmann::json::array();
  for (const auto &r : relations_)
    rels.push_back({{"label", r.label}, {"poly", r.poly.str()}});
  nlohmann::json sectors = nlohmann::json::array();
  for (Sector s : this->sectors())
    for (const auto &g : alpha.generators())
      if (g.sector == s) {
        sectors.push_back(g.name.substr(0, g.name.size() - 2));
        break;
      }
  return {{"name", name_},
          {"sectors", sectors},
          {"includesUnimodularity", includes_unimodularity},
          {"includesDaggerClosure", includes_dagger_closure},
          {"generators", gens},
          {"relations", rels}};
}

// ---------------------------------------------------------------------------
// Matrix relations

namespace {

struct RMatrices {
  Mat4 r, r_inv, r21, r21_inv;
};

const RMatrices &rmats() {
  static const RMatrices m = [] {
    RMatrices x;
    x.r = r_matrix();
    x.r_inv = mat4_inverse_scalar(x.r);
    x.r21 = r21_matrix();
    x.r21_inv = mat4_inverse_scalar(x.r21);
    return x;
  }();
  return m;
}

} // namespace

Mat4 residual_pp(const OpMatrix2 &a, const OpMatrix2 &b) {
  const auto &m = rmats();
  Mat4 a1 = lift(a, 1), b2 = lift(b, 2);
  return m.r * a1 * m.r_inv * b2 - b2 * m.r21_inv * a1 * m.r21;
}

Mat4 residual_gg(const OpMatrix2 &a, const OpMatrix2 &b) {
  const auto &m = rmats();
  Mat4 a1 = lift(a, 1), b2 = lift(b, 2);
  return m.r21_inv * a1 * m.r21 * b2 - b2 * m.r * a1 * m.r_inv;
}

Mat4 residual_ggb(const OpMatrix2 &a, const OpMatrix2 &b) {
  const auto &m = rmats();
  Mat4 a1 = lift(a, 1), b2 = lift(b, 2);
  Mat4 conj = m.r * a1 * m.r_inv;
  return conj * b2 - b2 * conj;
}

Mat4 residual_pg(const OpMatrix2 &a, const OpMatrix2 &b) {
  const auto &m = rmats();
  Mat4 a1 = lift(a, 1), b2 = lift(b, 2);
  return m.r21_inv * a1 * m.r21 * b2 - b2 * m.r21_inv * a1 * m.r_inv;
}

Mat4 residual_wgb(const OpMatrix2 &a, const OpMatrix2 &b) {
  const auto &m = rmats();
  Mat4 a1 = lift(a, 1), b2 = lift(b, 2);
  return m.r * a1 * m.r_inv * b2 - b2 * m.r21_inv * a1 * m.r_inv;
}

Mat4 residual_rtt(const OpMatrix2 &a, const OpMatrix2 &b) {
  const auto &m = rmats();
  Mat4 a1 = lift(a, 1), b2 = lift(b, 2);
  return m.r * a1 * b2 - b2 * a1 * m.r;
}

Mat4 residual_sigma(const OpMatrix2 &z, const OpMatrix2 &omega) {
  const auto &m = rmats();
  Mat4 z1 = lift(z, 1);
  Mat4 mid = m.r21 * lift(omega, 2) * m.r;
  return z1 * mid - mid * z1;
}

std::map<std::string, Mat4> base_relation_residuals(const OpMatrix2 &p, const OpMatrix2 &g, const OpMatrix2 &gb) {
  return {{"pp", residual_pp(p, p)},
          {"gg", residual_gg(g, g)},
          {"ggb", residual_ggb(g, gb)},
          {"pg", residual_pg(p, g)}};
}

std::map<std::string, Mat4> w_relation_residuals(const OpMatrix2 &w, const OpMatrix2 &p, const OpMatrix2 &g,
                                                  const OpMatrix2 &gb) {
  OpMatrix2 shifted = w + Scalar::param(Param::a) * p;
  return {{"wg", residual_pg(w, g)},
          {"wgb", residual_wgb(w, gb)},
          {"pw", residual_pp(w, p)},
          {"ww", residual_pp(shifted, w)}};
}

void add_matrix_relation(RelationSet &set, const std::string &name, const Mat4 &residual) {
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c)
      set.add(name + "[" + std::to_string(r) + "," + std::to_string(c) + "]", residual(r, c));
}

NCPoly gamma_unimodularity() {
  return det_variant(generator_matrix(Sector::G), DetKind::inverse_q_transpose) - NCPoly(1);
}

NCPoly gamma_bar_unimodularity() { return det_variant(generator_matrix(Sector::Gb), DetKind::q) - NCPoly(1); }

NCPoly t_unimodularity(Sector s) { return det_variant(generator_matrix(s), DetKind::inverse_sqrt_q) - NCPoly(1); }

RelationSet build_defining_relations(const PresentationOptions &options) {
  std::set<std::string> eqs = options.equations;
  if (eqs.empty()) {
    eqs = {"pp", "gg", "ggb", "pg"};
    if (options.with_T)
      eqs.insert({"tt", "ttb", "tbtb", "cross"});
  }
  OpMatrix2 p = generator_matrix(Sector::P), g = generator_matrix(Sector::G), gb = generator_matrix(Sector::Gb);
  OpMatrix2 t = generator_matrix(Sector::T), tb = generator_matrix(Sector::Tb);

  RelationSet set("defining");
  auto base = base_relation_residuals(p, g, gb);
  for (const auto &[name, residual] : base)
    if (eqs.count(name))
      add_matrix_relation(set, name, residual);
  bool t_sector = options.with_T || eqs.count("tt") || eqs.count("ttb") || eqs.count("tbtb");
  if (eqs.count("tt"))
    add_matrix_relation(set, "tt", residual_rtt(t, t));
  if (eqs.count("ttb"))
    add_matrix_relation(set, "ttb", residual_rtt(t, tb));
  if (eqs.count("tbtb"))
    add_matrix_relation(set, "tbtb", residual_rtt(tb, tb));
  if (options.with_dagger_closure)
    set.close_under_dagger();
  if (eqs.count("cross")) {
    const auto &alpha = Alphabet::standard();
    for (Sector z : {Sector::P, Sector::G, Sector::Gb})
      for (Sector ts : {Sector::T, Sector::Tb})
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
              for (int l = 1; l <= 2; ++l) {
                GenId zg = alpha.entry(z, i, j), tg = alpha.entry(ts, k, l);
                set.add("cross[" + alpha[zg].name + "," + alpha[tg].name + "]",
                        commutator(NCPoly::gen(zg), NCPoly::gen(tg)));
              }
  }
  if (options.with_unimodularity) {
    bool gamma = eqs.count("gg") || eqs.count("ggb") || eqs.count("pg");
    if (gamma) {
      set.add("det(G)", gamma_unimodularity());
      set.add("det(Gb)", gamma_bar_unimodularity());
    }
    if (t_sector) {
      set.add("det(T)", t_unimodularity(Sector::T));
      set.add("det(Tb)", t_unimodularity(Sector::Tb));
    }
    set.includes_unimodularity = true;
  }
  return set;
}

// ---------------------------------------------------------------------------
// Derived operators

OpMatrix2 define_W() {
  OpMatrix2 p = generator_matrix(Sector::P), g = generator_matrix(Sector::G);
  Scalar a = Scalar::param(Param::a), beta = Scalar::param(Param::beta);
  return a * (beta * (gamma_bar_inverse() * p * g) - p);
}

OpMatrix2 define_omega() { return generator_matrix(Sector::G) * gamma_bar_inverse(); }

std::map<std::string, NCPoly> define_omega_and_K(K3Choice k3) {
  OpMatrix2 p = generator_matrix(Sector::P);
  OpMatrix2 omega = define_omega();
  std::map<std::string, NCPoly> out;
  out["K1"] = q_trace(p);
  out["K2"] = q_trace(define_W());
  out["K3"] = k3 == K3Choice::P22 ? p(2, 2) : p(1, 1);
  out["K4"] = q_bracket(generator_matrix(Sector::G), generator_matrix(Sector::Gb));
  out["K5"] = ordinary_trace(omega);
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c)
      out["O" + std::to_string(r) + std::to_string(c)] = omega(r, c);
  return out;
}

std::map<std::string, NCPoly> define_casimirs() {
  OpMatrix2 p = generator_matrix(Sector::P);
  OpMatrix2 w = define_W();
  Scalar a = Scalar::param(Param::a);
  Scalar q2 = Scalar::q_power(2);
  std::map<std::string, NCPoly> out;
  out["C1"] = -det_variant(p, DetKind::q);
  out["C2a"] = a * (q_bracket(p, w) + q2 * q_bracket(w, p));
  out["C2b"] = a * q_trace(p * adjugate_W(w, p));
  out["C2c"] = -q_bracket(w, w - (a * (q2 - 1)) * p);
  return out;
}

OpMatrix2 define_transformed(Transformed which, const PresentationOptions &options) {
  if (!options.with_T)
    throw MissingSector("transformed operators need the T-sector");
  OpMatrix2 t = generator_matrix(Sector::T), tb = generator_matrix(Sector::Tb);
  OpMatrix2 t_inv = t_inverse(Sector::T), tb_inv = t_inverse(Sector::Tb);
  switch (which) {
  case Transformed::P:
    return tb * generator_matrix(Sector::P) * t_inv;
  case Transformed::Gamma:
    return t * generator_matrix(Sector::G) * t_inv;
  case Transformed::GammaBar:
    return tb * generator_matrix(Sector::Gb) * tb_inv;
  case Transformed::W:
    return tb * define_W() * t_inv;
  }
  return {};
}

} // namespace qpoincare
