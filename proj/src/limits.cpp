#include "qpoincare/limits.hpp"

#include <stdexcept>
#include <unordered_map>

namespace qpoincare {

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries::TruncatedSeries(Param variable, int order) : var_(variable), c_(order + 1) {
  if (order < 0)
    throw std::invalid_argument("negative truncation order");
}

TruncatedSeries TruncatedSeries::constant(Param variable, int order, const NCPoly &c) {
  TruncatedSeries s(variable, order);
  s[0] = c;
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const NCPoly &p) { return p.is_zero(); });
}

int TruncatedSeries::valuation() const {
  for (int k = 0; k <= order(); ++k)
    if (!c_[k].is_zero())
      return k;
  return order() + 1;
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k)
    c_[k] += o.c_[k];
  return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k)
    c_[k] -= o.c_[k];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) {
  TruncatedSeries out(a.var_, std::min(a.order(), b.order()));
  for (int n = 0; n <= out.order(); ++n) {
    NCPolyBuilder acc;
    for (int k = 0; k <= n; ++k)
      if (!a.c_[k].is_zero() && !b.c_[n - k].is_zero())
        acc.add(a.c_[k] * b.c_[n - k]);
    out.c_[n] = acc.build();
  }
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar &c) const {
  TruncatedSeries out = *this;
  for (auto &p : out.c_)
    p = p.scaled(c);
  return out;
}

TruncatedSeries TruncatedSeries::map(const std::function<NCPoly(const NCPoly &)> &f) const {
  TruncatedSeries out = *this;
  for (auto &p : out.c_)
    p = f(p);
  return out;
}

// ---------------------------------------------------------------------------
// Scalar expansion

namespace {

Scalar factorial_inverse(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k)
    f *= k;
  return Scalar(GaussRational(mpq_class(mpz_class(1), f)));
}

// s^k = exp(k * hbar * lambda / 2) expanded in `variable`.
std::vector<Scalar> poly_series(const Polynomial &p, Param variable, int order) {
  const int vi = static_cast<int>(variable);
  const Param other = variable == Param::hbar ? Param::lambda : Param::hbar;
  std::vector<Scalar> out(order + 1);
  for (const auto &[e, c] : p.terms()) {
    int k = e[0];
    int v = e[vi];
    if (v > order)
      continue;
    Exponents rest = e;
    rest[0] = 0;
    rest[vi] = 0;
    Scalar base(Polynomial::monomial(rest, c));
    Scalar step = Scalar::rational(k, 2) * Scalar::param(other);
    Scalar power = 1;
    for (int n = 0; n + v <= order; ++n) {
      if (n > 0)
        power *= step;
      if (power.is_zero())
        break;
      out[n + v] += base * power * factorial_inverse(n);
    }
  }
  return out;
}

// Replaces parameter p by a Scalar value.
Scalar substitute_symbolic(const Scalar &f, Param p, const Scalar &value) {
  const int pi = static_cast<int>(p);
  auto eval = [&](const Polynomial &poly) {
    Scalar out;
    for (const auto &[e, c] : poly.terms()) {
      Exponents rest = e;
      rest[pi] = 0;
      out += Scalar(Polynomial::monomial(rest, c)) * value.pow(e[pi]);
    }
    return out;
  };
  if (!f.depends_on(p))
    return f;
  return eval(f.numerator()) / eval(f.denominator());
}

} // namespace

std::vector<Scalar> expand_scalar(const Scalar &f, Param variable, int order) {
  if (variable != Param::hbar && variable != Param::lambda)
    throw std::invalid_argument("series variable must be hbar or lambda");
  if (f.is_constant()) {
    std::vector<Scalar> out(order + 1);
    out[0] = f;
    return out;
  }
  // A zero of the denominator at the origin is allowed when the numerator
  // vanishes to at least the same order.
  constexpr int kMaxValuation = 16;
  auto den = poly_series(f.denominator(), variable, order);
  if (den[0].is_zero())
    den = poly_series(f.denominator(), variable, order + kMaxValuation);
  int v = 0;
  while (v <= kMaxValuation && den[v].is_zero())
    ++v;
  auto num = poly_series(f.numerator(), variable, order + v);
  for (int k = 0; k < v; ++k)
    if (!num[k].is_zero())
      throw std::domain_error("pole at the expansion point in " + f.str());
  if (v > kMaxValuation)
    throw std::domain_error("denominator vanishes to high order in " + f.str());
  num.erase(num.begin(), num.begin() + v);
  den.erase(den.begin(), den.begin() + v);
  Scalar inv = den[0].inverse();
  std::vector<Scalar> out(order + 1);
  for (int n = 0; n <= order; ++n) {
    Scalar acc = num[n];
    for (int k = 1; k <= n; ++k)
      if (!den[k].is_zero())
        acc -= den[k] * out[n - k];
    out[n] = acc * inv;
  }
  return out;
}

TruncatedSeries series_substitute(const NCPoly &x, const std::map<GenId, TruncatedSeries> &images, Param variable,
                                  int order) {
  std::vector<NCPolyBuilder> acc(order + 1);
  for (const auto &[w, c] : x.terms()) {
    auto cs = expand_scalar(c, variable, order);
    TruncatedSeries prod = TruncatedSeries::constant(variable, order, NCPoly(1));
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto it = images.find(w[k]);
      if (it != images.end())
        prod = prod * it->second;
      else
        prod = prod * TruncatedSeries::constant(variable, order, NCPoly::gen(w[k]));
    }
    for (int n = 0; n <= order; ++n)
      for (int k = 0; k <= n; ++k)
        if (!cs[k].is_zero() && !prod[n - k].is_zero())
          acc[n].add(prod[n - k], cs[k]);
  }
  TruncatedSeries out(variable, order);
  for (int n = 0; n <= order; ++n)
    out[n] = acc[n].build();
  return out;
}

template <int N> SeriesMatrix<N> expand_matrix(const OpMatrix<N> &m, Param variable, int order) {
  if (!m.is_scalar_valued())
    throw std::invalid_argument("expand_matrix needs Scalar entries");
  SeriesMatrix<N> out(variable, order);
  for (int r = 1; r <= N; ++r)
    for (int c = 1; c <= N; ++c) {
      const NCPoly &e = m(r, c);
      if (e.is_zero())
        continue;
      auto cs = expand_scalar(e.terms().front().second, variable, order);
      for (int k = 0; k <= order; ++k)
        out.coeffs[k](r, c) = NCPoly(cs[k]);
    }
  return out;
}

template <int N> SeriesMatrix<N> exp_matrix_truncated(const SeriesMatrix<N> &m, int order) {
  for (int r = 1; r <= N; ++r)
    for (int c = 1; c <= N; ++c)
      if (!m.coeffs[0](r, c).is_zero())
        throw std::invalid_argument("exponent must have zero constant term");
  SeriesMatrix<N> trunc(m.variable, order);
  for (int k = 0; k <= std::min(order, m.order()); ++k)
    trunc.coeffs[k] = m.coeffs[k];
  SeriesMatrix<N> result(m.variable, order), term(m.variable, order);
  result.coeffs[0] = OpMatrix<N>::identity();
  term.coeffs[0] = OpMatrix<N>::identity();
  for (int k = 1; k <= order; ++k) {
    term = term * trunc;
    Scalar f = Scalar::rational(1, k);
    for (auto &c : term.coeffs)
      c = f * c;
    for (int n = 0; n <= order; ++n)
      result.coeffs[n] += term.coeffs[n];
  }
  return result;
}

template SeriesMatrix<2> expand_matrix<2>(const OpMatrix<2> &, Param, int);
template SeriesMatrix<4> expand_matrix<4>(const OpMatrix<4> &, Param, int);
template SeriesMatrix<2> exp_matrix_truncated<2>(const SeriesMatrix<2> &, int);
template SeriesMatrix<4> exp_matrix_truncated<4>(const SeriesMatrix<4> &, int);

SeriesMatrix<4> expand_R_in_hbar(int order) {
  if (order < 1)
    throw std::invalid_argument("order must be at least 1");
  return expand_matrix(r_matrix(), Param::hbar, order);
}

SeriesMatrix<4> compare_R_vs_exp(int order) {
  SeriesMatrix<4> m(Param::hbar, order);
  m.coeffs[1] = (-Scalar::i()) * classical_r_matrix();
  return expand_R_in_hbar(order) - exp_matrix_truncated(m, order);
}

// ---------------------------------------------------------------------------
// Reordering

void LimitRuleSet::set_commutator(GenId x, GenId y, const NCPoly &c) {
  if (x == y)
    return;
  comm_[{x, y}] = c;
  comm_[{y, x}] = -c;
}

void LimitRuleSet::close_under_dagger() {
  std::vector<std::pair<std::pair<GenId, GenId>, NCPoly>> extra;
  for (const auto &[key, c] : comm_) {
    NCPoly xd = dagger_image(key.first), yd = dagger_image(key.second);
    if (xd.size() != 1 || yd.size() != 1 || xd.degree() != 1 || yd.degree() != 1)
      continue;
    GenId xg = xd.terms().front().first[0], yg = yd.terms().front().first[0];
    if (!comm_.count({yg, xg}))
      extra.push_back({{yg, xg}, dagger(c)});
  }
  for (auto &[key, c] : extra)
    if (!comm_.count(key))
      set_commutator(key.first, key.second, c);
}

const NCPoly &LimitRuleSet::commutator(GenId x, GenId y) const {
  auto it = comm_.find({x, y});
  if (it == comm_.end()) {
    const auto &a = Alphabet::standard();
    throw std::logic_error(name_ + ": no commutation rule for " + a[x].name + ", " + a[y].name);
  }
  return it->second;
}

namespace {

using WorkSet = std::unordered_map<Word, Scalar, WordHash>;

void accumulate(WorkSet &ws, Word w, const Scalar &c) {
  auto [it, inserted] = ws.try_emplace(std::move(w), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      ws.erase(it);
  }
}

std::ptrdiff_t first_descent(const Word &w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] > w[k + 1])
      return static_cast<std::ptrdiff_t>(k);
  return -1;
}

} // namespace

TruncatedSeries LimitRuleSet::reorder(const TruncatedSeries &s) const {
  const int n = s.order();
  std::vector<WorkSet> work(n + 1);
  for (int k = 0; k <= n; ++k)
    for (const auto &[w, c] : s[k].terms())
      accumulate(work[k], w, c);
  TruncatedSeries out(s.variable(), n);
  for (int k = 0; k <= n; ++k) {
    NCPolyBuilder done;
    while (!work[k].empty()) {
      auto it = work[k].begin();
      Word w = it->first;
      Scalar c = it->second;
      work[k].erase(it);
      auto pos = first_descent(w);
      if (pos < 0) {
        done.add(w, c);
        continue;
      }
      GenId y = w[pos], x = w[pos + 1];
      Word prefix = w.sub(0, pos), suffix = w.sub(pos + 2);
      const NCPoly &cm = commutator(x, y);
      accumulate(work[k], prefix * Word::single(x) * Word::single(y) * suffix, c);
      if (k + shift_ <= n)
        for (const auto &[m, d] : cm.terms())
          accumulate(work[k + shift_], prefix * m * suffix, -(c * d));
    }
    out[k] = done.build();
  }
  return out;
}

NCPoly LimitRuleSet::reorder(const NCPoly &x) const {
  if (shift_ != 0)
    throw std::logic_error("exact reordering needs shift 0");
  return reorder(TruncatedSeries::constant(var_, 0, x))[0];
}

NCPoly commutative_sort(const NCPoly &x) {
  NCPolyBuilder acc;
  for (const auto &[w, c] : x.terms()) {
    std::string b = w.bytes();
    std::sort(b.begin(), b.end(), [](char l, char r) { return static_cast<GenId>(l) < static_cast<GenId>(r); });
    acc.add(Word(b), c);
  }
  return acc.build();
}

// ---------------------------------------------------------------------------
// Rule sets

namespace {

int idx(int i, int j) { return 2 * (i - 1) + j; }

// {a_ik, b_jl} = F((i,j),(k,l)).
void add_bracket_matrix(LimitRuleSet &rules, Sector a, Sector b, const Mat4 &f) {
  const auto &alpha = Alphabet::standard();
  for (int i = 1; i <= 2; ++i)
    for (int k = 1; k <= 2; ++k)
      for (int j = 1; j <= 2; ++j)
        for (int l = 1; l <= 2; ++l) {
          GenId x = alpha.entry(a, i, k), y = alpha.entry(b, j, l);
          rules.set_commutator(x, y, Scalar::i() * commutative_sort(f(idx(i, j), idx(k, l))));
        }
}

} // namespace

LimitRuleSet classical_rules(bool mutated) {
  LimitRuleSet rules(mutated ? "classical(mutated)" : "classical", Param::hbar, 1);
  Mat4 r = classical_r_matrix();
  if (mutated)
    r = Scalar(-1) * r;
  Mat4 rd = r.dagger();
  auto m = [](Sector s) { return generator_matrix(s); };
  Mat4 p1 = lift(m(Sector::P), 1), p2 = lift(m(Sector::P), 2);
  Mat4 g1 = lift(m(Sector::G), 1), g2 = lift(m(Sector::G), 2);
  Mat4 gb2 = lift(m(Sector::Gb), 2);
  Mat4 w1 = lift(m(Sector::W), 1), w2 = lift(m(Sector::W), 2);
  Mat4 pi = permutation();
  add_bracket_matrix(rules, Sector::P, Sector::P, r * p1 * p2 + p1 * p2 * rd - p2 * rd * p1 - p1 * r * p2);
  add_bracket_matrix(rules, Sector::G, Sector::G, rd * g1 * g2 + g1 * g2 * r - g2 * r * g1 - g1 * rd * g2);
  add_bracket_matrix(rules, Sector::G, Sector::Gb, r * g1 * gb2 + g1 * gb2 * r - gb2 * r * g1 - g1 * r * gb2);
  add_bracket_matrix(rules, Sector::P, Sector::G, rd * p1 * g2 + p1 * g2 * r - g2 * rd * p1 - p1 * rd * g2);
  add_bracket_matrix(rules, Sector::W, Sector::G, rd * w1 * g2 + w1 * g2 * r - g2 * rd * w1 - w1 * rd * g2);
  add_bracket_matrix(rules, Sector::W, Sector::Gb, r * w1 * gb2 + w1 * gb2 * r - gb2 * rd * w1 - w1 * r * gb2);
  add_bracket_matrix(rules, Sector::W, Sector::P, r * w1 * p2 + w1 * p2 * rd - p2 * rd * w1 - w1 * r * p2);
  Mat4 wp1 = lift(m(Sector::W), 1) * lift(m(Sector::P), 2);
  Mat4 wp2 = lift(m(Sector::W), 2) * lift(m(Sector::P), 1);
  add_bracket_matrix(rules, Sector::W, Sector::W,
                     r * w1 * w2 + w1 * w2 * rd - w2 * rd * w1 - w1 * r * w2 -
                         Scalar::i() * (pi * (wp1 - wp2)));
  return rules;
}

LimitRuleSet canonical_rules(bool mutated) {
  LimitRuleSet rules(mutated ? "canonical(mutated)" : "canonical", Param::lambda, 0);
  const auto &alpha = Alphabet::standard();
  Scalar ih = Scalar::i() * Scalar::param(Param::hbar);
  Mat4 pi = permutation(), id = Mat4::identity();
  OpMatrix2 j = generator_matrix(Sector::J), p = generator_matrix(Sector::P);
  OpMatrix2 jd = generator_matrix(Sector::Jd);
  Scalar sign(mutated ? -1 : 1);
  Mat4 jj = (sign * Scalar(2) * ih) * (pi * (lift(j, 2) - lift(j, 1)));
  Mat4 pj = (sign * ih) * (lift(p, 1) * (Scalar(2) * pi - id));
  // The mutated set also gives [P1, P2] and [J1, J2^dagger] a nonzero value.
  Mat4 pp = mutated ? Mat4(ih * (pi * (lift(p, 2) - lift(p, 1)))) : Mat4();
  Mat4 jjd = mutated ? Mat4(ih * (pi * (lift(jd, 2) - lift(j, 1)))) : Mat4();
  for (int i = 1; i <= 2; ++i)
    for (int k = 1; k <= 2; ++k)
      for (int jx = 1; jx <= 2; ++jx)
        for (int l = 1; l <= 2; ++l) {
          rules.set_commutator(alpha.entry(Sector::P, i, k), alpha.entry(Sector::P, jx, l), pp(idx(i, jx), idx(k, l)));
          rules.set_commutator(alpha.entry(Sector::J, i, k), alpha.entry(Sector::Jd, jx, l), jjd(idx(i, jx), idx(k, l)));
          rules.set_commutator(alpha.entry(Sector::J, i, k), alpha.entry(Sector::J, jx, l), jj(idx(i, jx), idx(k, l)));
          rules.set_commutator(alpha.entry(Sector::P, i, k), alpha.entry(Sector::J, jx, l), pj(idx(i, jx), idx(k, l)));
        }
  rules.close_under_dagger();
  return rules;
}

LimitRuleSet component_rules() {
  LimitRuleSet rules("poincare", Param::lambda, 0);
  const auto &alpha = Alphabet::standard();
  Scalar ih = Scalar::i() * Scalar::param(Param::hbar);
  using CM = ComponentMap;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu)
      rules.set_commutator(alpha.p_component(mu), alpha.p_component(nu), NCPoly());
    for (int nu = 0; nu < 4; ++nu)
      for (int rho = nu + 1; rho < 4; ++rho)
        rules.set_commutator(alpha.p_component(mu), alpha.j_component(nu, rho),
                             ih * (Scalar(CM::eta(mu, rho)) * CM::P(nu) - Scalar(CM::eta(mu, nu)) * CM::P(rho)));
  }
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu)
      for (int rho = 0; rho < 4; ++rho)
        for (int sg = rho + 1; sg < 4; ++sg) {
          NCPoly c = Scalar(CM::eta(mu, rho)) * CM::J(nu, sg) + Scalar(CM::eta(nu, sg)) * CM::J(mu, rho) +
                     Scalar(CM::eta(mu, sg)) * CM::J(rho, nu) + Scalar(CM::eta(nu, rho)) * CM::J(sg, mu);
          rules.set_commutator(alpha.j_component(mu, nu), alpha.j_component(rho, sg), ih * c);
        }
  return rules;
}

// ---------------------------------------------------------------------------
// Components

NCPoly ComponentMap::P(int mu) { return NCPoly::gen(Alphabet::standard().p_component(mu)); }

NCPoly ComponentMap::J(int mu, int nu) {
  if (mu == nu)
    return {};
  if (mu > nu)
    return -J(nu, mu);
  return NCPoly::gen(Alphabet::standard().j_component(mu, nu));
}

int ComponentMap::eta(int mu, int nu) { return mu != nu ? 0 : (mu == 0 ? -1 : 1); }

int ComponentMap::epsilon3(int k, int m, int n) {
  if (k == m || m == n || k == n)
    return 0;
  // cyclic permutations of (1,2,3) are even
  return ((m - k + 3) % 3 == 1) ? 1 : -1;
}

int ComponentMap::epsilon4(int a, int b, int c, int d) {
  int v[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (v[i] == v[j])
        return 0;
      if (v[i] > v[j])
        sign = -sign;
    }
  return sign;
}

OpMatrix2 ComponentMap::from_vector(const NCPoly &x0, const NCPoly &x1, const NCPoly &x2, const NCPoly &x3) {
  OpMatrix2 m;
  Scalar i = Scalar::i();
  m(1, 1) = -x0 + x3;
  m(1, 2) = x1 - i * x2;
  m(2, 1) = x1 + i * x2;
  m(2, 2) = -x0 - x3;
  return m;
}

ComponentMap::ComponentMap() {
  const auto &alpha = Alphabet::standard();
  OpMatrix2 p = from_vector(P(0), P(1), P(2), P(3));
  NCPoly jk[4];
  Scalar half_i = Scalar::i() * Scalar::rational(1, 2);
  for (int k = 1; k <= 3; ++k) {
    jk[k] = J(k, 0);
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n)
        if (epsilon3(k, m, n) != 0)
          jk[k] -= (half_i * Scalar(epsilon3(k, m, n))) * J(m, n);
  }
  OpMatrix2 j = from_vector(NCPoly(), jk[1], jk[2], jk[3]);
  OpMatrix2 jd = j.dagger();
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) {
      table_[alpha.entry(Sector::P, r, c)] = p(r, c);
      table_[alpha.entry(Sector::J, r, c)] = j(r, c);
      table_[alpha.entry(Sector::Jd, r, c)] = jd(r, c);
    }
}

const ComponentMap &ComponentMap::standard() {
  static const ComponentMap instance;
  return instance;
}

// ---------------------------------------------------------------------------
// Checks

nlohmann::json LimitResidue::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (const auto &x : witnesses)
    w.push_back({{"where", x.where}, {"value", x.value.str()}});
  return {{"name", name},
          {"variable", param_name(variable)},
          {"checkedThrough", checked_through},
          {"passed", passed()},
          {"witnesses", w},
          {"notes", notes}};
}

std::vector<std::string> classical_limit_relations() { return {"pp", "gg", "ggb", "pg", "wg", "wgb", "pw", "ww"}; }
std::vector<std::string> canonical_limit_relations() { return {"pp", "gg", "ggb", "pg"}; }

namespace {

std::string entry_label(int order, int r, int c) {
  return "order " + std::to_string(order) + ", entry (" + std::to_string(r) + "," + std::to_string(c) + ")";
}

void collect(LimitResidue &res, const TruncatedSeries &s, int r, int c) {
  for (int k = 0; k <= s.order(); ++k)
    if (!s[k].is_zero())
      res.witnesses.push_back({entry_label(k, r, c), s[k]});
}

std::map<GenId, TruncatedSeries> exponential_images(int order) {
  const auto &alpha = Alphabet::standard();
  std::map<GenId, TruncatedSeries> images;
  for (auto [target, source] : {std::pair{Sector::G, Sector::J}, std::pair{Sector::Gb, Sector::Jd}}) {
    SeriesMatrix<2> m(Param::lambda, order);
    if (order >= 1)
      m.coeffs[1] = Scalar::i() * generator_matrix(source);
    auto e = exp_matrix_truncated(m, order);
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        images.emplace(alpha.entry(target, r, c), e.entry(r, c));
  }
  return images;
}

NCPoly to_components(const NCPoly &x, const LimitRuleSet &rules) {
  return rules.reorder(ComponentMap::standard().apply(x));
}

} // namespace

LimitResidue classical_limit_check(const std::string &relation, bool mutated) {
  std::string name = relation == "wp" ? "pw" : relation;
  auto p = generator_matrix(Sector::P), g = generator_matrix(Sector::G), gb = generator_matrix(Sector::Gb);
  std::map<std::string, Mat4> residuals = base_relation_residuals(p, g, gb);
  if (!residuals.count(name))
    residuals = w_relation_residuals(generator_matrix(Sector::W), p, g, gb);
  auto it = residuals.find(name);
  if (it == residuals.end())
    throw std::invalid_argument("unknown classical-limit relation '" + relation + "'");
  LimitResidue res;
  res.name = "classical-limit-" + name + (mutated ? " (mutated bracket)" : "");
  res.variable = Param::hbar;
  res.checked_through = 1;
  LimitRuleSet rules = classical_rules(mutated);
  Scalar a_value = (Scalar(2) * Scalar::param(Param::lambda)).inverse();
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c) {
      NCPoly e = it->second(r, c).map_coefficients(
          [&](const Scalar &s) { return substitute_symbolic(s, Param::a, a_value); });
      TruncatedSeries s = series_substitute(e, {}, Param::hbar, 1);
      collect(res, rules.reorder(s), r, c);
    }
  if (name == "ww")
    res.notes.push_back("W entries treated as generators with a = 1/(2 lambda)");
  return res;
}

LimitResidue canonical_limit_check(const std::string &relation, bool mutated) {
  static const std::map<std::string, int> orders = {{"pp", 0}, {"gg", 2}, {"ggb", 2}, {"pg", 1}};
  auto ord = orders.find(relation);
  if (ord == orders.end())
    throw std::invalid_argument("unknown canonical-limit relation '" + relation + "'");
  int order = ord->second;
  auto residuals = base_relation_residuals(generator_matrix(Sector::P), generator_matrix(Sector::G),
                                           generator_matrix(Sector::Gb));
  const Mat4 &m = residuals.at(relation);
  auto images = exponential_images(order);
  LimitRuleSet rules = canonical_rules(mutated);
  LimitResidue res;
  res.name = "canonical-limit-" + relation + (mutated ? " (mutated commutator)" : "");
  res.variable = Param::lambda;
  res.checked_through = order;
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c)
      collect(res, rules.reorder(series_substitute(m(r, c), images, Param::lambda, order)), r, c);
  return res;
}

LimitResidue canonical_component_check() {
  LimitResidue res;
  res.name = "canonical-limit-components";
  res.variable = Param::lambda;
  LimitRuleSet canon = canonical_rules(), comp = component_rules();
  const auto &alpha = Alphabet::standard();
  std::vector<GenId> letters;
  for (Sector s : {Sector::P, Sector::J, Sector::Jd})
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        letters.push_back(alpha.entry(s, r, c));
  const auto &map = ComponentMap::standard();
  for (GenId x : letters)
    for (GenId y : letters) {
      if (x >= y || !canon.has(x, y))
        continue;
      NCPoly lhs = comp.reorder(commutator(map.apply(NCPoly::gen(x)), map.apply(NCPoly::gen(y))));
      NCPoly rhs = comp.reorder(map.apply(canon.commutator(x, y)));
      if (lhs != rhs)
        res.witnesses.push_back({"[" + alpha[x].name + ", " + alpha[y].name + "]", lhs - rhs});
    }
  return res;
}

LimitResidue pauli_lubanski_limit_check(const Scalar &beta) {
  LimitResidue res;
  res.name = "pauli-lubanski-limit";
  res.variable = Param::lambda;
  res.checked_through = 0;
  using CM = ComponentMap;
  LimitRuleSet comp = component_rules();
  // W = X / (2 lambda) with a = 1/(2 lambda), beta = 1.
  OpMatrix2 x = define_W().substitute({{Param::a, GaussRational(1)}}).map([&](const NCPoly &e) {
    return e.map_coefficients([&](const Scalar &c) { return substitute_symbolic(c, Param::beta, beta); });
  });
  auto images = exponential_images(1);
  OpMatrix2 w0;
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) {
      TruncatedSeries s = series_substitute(x(r, c), images, Param::lambda, 1);
      if (!s[0].is_zero())
        res.witnesses.push_back({"pole of W at lambda^-1, entry (" + std::to_string(r) + "," + std::to_string(c) + ")",
                                 s[0]});
      w0(r, c) = Scalar::rational(1, 2) * s[1];
    }
  // Derived form (i/2)(P J - J^dagger P).
  OpMatrix2 p = generator_matrix(Sector::P), j = generator_matrix(Sector::J), jd = generator_matrix(Sector::Jd);
  OpMatrix2 derived = (Scalar::i() * Scalar::rational(1, 2)) * (p * j - jd * p);
  // Component formulas.
  NCPoly W0;
  NCPoly Wk[4];
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        int e = CM::epsilon3(k, m, n);
        if (e == 0)
          continue;
        W0 -= Scalar::rational(e, 2) * (CM::P(k) * CM::J(m, n));
        Wk[k] -= Scalar::rational(e, 2) * (CM::P(0) * CM::J(m, n));
      }
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l)
      for (int m = 1; m <= 3; ++m) {
        int e = CM::epsilon3(l, m, k);
        if (e != 0)
          Wk[k] -= Scalar(e) * (CM::P(l) * CM::J(m, 0));
      }
  OpMatrix2 expected = CM::from_vector(W0, Wk[1], Wk[2], Wk[3]);
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) {
      NCPoly got = to_components(w0(r, c), comp);
      NCPoly d1 = got - to_components(derived(r, c), comp);
      if (!d1.is_zero() && beta.is_one())
        res.witnesses.push_back({"(i/2)(PJ - J^dagger P), entry (" + std::to_string(r) + "," + std::to_string(c) + ")",
                                 d1});
      NCPoly d2 = got - comp.reorder(expected(r, c));
      if (!d2.is_zero())
        res.witnesses.push_back({"-I W0 + sigma_k W_k, entry (" + std::to_string(r) + "," + std::to_string(c) + ")",
                                 d2});
    }
  // epsilon^{b mu nu rho} [J_{mu nu}, P_rho] = 0.
  for (int b = 0; b < 4; ++b) {
    NCPoly sum;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        for (int rho = 0; rho < 4; ++rho) {
          int e = CM::epsilon4(b, mu, nu, rho);
          if (e != 0)
            sum += Scalar(e) * commutator(CM::J(mu, nu), CM::P(rho));
        }
    NCPoly red = comp.reorder(sum);
    if (!red.is_zero())
      res.witnesses.push_back({"epsilon contraction, index " + std::to_string(b), red});
  }
  if (!beta.is_one())
    res.notes.push_back("beta = " + beta.str());
  if (!res.passed() && beta.is_one()) {
    OpMatrix2 pc;
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        pc(r, c) = ComponentMap::standard().apply(p(r, c));
    Scalar shift = Scalar::rational(-3, 2) * Scalar::param(Param::hbar);
    bool is_shift = true;
    for (const auto &w : res.witnesses)
      for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 2; ++c)
          if (w.where == "-I W0 + sigma_k W_k, entry (" + std::to_string(r) + "," + std::to_string(c) + ")")
            is_shift = is_shift && w.value == shift * pc(r, c);
    if (is_shift && res.witnesses.size() == 4)
      res.notes.push_back("residual equals -(3/2) hbar P entrywise");
    if (pauli_lubanski_limit_check(Scalar::q_power(3)).passed())
      res.notes.push_back("the check passes with beta = q^3 (beta -> 1 as lambda -> 0)");
  }
  return res;
}

LimitResidue omega_limit_check() {
  LimitResidue res;
  res.name = "omega-limit";
  res.variable = Param::lambda;
  res.checked_through = 2;
  using CM = ComponentMap;
  LimitRuleSet comp = component_rules();
  OpMatrix2 omega = define_omega();
  auto images = exponential_images(2);
  SeriesMatrix<2> s(Param::lambda, 2);
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) {
      TruncatedSeries e = series_substitute(omega(r, c), images, Param::lambda, 2);
      for (int k = 0; k <= 2; ++k)
        s.coeffs[k](r, c) = to_components(e[k], comp);
    }
  if (!(s.coeffs[0] == OpMatrix2::identity()))
    res.witnesses.push_back({"order 0 of Omega is not the identity", s.coeffs[0](1, 1) - NCPoly(1)});
  OpMatrix2 target;
  Scalar i = Scalar::i();
  target(1, 1) = CM::J(1, 2);
  target(1, 2) = CM::J(2, 3) - i * CM::J(3, 1);
  target(2, 1) = CM::J(2, 3) + i * CM::J(3, 1);
  target(2, 2) = -CM::J(1, 2);
  bool twice = true;
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) {
      NCPoly got = s.coeffs[1](r, c);
      NCPoly want = comp.reorder(target(r, c));
      if (got != want)
        res.witnesses.push_back({"(Omega - I)/lambda at lambda^0, entry (" + std::to_string(r) + "," +
                                     std::to_string(c) + ")",
                                 got - want});
      twice = twice && got == Scalar(2) * want;
    }
  if (!res.passed() && twice)
    res.notes.push_back("(Omega - I)/lambda at lambda^0 equals exactly twice the expected matrix");
  // Trace: 2 + 0 lambda + 4 lambda^2 (J12^2 + J23^2 + J31^2).
  NCPoly tr[3];
  for (int k = 0; k <= 2; ++k)
    tr[k] = s.coeffs[k](1, 1) + s.coeffs[k](2, 2);
  NCPoly want2 = comp.reorder(Scalar(4) * (CM::J(1, 2) * CM::J(1, 2) + CM::J(2, 3) * CM::J(2, 3) +
                                            CM::J(3, 1) * CM::J(3, 1)));
  NCPoly want[3] = {NCPoly(2), NCPoly(), want2};
  for (int k = 0; k <= 2; ++k)
    if (tr[k] != want[k])
      res.witnesses.push_back({"Tr(Omega) at lambda^" + std::to_string(k), tr[k] - want[k]});
  return res;
}

LimitResidue r_vs_exp_check() {
  LimitResidue res;
  res.name = "r-vs-exp";
  res.variable = Param::hbar;
  res.checked_through = 3;
  auto d = compare_R_vs_exp(3);
  for (int k = 0; k <= 3; ++k)
    for (int r = 1; r <= 4; ++r)
      for (int c = 1; c <= 4; ++c) {
        const NCPoly &v = d.coeffs[k](r, c);
        bool allowed = k == 3 && r == 3 && c == 2;
        if (!v.is_zero() && !allowed)
          res.witnesses.push_back({entry_label(k, r, c), v});
        if (allowed) {
          if (v.is_zero())
            res.witnesses.push_back({"order 3 entry (3,2) expected nonzero", v});
          else
            res.notes.push_back("order 3, entry (3,2): " + v.str());
        }
      }
  return res;
}

} // namespace qpoincare
