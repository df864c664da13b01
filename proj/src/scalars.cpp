#include "qpoincare/scalars.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qpoincare {

// ---------------------------------------------------------------------------
// GaussRational

GaussRational GaussRational::inverse() const {
  if (is_zero())
    throw DivisionByZero("division by zero Gaussian rational");
  mpq_class n = re_ * re_ + im_ * im_;
  return GaussRational(re_ / n, -im_ / n);
}

GaussRational &GaussRational::operator*=(const GaussRational &o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string GaussRational::str() const {
  if (sgn(im_) == 0)
    return re_.get_str();
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = im_.get_str() + "*i";
  if (sgn(re_) == 0)
    return imag;
  std::string out = re_.get_str();
  if (imag[0] != '-')
    out += "+";
  return "(" + out + imag + ")";
}

std::ostream &operator<<(std::ostream &os, const GaussRational &x) { return os << x.str(); }

// ---------------------------------------------------------------------------
// Param

const char *param_name(Param p) {
  switch (p) {
  case Param::q:
    return "q";
  case Param::hbar:
    return "hbar";
  case Param::lambda:
    return "lambda";
  case Param::a:
    return "a";
  case Param::beta:
    return "beta";
  }
  return "?";
}

std::optional<Param> param_from_name(const std::string &name) {
  for (int k = 0; k < kNumParams; ++k) {
    auto p = static_cast<Param>(k);
    if (name == param_name(p))
      return p;
  }
  if (name == "h" || name == "ħ")
    return Param::hbar;
  if (name == "λ")
    return Param::lambda;
  if (name == "β")
    return Param::beta;
  return std::nullopt;
}

std::string bindings_str(const Bindings &b) {
  std::string out;
  for (const auto &[p, v] : b) {
    if (!out.empty())
      out += ", ";
    out += std::string(param_name(p)) + "=" + v.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

bool exp_greater(const Exponents &a, const Exponents &b) { return b < a; }

Exponents exp_add(const Exponents &a, const Exponents &b) {
  Exponents r{};
  for (int k = 0; k < kNumParams; ++k)
    r[k] = static_cast<std::int16_t>(a[k] + b[k]);
  return r;
}

bool exp_divides(const Exponents &d, const Exponents &e) {
  for (int k = 0; k < kNumParams; ++k)
    if (d[k] > e[k])
      return false;
  return true;
}

Exponents exp_sub(const Exponents &a, const Exponents &b) {
  Exponents r{};
  for (int k = 0; k < kNumParams; ++k)
    r[k] = static_cast<std::int16_t>(a[k] - b[k]);
  return r;
}

bool is_perfect_square(const mpz_class &z) { return sgn(z) >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

} // namespace

Polynomial::Polynomial(const GaussRational &c) {
  if (!c.is_zero())
    terms_.emplace_back(Exponents{}, c);
}

Polynomial Polynomial::monomial(const Exponents &e, const GaussRational &c) {
  Polynomial p;
  if (!c.is_zero())
    p.terms_.emplace_back(e, c);
  return p;
}

Polynomial Polynomial::variable(Param v, int power) {
  Exponents e{};
  e[static_cast<int>(v)] = static_cast<std::int16_t>(power);
  return monomial(e);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first == Exponents{});
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto &t : terms_)
    d = std::max<int>(d, t.first[var]);
  return d;
}

int Polynomial::min_degree_in(int var) const {
  if (terms_.empty())
    return 0;
  int d = terms_.front().first[var];
  for (const auto &t : terms_)
    d = std::min<int>(d, t.first[var]);
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto &t : terms_) {
    int s = 0;
    for (auto e : t.first)
      s += e;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term &a, const Term &b) { return exp_greater(a.first, b.first); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto &t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else {
      if (!out.empty() && out.back().second.is_zero())
        out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.is_zero())
    out.pop_back();
  terms_ = std::move(out);
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.second = -t.second;
  return r;
}

Polynomial operator+(const Polynomial &a, const Polynomial &b) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    if (i->first == j->first) {
      GaussRational c = i->second + j->second;
      if (!c.is_zero())
        out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    } else if (exp_greater(i->first, j->first)) {
      out.push_back(*i++);
    } else {
      out.push_back(*j++);
    }
  }
  out.insert(out.end(), i, a.terms_.end());
  out.insert(out.end(), j, b.terms_.end());
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial &a, const Polynomial &b) { return a + (-b); }

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
  if (a.is_zero() || b.is_zero())
    return {};
  std::vector<Polynomial::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto &x : a.terms_)
    for (const auto &y : b.terms_)
      out.emplace_back(exp_add(x.first, y.first), x.second * y.second);
  Polynomial r(std::move(out));
  if (a.terms_.size() > 1 || b.terms_.size() > 1)
    r.canonicalize();
  return r;
}

Polynomial Polynomial::scaled(const GaussRational &c) const {
  if (c.is_zero())
    return {};
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.second *= c;
  return r;
}

Polynomial Polynomial::shifted(const Exponents &e) const {
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.first = exp_add(t.first, e);
  return r;
}

Polynomial Polynomial::unshifted(const Exponents &e) const {
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.first = exp_sub(t.first, e);
  return r;
}

Exponents Polynomial::min_exponents() const {
  if (terms_.empty())
    return {};
  Exponents m = terms_.front().first;
  for (const auto &t : terms_)
    for (int k = 0; k < kNumParams; ++k)
      m[k] = std::min(m[k], t.first[k]);
  return m;
}

Polynomial Polynomial::divided_by(const Polynomial &d) const {
  if (d.is_zero())
    throw DivisionByZero("polynomial division by zero");
  if (d.is_constant())
    return scaled(d.leading_coefficient().inverse());
  if (d.is_monomial()) {
    const auto &[de, dc] = d.terms_.front();
    Polynomial r = *this;
    GaussRational inv = dc.inverse();
    for (auto &t : r.terms_) {
      if (!exp_divides(de, t.first))
        throw std::logic_error("inexact polynomial division");
      t.first = exp_sub(t.first, de);
      t.second *= inv;
    }
    return r;
  }
  Polynomial rem = *this;
  std::vector<Term> quot;
  const auto &[lde, ldc] = d.terms_.front();
  GaussRational inv = ldc.inverse();
  while (!rem.is_zero()) {
    const auto &[re, rc] = rem.terms_.front();
    if (!exp_divides(lde, re))
      throw std::logic_error("inexact polynomial division");
    Term t{exp_sub(re, lde), rc * inv};
    rem = rem - Polynomial::monomial(t.first, t.second) * d;
    quot.push_back(std::move(t));
  }
  Polynomial q(std::move(quot));
  q.canonicalize();
  return q;
}

Polynomial Polynomial::conj() const {
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.second = t.second.conj();
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || leading_coefficient().is_one())
    return *this;
  return scaled(leading_coefficient().inverse());
}

Polynomial Polynomial::substitute(const Bindings &bindings) const {
  if (bindings.empty())
    return *this;
  std::optional<GaussRational> sqrt_q;
  auto qit = bindings.find(Param::q);
  auto root_of_q = [&]() -> const GaussRational & {
    if (!sqrt_q) {
      const auto &qv = qit->second;
      mpq_class r = qv.re();
      if (!qv.is_real() || !is_perfect_square(r.get_num()) || !is_perfect_square(r.get_den()))
        throw EvaluationError("odd power of q^(1/2) is irrational at q=" + qv.str());
      mpz_class n, d;
      mpz_sqrt(n.get_mpz_t(), r.get_num().get_mpz_t());
      mpz_sqrt(d.get_mpz_t(), r.get_den().get_mpz_t());
      sqrt_q = GaussRational(mpq_class(n, d));
    }
    return *sqrt_q;
  };
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto &[e, c] : terms_) {
    Exponents ne = e;
    GaussRational nc = c;
    for (const auto &[p, v] : bindings) {
      int k = static_cast<int>(p);
      int power = e[k];
      if (power == 0)
        continue;
      ne[k] = 0;
      GaussRational base = v;
      if (p == Param::q) {
        if (power % 2 != 0)
          base = root_of_q();
        else
          power /= 2;
      }
      for (int j = 0; j < power; ++j)
        nc *= base;
    }
    out.emplace_back(ne, std::move(nc));
  }
  Polynomial r(std::move(out));
  r.canonicalize();
  return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(int var) const {
  std::vector<Polynomial> out(degree_in(var) + 1);
  for (const auto &[e, c] : terms_) {
    Exponents ne = e;
    ne[var] = 0;
    out[e[var]].terms_.emplace_back(ne, c);
  }
  for (auto &p : out)
    p.canonicalize();
  return out;
}

Polynomial Polynomial::from_coefficients(int var, const std::vector<Polynomial> &coeffs) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto &[e, c] : coeffs[k].terms_) {
      Exponents ne = e;
      ne[var] = static_cast<std::int16_t>(k);
      out.emplace_back(ne, c);
    }
  Polynomial r(std::move(out));
  r.canonicalize();
  return r;
}

namespace {

std::string monomial_str(const Exponents &e) {
  std::string out;
  auto append = [&](const std::string &f) {
    if (!out.empty())
      out += "*";
    out += f;
  };
  for (int k = 0; k < kNumParams; ++k) {
    if (e[k] == 0)
      continue;
    std::string name = param_name(static_cast<Param>(k));
    if (k == 0) {
      if (e[k] == 2)
        append("q");
      else if (e[k] % 2 == 0)
        append("q^" + std::to_string(e[k] / 2));
      else
        append("q^(" + std::to_string(e[k]) + "/2)");
    } else if (e[k] == 1) {
      append(name);
    } else {
      append(name + "^" + std::to_string(e[k]));
    }
  }
  return out;
}

} // namespace

std::string Polynomial::str() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[e, c] : terms_) {
    std::string mono = monomial_str(e);
    std::string coeff;
    bool negative = false;
    GaussRational cc = c;
    if (cc.is_real() && sgn(cc.re()) < 0) {
      negative = true;
      cc = -cc;
    }
    if (mono.empty())
      coeff = cc.str();
    else if (cc.is_one())
      coeff = mono;
    else
      coeff = cc.str() + "*" + mono;
    if (out.empty())
      out = negative ? "-" + coeff : coeff;
    else
      out += negative ? " - " + coeff : " + " + coeff;
  }
  return out;
}

std::size_t Polynomial::hash() const {
  std::size_t h = terms_.size();
  auto mix = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto &[e, c] : terms_) {
    for (auto x : e)
      mix(static_cast<std::size_t>(x));
    mix(mpz_get_ui(c.re().get_num_mpz_t()));
    mix(mpz_get_ui(c.re().get_den_mpz_t()));
    mix(mpz_get_ui(c.im().get_num_mpz_t()));
  }
  return h;
}

// ---------------------------------------------------------------------------
// gcd: recursive subresultant remainder sequence over Q(i), preceded by a
// coprimality test on univariate images.

namespace {

Polynomial gcd_no_monomial(const Polynomial &a, const Polynomial &b);

int leading_var(const Polynomial &a, const Polynomial &b) {
  for (int k = 0; k < kNumParams; ++k)
    if (a.degree_in(k) > 0 || b.degree_in(k) > 0)
      return k;
  return -1;
}

Polynomial content_in(const Polynomial &p, int var) {
  auto coeffs = p.coefficients_in(var);
  Polynomial g;
  for (const auto &c : coeffs) {
    if (c.is_zero())
      continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant())
      return Polynomial(GaussRational(1));
  }
  return g;
}

Polynomial primitive_part(const Polynomial &p, int var) {
  Polynomial c = content_in(p, var);
  Polynomial r = c.is_constant() ? p : p.divided_by(c);
  return r.monic();
}

Polynomial lc_in(const Polynomial &p, int var) { return p.coefficients_in(var).back(); }

Polynomial power(const Polynomial &p, int n) {
  Polynomial r(GaussRational(1));
  for (int k = 0; k < n; ++k)
    r = r * p;
  return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
Polynomial pseudo_remainder(Polynomial a, const Polynomial &b, int var) {
  int db = b.degree_in(var);
  Polynomial lcb = lc_in(b, var);
  int e = a.degree_in(var) - db + 1;
  while (!a.is_zero() && a.degree_in(var) >= db) {
    int da = a.degree_in(var);
    Polynomial lca = lc_in(a, var);
    Exponents shift{};
    shift[var] = static_cast<std::int16_t>(da - db);
    a = lcb * a - (lca * b).shifted(shift);
    --e;
  }
  return e > 0 ? power(lcb, e) * a : a;
}

// Degree of the gcd of univariate polynomials given by coefficient lists.
int univariate_gcd_degree(std::vector<GaussRational> a, std::vector<GaussRational> b) {
  auto trim = [](std::vector<GaussRational> &v) {
    while (!v.empty() && v.back().is_zero())
      v.pop_back();
  };
  trim(a);
  trim(b);
  if (a.size() < b.size())
    std::swap(a, b);
  while (!b.empty()) {
    GaussRational inv = b.back().inverse();
    while (a.size() >= b.size()) {
      GaussRational f = a.back() * inv;
      std::size_t off = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k)
        a[off + k] -= f * b[k];
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// True when a and b certainly have no common factor of positive degree in
// `var`: their images under a specialisation of the other variables that
// keeps both leading coefficients are coprime.
bool coprime_in(const Polynomial &a, const Polynomial &b, int var) {
  static const long kPoints[][kNumParams] = {{3, 5, 7, 11, 13}, {-2, 17, -19, 23, 29}, {5, -31, 37, 41, -43}};
  for (const auto &pt : kPoints) {
    Bindings at;
    for (int k = 0; k < kNumParams; ++k)
      if (k != var)
        at[static_cast<Param>(k)] = k == 0 ? GaussRational(pt[k] * pt[k]) : GaussRational(pt[k]);
    Polynomial sa = a.substitute(at), sb = b.substitute(at);
    if (sa.degree_in(var) != a.degree_in(var) || sb.degree_in(var) != b.degree_in(var))
      continue;
    auto coeffs = [var](const Polynomial &p) {
      std::vector<GaussRational> out;
      for (const auto &c : p.coefficients_in(var))
        out.push_back(c.is_zero() ? GaussRational() : c.leading_coefficient());
      return out;
    };
    return univariate_gcd_degree(coeffs(sa), coeffs(sb)) == 0;
  }
  return false;
}

bool certainly_coprime(const Polynomial &a, const Polynomial &b) {
  for (int k = 0; k < kNumParams; ++k)
    if (a.degree_in(k) > 0 && b.degree_in(k) > 0 && !coprime_in(a, b, k))
      return false;
  return true;
}

Polynomial gcd_no_monomial(const Polynomial &a, const Polynomial &b) {
  if (a.is_constant() || b.is_constant())
    return Polynomial(GaussRational(1));
  int v = leading_var(a, b);
  bool in_a = a.degree_in(v) > 0, in_b = b.degree_in(v) > 0;
  if (!in_a)
    return gcd(a, content_in(b, v));
  if (!in_b)
    return gcd(content_in(a, v), b);
  Polynomial ca = content_in(a, v), cb = content_in(b, v);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = ca.is_constant() ? a.monic() : a.divided_by(ca).monic();
  Polynomial pb = cb.is_constant() ? b.monic() : b.divided_by(cb).monic();
  if (certainly_coprime(pa, pb))
    return c;
  if (pa.degree_in(v) < pb.degree_in(v))
    std::swap(pa, pb);
  Polynomial g(GaussRational(1)), h(GaussRational(1));
  while (true) {
    int d = pa.degree_in(v) - pb.degree_in(v);
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero())
      break;
    if (r.degree_in(v) == 0)
      return c;
    pa = std::move(pb);
    pb = r.divided_by(g * power(h, d));
    g = lc_in(pa, v);
    if (d == 1)
      h = g;
    else if (d > 1)
      h = power(g, d).divided_by(power(h, d - 1));
  }
  return (c * primitive_part(pb, v)).monic();
}

} // namespace

Polynomial gcd(const Polynomial &a, const Polynomial &b) {
  if (a.is_zero())
    return b.monic();
  if (b.is_zero())
    return a.monic();
  Exponents ma = a.min_exponents(), mb = b.min_exponents(), mg{};
  for (int k = 0; k < kNumParams; ++k)
    mg[k] = std::min(ma[k], mb[k]);
  Polynomial g = gcd_no_monomial(a.unshifted(ma), b.unshifted(mb));
  return g.shifted(mg).monic();
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const Polynomial &p) {
  if (p.is_constant())
    constant_ = p.is_zero() ? GaussRational() : p.leading_coefficient();
  else
    data_ = std::make_shared<const Fraction>(Fraction{p, Polynomial(GaussRational(1))});
}

Scalar Scalar::make_canonical(Polynomial num, Polynomial den) {
  if (den.is_zero())
    throw DivisionByZero("division by the zero scalar");
  if (num.is_zero())
    return Scalar();
  if (!den.is_constant()) {
    Exponents mn = num.min_exponents(), md = den.min_exponents(), mg{};
    bool any = false;
    for (int k = 0; k < kNumParams; ++k) {
      mg[k] = std::min(mn[k], md[k]);
      any = any || mg[k] != 0;
    }
    if (any) {
      num = num.unshifted(mg);
      den = den.unshifted(mg);
    }
    if (!den.is_monomial() && !num.is_monomial()) {
      Polynomial g = gcd(num, den);
      if (!g.is_constant()) {
        num = num.divided_by(g);
        den = den.divided_by(g);
      }
    }
  }
  if (!den.leading_coefficient().is_one()) {
    GaussRational inv = den.leading_coefficient().inverse();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  Scalar r;
  if (den.is_constant() && num.is_constant()) {
    r.constant_ = num.leading_coefficient();
    return r;
  }
  r.data_ = std::make_shared<const Fraction>(Fraction{std::move(num), std::move(den)});
  return r;
}

Scalar Scalar::fraction(const Polynomial &num, const Polynomial &den) { return make_canonical(num, den); }

Scalar Scalar::param(Param p, int power) {
  if (p == Param::q)
    return q_half_power(2 * power);
  if (power >= 0)
    return Scalar(Polynomial::variable(p, power));
  return make_canonical(Polynomial(GaussRational(1)), Polynomial::variable(p, -power));
}

Scalar Scalar::q_half_power(int k) {
  if (k == 0)
    return Scalar(1);
  if (k > 0)
    return Scalar(Polynomial::variable(Param::q, k));
  return make_canonical(Polynomial(GaussRational(1)), Polynomial::variable(Param::q, -k));
}

Polynomial Scalar::numerator() const { return data_ ? data_->num : Polynomial(constant_); }
Polynomial Scalar::denominator() const { return data_ ? data_->den : Polynomial(GaussRational(1)); }

Scalar Scalar::operator-() const {
  if (!data_)
    return Scalar(-constant_);
  Scalar r;
  r.data_ = std::make_shared<const Fraction>(Fraction{-data_->num, data_->den});
  return r;
}

Scalar &Scalar::operator+=(const Scalar &o) {
  if (!data_ && !o.data_) {
    constant_ += o.constant_;
    return *this;
  }
  if (o.is_zero())
    return *this;
  if (is_zero())
    return *this = o;
  Polynomial n1 = numerator(), d1 = denominator(), n2 = o.numerator(), d2 = o.denominator();
  if (d1 == d2) {
    *this = make_canonical(n1 + n2, d1);
  } else if (d1.is_monomial() && d2.is_monomial()) {
    // Monic monomial denominators: use the lcm directly.
    Exponents e1 = d1.leading_exponents(), e2 = d2.leading_exponents(), l{};
    for (int k = 0; k < kNumParams; ++k)
      l[k] = std::max(e1[k], e2[k]);
    Polynomial num = n1.shifted(exp_sub(l, e1)) + n2.shifted(exp_sub(l, e2));
    *this = make_canonical(std::move(num), Polynomial::monomial(l));
  } else {
    Polynomial g = gcd(d1, d2);
    Polynomial c1 = d1.divided_by(g), c2 = d2.divided_by(g);
    *this = make_canonical(n1 * c2 + n2 * c1, d1 * c2);
  }
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) { return *this += -o; }

Scalar &Scalar::operator*=(const Scalar &o) {
  if (!data_ && !o.data_) {
    constant_ *= o.constant_;
    return *this;
  }
  if (is_zero() || o.is_zero())
    return *this = Scalar();
  if (!o.data_) {
    if (o.constant_.is_one())
      return *this;
    auto f = std::make_shared<Fraction>(*data_);
    f->num = f->num.scaled(o.constant_);
    data_ = std::move(f);
    return *this;
  }
  if (!data_) {
    GaussRational c = constant_;
    *this = o;
    return *this *= Scalar(c);
  }
  *this = make_canonical(data_->num * o.data_->num, data_->den * o.data_->den);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw DivisionByZero("division by the zero scalar");
  if (!data_)
    return Scalar(constant_.inverse());
  return make_canonical(data_->den, data_->num);
}

Scalar &Scalar::operator/=(const Scalar &o) { return *this *= o.inverse(); }

bool operator==(const Scalar &a, const Scalar &b) {
  if (!a.data_ && !b.data_)
    return a.constant_ == b.constant_;
  if (!a.data_ || !b.data_)
    return false;
  return a.data_->num == b.data_->num && a.data_->den == b.data_->den;
}

Scalar Scalar::pow(int n) const {
  if (n < 0)
    return inverse().pow(-n);
  Scalar r(1), base = *this;
  while (n) {
    if (n & 1)
      r *= base;
    n >>= 1;
    if (n)
      base *= base;
  }
  return r;
}

Scalar Scalar::conj() const {
  if (!data_)
    return Scalar(constant_.conj());
  return make_canonical(data_->num.conj(), data_->den.conj());
}

Scalar Scalar::substitute(const Bindings &bindings) const {
  if (!data_ || bindings.empty())
    return *this;
  Polynomial den = data_->den.substitute(bindings);
  if (den.is_zero())
    throw EvaluationError("denominator " + data_->den.str() + " vanishes at " + bindings_str(bindings));
  return make_canonical(data_->num.substitute(bindings), den);
}

bool Scalar::depends_on(Param p) const {
  if (!data_)
    return false;
  int k = static_cast<int>(p);
  return data_->num.degree_in(k) > 0 || data_->den.degree_in(k) > 0;
}

std::string Scalar::str() const {
  if (!data_)
    return constant_.str();
  std::string n = data_->num.str();
  if (data_->den.is_constant())
    return n;
  bool simple_num = data_->num.terms().size() == 1;
  bool simple_den = data_->den.terms().size() == 1;
  std::string out = simple_num ? n : "(" + n + ")";
  out += "/";
  out += simple_den ? data_->den.str() : "(" + data_->den.str() + ")";
  return out;
}

std::size_t Scalar::hash() const {
  if (!data_) {
    std::size_t h = mpz_get_ui(constant_.re().get_num_mpz_t());
    h = h * 1000003u ^ mpz_get_ui(constant_.re().get_den_mpz_t());
    h = h * 1000003u ^ mpz_get_ui(constant_.im().get_num_mpz_t());
    return h;
  }
  return data_->num.hash() * 31u ^ data_->den.hash();
}

std::ostream &operator<<(std::ostream &os, const Scalar &x) { return os << x.str(); }

} // namespace qpoincare
