#ifndef QPOINCARE_SCALARS_HPP
#define QPOINCARE_SCALARS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qpoincare {

class DivisionByZero : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class EvaluationError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// a + b i with exact rational parts.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(long v) : re_(v), im_(0) {}
  GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  static GaussRational fraction(long num, long den) { return GaussRational(mpq_class(num, den)); }
  static GaussRational i() { return GaussRational(0, 1); }

  const mpq_class &re() const { return re_; }
  const mpq_class &im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return GaussRational(re_, -im_); }
  GaussRational inverse() const;

  GaussRational operator-() const { return GaussRational(-re_, -im_); }
  GaussRational &operator+=(const GaussRational &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational &operator-=(const GaussRational &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational &operator*=(const GaussRational &o);
  GaussRational &operator/=(const GaussRational &o) { return *this *= o.inverse(); }

  friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }
  friend bool operator==(const GaussRational &a, const GaussRational &b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational &a, const GaussRational &b) { return !(a == b); }

  // Total order used only for canonical sorting, not a field order.
  friend bool operator<(const GaussRational &a, const GaussRational &b) {
    int c = cmp(a.re_, b.re_);
    return c != 0 ? c < 0 : a.im_ < b.im_;
  }

  std::string str() const;

private:
  mpq_class re_;
  mpq_class im_;
};

std::ostream &operator<<(std::ostream &os, const GaussRational &x);

// Commuting parameters. `q` is stored internally through its square root
// s = q^(1/2), so every power of q (including the half power carried by the
// R-matrix prefactor) is an integer power of s.
enum class Param : std::uint8_t { q = 0, hbar, lambda, a, beta };
inline constexpr int kNumParams = 5;

const char *param_name(Param p);
std::optional<Param> param_from_name(const std::string &name);

// Exponent vector; index 0 holds the exponent of s = q^(1/2).
using Exponents = std::array<std::int16_t, kNumParams>;

// Sparse multivariate polynomial over GaussRational, terms kept sorted by
// descending lexicographic exponent order (s > hbar > lambda > a > beta).
class Polynomial {
public:
  using Term = std::pair<Exponents, GaussRational>;

  Polynomial() = default;
  Polynomial(const GaussRational &c);
  static Polynomial monomial(const Exponents &e, const GaussRational &c = 1);
  static Polynomial variable(Param p, int power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term> &terms() const { return terms_; }
  const GaussRational &leading_coefficient() const { return terms_.front().second; }
  const Exponents &leading_exponents() const { return terms_.front().first; }
  int degree_in(int var) const;
  int min_degree_in(int var) const;
  bool has_var(int var) const { return degree_in(var) > 0; }
  int total_degree() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator-(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
  Polynomial scaled(const GaussRational &c) const;
  Polynomial shifted(const Exponents &e) const;
  friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

  // Exact division; throws std::logic_error when `d` does not divide.
  Polynomial divided_by(const Polynomial &d) const;
  // Divides every exponent vector by the monomial `e` (must divide).
  Polynomial unshifted(const Exponents &e) const;
  // Smallest exponent per variable over all terms.
  Exponents min_exponents() const;

  Polynomial conj() const;
  Polynomial monic() const;
  // Replaces bound variables by values. s is bound through the binding of q:
  // odd powers of s need q to be a perfect square.
  Polynomial substitute(const std::map<Param, GaussRational> &bindings) const;

  // Coefficients with respect to one variable, index = power.
  std::vector<Polynomial> coefficients_in(int var) const;
  static Polynomial from_coefficients(int var, const std::vector<Polynomial> &coeffs);

  std::string str() const;
  std::size_t hash() const;

private:
  explicit Polynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}
  void canonicalize();
  std::vector<Term> terms_;
};

Polynomial gcd(const Polynomial &a, const Polynomial &b);

// Element of the rational function field Q(i)(s, hbar, lambda, a, beta).
// Canonical form: gcd(num, den) = 1, den has leading coefficient 1. Values
// with a constant numerator and unit denominator skip the shared storage.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : constant_(v) {}
  Scalar(const GaussRational &c) : constant_(c) {}
  Scalar(const Polynomial &p);
  static Scalar fraction(const Polynomial &num, const Polynomial &den);
  static Scalar param(Param p, int power = 1);
  // q^(k/2), i.e. s^k.
  static Scalar q_half_power(int k);
  static Scalar q_power(int k) { return q_half_power(2 * k); }
  static Scalar i() { return Scalar(GaussRational::i()); }
  static Scalar rational(long num, long den) { return Scalar(GaussRational::fraction(num, den)); }

  bool is_zero() const { return !data_ && constant_.is_zero(); }
  bool is_one() const { return !data_ && constant_.is_one(); }
  bool is_constant() const { return !data_; }
  // Only meaningful when is_constant().
  const GaussRational &constant() const { return constant_; }

  Polynomial numerator() const;
  Polynomial denominator() const;

  Scalar operator-() const;
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o);
  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  friend bool operator==(const Scalar &a, const Scalar &b);
  friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

  Scalar inverse() const;
  Scalar pow(int n) const;
  Scalar conj() const;
  // Throws EvaluationError naming the binding when a denominator vanishes.
  Scalar substitute(const std::map<Param, GaussRational> &bindings) const;
  bool depends_on(Param p) const;

  std::string str() const;
  std::size_t hash() const;

private:
  struct Fraction {
    Polynomial num;
    Polynomial den;
  };
  static Scalar make_canonical(Polynomial num, Polynomial den);

  GaussRational constant_;
  std::shared_ptr<const Fraction> data_;
};

std::ostream &operator<<(std::ostream &os, const Scalar &x);

using Bindings = std::map<Param, GaussRational>;
std::string bindings_str(const Bindings &b);

} // namespace qpoincare

#endif
