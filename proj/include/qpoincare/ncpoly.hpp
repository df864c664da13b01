#ifndef QPOINCARE_NCPOLY_HPP
#define QPOINCARE_NCPOLY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qpoincare/scalars.hpp"

namespace qpoincare {

using GenId = std::uint8_t;

// Matrix sectors of the alphabet. Base sectors carry the algebra; the
// remaining ones are used by the limit machinery.
enum class Sector : std::uint8_t {
  P,      // momentum matrix P
  G,      // Gamma
  Gb,     // Gamma-bar
  T,      // SL_q(2,C) matrix T
  Tb,     // T-bar
  W,      // Pauli-Lubanski matrix, a generator only in limit checks
  J,      // Gamma = exp(i lambda J)
  Jd,     // J dagger
  PComp,  // P_0..P_3
  JComp,  // J_{mu nu}, mu < nu
};

struct Generator {
  GenId id;
  std::string name;
  Sector sector;
  int row; // matrix entry (1-based) or component index
  int col;
};

class NCPoly;

// Fixed registry of every generator symbol the project knows about.
class Alphabet {
public:
  static const Alphabet &standard();

  const Generator &operator[](GenId id) const { return gens_.at(id); }
  std::size_t size() const { return gens_.size(); }
  std::optional<GenId> find(std::string_view name) const;
  GenId entry(Sector s, int row, int col) const;
  // Component generators: P_mu (mu = 0..3) and J_{mu nu}.
  GenId p_component(int mu) const;
  GenId j_component(int mu, int nu) const; // requires mu < nu
  const std::vector<Generator> &generators() const { return gens_; }

private:
  Alphabet();
  std::vector<Generator> gens_;
  std::unordered_map<std::string, GenId> by_name_;
};

// A word in the free monoid; the empty word is the unit.
class Word {
public:
  Word() = default;
  explicit Word(std::string letters) : letters_(std::move(letters)) {}
  static Word single(GenId g) { return Word(std::string(1, static_cast<char>(g))); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  GenId operator[](std::size_t k) const { return static_cast<GenId>(letters_[k]); }
  Word sub(std::size_t pos, std::size_t len = std::string::npos) const { return Word(letters_.substr(pos, len)); }
  const std::string &bytes() const { return letters_; }

  friend Word operator*(const Word &a, const Word &b) { return Word(a.letters_ + b.letters_); }
  friend bool operator==(const Word &a, const Word &b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word &a, const Word &b) { return a.letters_ != b.letters_; }
  friend bool operator<(const Word &a, const Word &b) { return a.letters_ < b.letters_; }

  std::string str() const;

private:
  std::string letters_;
};

struct WordHash {
  std::size_t operator()(const Word &w) const { return std::hash<std::string>()(w.bytes()); }
};

// Sparse element of the free associative algebra over Scalar. Terms are kept
// sorted by the raw byte order of their words with no zero coefficients.
class NCPoly {
public:
  using Term = std::pair<Word, Scalar>;

  NCPoly() = default;
  NCPoly(const Scalar &c);
  NCPoly(long c) : NCPoly(Scalar(c)) {}
  static NCPoly gen(GenId g);
  static NCPoly gen(std::string_view name);
  static NCPoly word(const Word &w, const Scalar &c = 1);
  static NCPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }
  const std::vector<Term> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int degree() const;
  // Coefficient of a word, zero when absent.
  Scalar coefficient(const Word &w) const;
  // Generators occurring in any term.
  std::vector<GenId> support() const;

  NCPoly operator-() const;
  NCPoly &operator+=(const NCPoly &o);
  NCPoly &operator-=(const NCPoly &o);
  friend NCPoly operator+(NCPoly a, const NCPoly &b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly &b) { return a -= b; }
  friend NCPoly operator*(const NCPoly &a, const NCPoly &b);
  friend NCPoly operator*(const Scalar &c, const NCPoly &a) { return a.scaled(c); }
  NCPoly scaled(const Scalar &c) const;
  friend bool operator==(const NCPoly &a, const NCPoly &b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NCPoly &a, const NCPoly &b) { return !(a == b); }

  NCPoly substitute(const Bindings &bindings) const;
  // Homomorphic image under generator -> polynomial; unmapped generators stay.
  NCPoly substitute_generators(const std::map<GenId, NCPoly> &table) const;
  NCPoly map_coefficients(const std::function<Scalar(const Scalar &)> &f) const;

  std::string str() const;

private:
  friend class NCPolyBuilder;
  std::vector<Term> terms_;
};

NCPoly commutator(const NCPoly &a, const NCPoly &b);

// Accumulates terms with hashing; build() produces the canonical NCPoly.
class NCPolyBuilder {
public:
  void add(const Word &w, const Scalar &c);
  void add(const NCPoly &p, const Scalar &c = 1);
  // Adds c * left * p * right.
  void add_sandwich(const Word &left, const NCPoly &p, const Word &right, const Scalar &c);
  bool empty() const { return acc_.empty(); }
  NCPoly build();

private:
  std::unordered_map<Word, Scalar, WordHash> acc_;
};

// Image of a generator under the anti-involution. P and W are hermitian;
// Gamma/Gamma-bar and T/T-bar map to transposed inverse entries with the
// central determinants set to one, so every image is linear.
NCPoly dagger_image(GenId g);
// Conjugate-linear anti-multiplicative extension of dagger_image.
NCPoly dagger(const NCPoly &x);

} // namespace qpoincare

#endif
