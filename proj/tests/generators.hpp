#ifndef QPOINCARE_TEST_GENERATORS_HPP
#define QPOINCARE_TEST_GENERATORS_HPP

#include <random>
#include <vector>

#include "qpoincare/ncpoly.hpp"

namespace qpoincare::testing {

// Small seeded generators for property tests.
struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::mt19937_64 rng;

  long integer(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

  GaussRational gauss() {
    long d = integer(1, 7);
    return GaussRational(mpq_class(integer(-9, 9), d), mpq_class(integer(-3, 3), d));
  }

  Polynomial poly(int terms = 3) {
    Polynomial p;
    for (int k = 0; k < terms; ++k) {
      Exponents e{};
      e[0] = static_cast<std::int16_t>(integer(0, 3));
      e[1] = static_cast<std::int16_t>(integer(0, 2));
      e[3] = static_cast<std::int16_t>(integer(0, 1));
      p = p + Polynomial::monomial(e, gauss());
    }
    return p;
  }

  Scalar scalar() {
    Polynomial d = poly(2);
    if (d.is_zero())
      d = Polynomial(GaussRational(1));
    return Scalar::fraction(poly(3), d);
  }

  Scalar nonzero_scalar() {
    for (;;) {
      Scalar s = scalar();
      if (!s.is_zero())
        return s;
    }
  }

  // Random polynomial over the given letters with words up to max_len.
  NCPoly ncpoly(const std::vector<GenId> &letters, int max_len = 3, int terms = 4) {
    NCPoly x;
    for (int t = 0; t < terms; ++t) {
      std::string w;
      int len = static_cast<int>(integer(0, max_len));
      for (int k = 0; k < len; ++k)
        w.push_back(static_cast<char>(letters[rng() % letters.size()]));
      x += NCPoly::word(Word(w), Scalar(gauss()));
    }
    return x;
  }
};

inline std::vector<GenId> sector_letters(std::initializer_list<Sector> sectors) {
  std::vector<GenId> out;
  for (Sector s : sectors)
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        out.push_back(Alphabet::standard().entry(s, r, c));
  return out;
}

} // namespace qpoincare::testing

#endif
