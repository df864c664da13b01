#ifndef QPOINCARE_TENSORCALC_HPP
#define QPOINCARE_TENSORCALC_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "qpoincare/ncpoly.hpp"

namespace qpoincare {

class SingularMatrix : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// N x N matrix with NCPoly entries. Products keep the left factor's words to
// the left, following the written order of matrix expressions.
template <int N> class OpMatrix {
public:
  OpMatrix() = default;

  static OpMatrix identity() {
    OpMatrix m;
    for (int k = 1; k <= N; ++k)
      m(k, k) = NCPoly(1);
    return m;
  }

  // 1-based indexing, as in the usual matrix notation.
  NCPoly &operator()(int r, int c) { return e_[(r - 1) * N + (c - 1)]; }
  const NCPoly &operator()(int r, int c) const { return e_[(r - 1) * N + (c - 1)]; }
  static constexpr int dim() { return N; }

  bool is_zero() const {
    for (const auto &x : e_)
      if (!x.is_zero())
        return false;
    return true;
  }
  bool is_scalar_valued() const {
    for (const auto &x : e_)
      if (!x.is_scalar())
        return false;
    return true;
  }

  OpMatrix &operator+=(const OpMatrix &o) {
    for (std::size_t k = 0; k < e_.size(); ++k)
      e_[k] += o.e_[k];
    return *this;
  }
  OpMatrix &operator-=(const OpMatrix &o) {
    for (std::size_t k = 0; k < e_.size(); ++k)
      e_[k] -= o.e_[k];
    return *this;
  }
  friend OpMatrix operator+(OpMatrix a, const OpMatrix &b) { return a += b; }
  friend OpMatrix operator-(OpMatrix a, const OpMatrix &b) { return a -= b; }
  friend OpMatrix operator*(const OpMatrix &a, const OpMatrix &b) {
    OpMatrix r;
    for (int i = 1; i <= N; ++i)
      for (int k = 1; k <= N; ++k) {
        NCPolyBuilder acc;
        for (int j = 1; j <= N; ++j)
          if (!a(i, j).is_zero() && !b(j, k).is_zero())
            acc.add(a(i, j) * b(j, k));
        r(i, k) = acc.build();
      }
    return r;
  }
  friend OpMatrix operator*(const Scalar &c, const OpMatrix &a) {
    OpMatrix r = a;
    for (auto &x : r.e_)
      x = x.scaled(c);
    return r;
  }
  friend OpMatrix operator*(const NCPoly &c, const OpMatrix &a) {
    OpMatrix r = a;
    for (auto &x : r.e_)
      x = c * x;
    return r;
  }
  friend bool operator==(const OpMatrix &a, const OpMatrix &b) { return a.e_ == b.e_; }

  OpMatrix transpose() const {
    OpMatrix r;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j)
        r(i, j) = (*this)(j, i);
    return r;
  }
  // Hermitian conjugate: transpose plus entrywise dagger.
  OpMatrix dagger() const {
    OpMatrix r;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j)
        r(i, j) = qpoincare::dagger((*this)(j, i));
    return r;
  }
  OpMatrix substitute(const Bindings &b) const {
    OpMatrix r;
    for (std::size_t k = 0; k < e_.size(); ++k)
      r.e_[k] = e_[k].substitute(b);
    return r;
  }
  OpMatrix substitute_generators(const std::map<GenId, NCPoly> &table) const {
    OpMatrix r;
    for (std::size_t k = 0; k < e_.size(); ++k)
      r.e_[k] = e_[k].substitute_generators(table);
    return r;
  }
  template <class F> OpMatrix map(F &&f) const {
    OpMatrix r;
    for (std::size_t k = 0; k < e_.size(); ++k)
      r.e_[k] = f(e_[k]);
    return r;
  }

  const std::array<NCPoly, N * N> &entries() const { return e_; }

private:
  std::array<NCPoly, N * N> e_{};
};

using OpMatrix2 = OpMatrix<2>;
using Mat4 = OpMatrix<4>;
using Mat8 = OpMatrix<8>;

template <int N, int M> OpMatrix<N * M> kron(const OpMatrix<N> &a, const OpMatrix<M> &b) {
  OpMatrix<N * M> r;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= M; ++k)
        for (int l = 1; l <= M; ++l)
          r((i - 1) * M + k, (j - 1) * M + l) = a(i, j) * b(k, l);
  return r;
}

// 2x2 matrix of generators of one sector, e.g. P = (P11 P12; P21 P22).
OpMatrix2 generator_matrix(Sector s);

Mat4 r_matrix();
Mat4 classical_r_matrix();
// Permutation operator on C^2 (x) C^2.
Mat4 permutation();
// Pi * R * Pi.
Mat4 r21_matrix();
Mat4 lift(const OpMatrix2 &a, int slot);
// Inverse of a matrix whose entries are all Scalars (Gauss-Jordan).
template <int N> OpMatrix<N> inverse_scalar(const OpMatrix<N> &a);
Mat4 mat4_inverse_scalar(const Mat4 &a);

// R12 R13 R23 - R23 R13 R12 in the threefold tensor space.
Mat8 qybe_residual(const Mat4 &r);
// [r12,r13] + [r12,r23] + [r13,r23].
Mat8 cybe_residual(const Mat4 &r);

NCPoly q_trace(const OpMatrix2 &a);
NCPoly ordinary_trace(const OpMatrix2 &a);
// A11 B22 - q^-2 A12 B21
NCPoly q_bracket(const OpMatrix2 &a, const OpMatrix2 &b);
// -(q^2+1)^-1 Tr_q(A * Badj)
NCPoly q_scalar_product(const OpMatrix2 &a, const OpMatrix2 &b_adjugate);

// Deformed adjugate of a matrix linear in its generators (the Pad form).
OpMatrix2 adjugate_P(const OpMatrix2 &p);
// Pad form applied to W, corrected by -a(q^2-1) adjugate_P(P).
OpMatrix2 adjugate_W(const OpMatrix2 &w, const OpMatrix2 &p);

enum class DetKind {
  q,                   // M11 M22 - q^-2 M12 M21
  inverse_q_transpose, // M11 M22 - q^2 M21 M12
  inverse_sqrt_q,      // M11 M22 - q M12 M21
  ordinary,            // M11 M22 - M12 M21
  ordinary_swapped,    // M11 M22 - M21 M12
};
NCPoly det_variant(const OpMatrix2 &m, DetKind kind);

// Entrywise matrix of inverse entries with the central determinant set to 1.
OpMatrix2 gamma_inverse();     // from Gamma entries
OpMatrix2 gamma_bar_inverse(); // from Gamma-bar entries
OpMatrix2 t_inverse(Sector s); // s = T or Tb

std::string matrix_str(const OpMatrix2 &m);

} // namespace qpoincare

#endif
