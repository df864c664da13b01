#include "qpoincare/tensorcalc.hpp"

namespace qpoincare {

OpMatrix2 generator_matrix(Sector s) {
  const auto &alpha = Alphabet::standard();
  OpMatrix2 m;
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c)
      m(r, c) = NCPoly::gen(alpha.entry(s, r, c));
  return m;
}

Mat4 r_matrix() {
  Scalar q = Scalar::q_power(1);
  Mat4 m;
  m(1, 1) = q;
  m(2, 2) = 1;
  m(3, 2) = q - q.inverse();
  m(3, 3) = 1;
  m(4, 4) = q;
  return Scalar::q_half_power(-1) * m;
}

Mat4 classical_r_matrix() {
  Mat4 m;
  m(1, 1) = 1;
  m(2, 2) = -1;
  m(3, 2) = 4;
  m(3, 3) = -1;
  m(4, 4) = 1;
  return (Scalar::i() * Scalar::param(Param::lambda) / Scalar(2)) * m;
}

Mat4 permutation() {
  Mat4 m;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  m(4, 4) = 1;
  return m;
}

Mat4 r21_matrix() {
  Mat4 pi = permutation();
  return pi * r_matrix() * pi;
}

Mat4 lift(const OpMatrix2 &a, int slot) {
  if (slot == 1)
    return kron(a, OpMatrix2::identity());
  if (slot == 2)
    return kron(OpMatrix2::identity(), a);
  throw std::invalid_argument("lift slot must be 1 or 2");
}

template <int N> OpMatrix<N> inverse_scalar(const OpMatrix<N> &a) {
  if (!a.is_scalar_valued())
    throw std::invalid_argument("inverse_scalar needs Scalar entries");
  std::array<std::array<Scalar, 2 * N>, N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const auto &e = a(i + 1, j + 1);
      m[i][j] = e.is_zero() ? Scalar() : e.terms().front().second;
      m[i][N + j] = i == j ? Scalar(1) : Scalar();
    }
  for (int col = 0; col < N; ++col) {
    int piv = -1;
    for (int r = col; r < N; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0)
      throw SingularMatrix("singular Scalar matrix");
    std::swap(m[col], m[piv]);
    Scalar inv = m[col][col].inverse();
    for (auto &x : m[col])
      x *= inv;
    for (int r = 0; r < N; ++r) {
      if (r == col || m[r][col].is_zero())
        continue;
      Scalar f = m[r][col];
      for (int c = 0; c < 2 * N; ++c)
        if (!m[col][c].is_zero())
          m[r][c] -= f * m[col][c];
    }
  }
  OpMatrix<N> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      out(i + 1, j + 1) = NCPoly(m[i][N + j]);
  return out;
}

template OpMatrix<2> inverse_scalar<2>(const OpMatrix<2> &);
template OpMatrix<4> inverse_scalar<4>(const OpMatrix<4> &);
template OpMatrix<8> inverse_scalar<8>(const OpMatrix<8> &);

Mat4 mat4_inverse_scalar(const Mat4 &a) { return inverse_scalar(a); }

namespace {

struct ThreeSpace {
  Mat8 m12, m13, m23;
};

ThreeSpace embed(const Mat4 &r) {
  OpMatrix2 id = OpMatrix2::identity();
  Mat8 pi12 = kron(permutation(), id);
  Mat8 r12 = kron(r, id);
  Mat8 r23 = kron(id, r);
  Mat8 r13 = pi12 * r23 * pi12;
  return {r12, r13, r23};
}

Mat8 bracket(const Mat8 &a, const Mat8 &b) { return a * b - b * a; }

} // namespace

Mat8 qybe_residual(const Mat4 &r) {
  auto [r12, r13, r23] = embed(r);
  return r12 * r13 * r23 - r23 * r13 * r12;
}

Mat8 cybe_residual(const Mat4 &r) {
  auto [r12, r13, r23] = embed(r);
  return bracket(r12, r13) + bracket(r12, r23) + bracket(r13, r23);
}

NCPoly q_trace(const OpMatrix2 &a) { return a(1, 1) + Scalar::q_power(2) * a(2, 2); }

NCPoly ordinary_trace(const OpMatrix2 &a) { return a(1, 1) + a(2, 2); }

NCPoly q_bracket(const OpMatrix2 &a, const OpMatrix2 &b) {
  return a(1, 1) * b(2, 2) - Scalar::q_power(-2) * (a(1, 2) * b(2, 1));
}

NCPoly q_scalar_product(const OpMatrix2 &a, const OpMatrix2 &b_adjugate) {
  Scalar f = -(Scalar::q_power(2) + 1).inverse();
  return f * q_trace(a * b_adjugate);
}

namespace {

OpMatrix2 pad_form(const OpMatrix2 &m) {
  Scalar qm2 = Scalar::q_power(-2);
  OpMatrix2 r;
  r(1, 1) = m(2, 2);
  r(1, 2) = -(qm2 * m(1, 2));
  r(2, 1) = -(qm2 * m(2, 1));
  r(2, 2) = qm2 * (m(1, 1) + (Scalar::q_power(2) - 1) * m(2, 2));
  return r;
}

} // namespace

OpMatrix2 adjugate_P(const OpMatrix2 &p) { return pad_form(p); }

OpMatrix2 adjugate_W(const OpMatrix2 &w, const OpMatrix2 &p) {
  Scalar corr = Scalar::param(Param::a) * (Scalar::q_power(2) - 1);
  return pad_form(w) - corr * pad_form(p);
}

NCPoly det_variant(const OpMatrix2 &m, DetKind kind) {
  NCPoly diag = m(1, 1) * m(2, 2);
  switch (kind) {
  case DetKind::q:
    return diag - Scalar::q_power(-2) * (m(1, 2) * m(2, 1));
  case DetKind::inverse_q_transpose:
    return diag - Scalar::q_power(2) * (m(2, 1) * m(1, 2));
  case DetKind::inverse_sqrt_q:
    return diag - Scalar::q_power(1) * (m(1, 2) * m(2, 1));
  case DetKind::ordinary:
    return diag - m(1, 2) * m(2, 1);
  case DetKind::ordinary_swapped:
    return diag - m(2, 1) * m(1, 2);
  }
  return {};
}

OpMatrix2 gamma_inverse() {
  OpMatrix2 g = generator_matrix(Sector::G);
  Scalar q2 = Scalar::q_power(2);
  OpMatrix2 r;
  r(1, 1) = q2 * g(2, 2) - (q2 - 1) * g(1, 1);
  r(1, 2) = -(q2 * g(1, 2));
  r(2, 1) = -(q2 * g(2, 1));
  r(2, 2) = g(1, 1);
  return r;
}

OpMatrix2 gamma_bar_inverse() { return pad_form(generator_matrix(Sector::Gb)); }

OpMatrix2 t_inverse(Sector s) {
  OpMatrix2 t = generator_matrix(s);
  OpMatrix2 r;
  r(1, 1) = t(2, 2);
  r(1, 2) = -(Scalar::q_power(-1) * t(1, 2));
  r(2, 1) = -(Scalar::q_power(1) * t(2, 1));
  r(2, 2) = t(1, 1);
  return r;
}

std::string matrix_str(const OpMatrix2 &m) {
  return "[[" + m(1, 1).str() + ", " + m(1, 2).str() + "], [" + m(2, 1).str() + ", " + m(2, 2).str() + "]]";
}

} // namespace qpoincare
