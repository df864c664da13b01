#include <doctest.h>

#include "qpoincare/limits.hpp"
#include "qpoincare/tensorcalc.hpp"

using namespace qpoincare;

namespace {

const Bindings kQ1{{Param::q, GaussRational(1)}};

NCPoly g(const char *name) { return NCPoly::gen(name); }

template <int N> bool is_identity(const OpMatrix<N> &m) { return m == OpMatrix<N>::identity(); }

} // namespace

TEST_CASE("R-matrix entries") {
  Mat4 R = r_matrix();
  Scalar q = Scalar::q_power(1), s = Scalar::q_half_power(1);
  CHECK(R(1, 1) == NCPoly(s));
  CHECK(R(2, 2) == NCPoly(s.inverse()));
  CHECK(R(3, 2) == NCPoly(s.inverse() * (q - q.inverse())));
  CHECK(R(2, 3).is_zero());
  CHECK(is_identity(R.substitute(kQ1)));

  Mat4 R21 = r21_matrix();
  CHECK(R21(2, 3) == R(3, 2));
  CHECK(R21(3, 2).is_zero());
  CHECK(is_identity(R * mat4_inverse_scalar(R)));
  CHECK(is_identity(permutation() * permutation()));
}

TEST_CASE("classical r-matrix entries") {
  Mat4 r = classical_r_matrix();
  Scalar il = Scalar::i() * Scalar::param(Param::lambda);
  CHECK(r(1, 1) == NCPoly(il / Scalar(2)));
  CHECK(r(2, 2) == NCPoly(-il / Scalar(2)));
  CHECK(r(3, 2) == NCPoly(Scalar(2) * il));
}

TEST_CASE("Yang-Baxter equations") {
  CHECK(qybe_residual(r_matrix()).is_zero());
  CHECK(cybe_residual(classical_r_matrix()).is_zero());

  // A wrong off-diagonal entry breaks the quantum equation.
  Mat4 bad = r_matrix();
  bad(3, 2) = bad(3, 2).scaled(Scalar(2));
  CHECK(!qybe_residual(bad).is_zero());
}

TEST_CASE("inverse of a singular matrix") {
  Mat4 m = Mat4::identity();
  m(4, 4) = NCPoly();
  CHECK_THROWS_AS(mat4_inverse_scalar(m), SingularMatrix);
  OpMatrix2 p = generator_matrix(Sector::P);
  CHECK_THROWS_AS(mat4_inverse_scalar(lift(p, 1)), std::invalid_argument);
}

TEST_CASE("lifts and the flip") {
  OpMatrix2 p = generator_matrix(Sector::P);
  CHECK(p(2, 1) == g("P21"));
  CHECK(is_identity(lift(OpMatrix2::identity(), 1)));
  CHECK(permutation() * lift(p, 1) * permutation() == lift(p, 2));
  CHECK(lift(p, 1)(3, 1) == g("P21"));
  CHECK(lift(p, 2)(2, 1) == g("P21"));
  CHECK_THROWS_AS(lift(p, 3), std::invalid_argument);
}

TEST_CASE("q-trace and q-bracket") {
  Scalar q2 = Scalar::q_power(2);
  CHECK(q_trace(OpMatrix2::identity()) == NCPoly(q2 + 1));
  CHECK(q_bracket(OpMatrix2::identity(), OpMatrix2::identity()) == NCPoly(1));
  OpMatrix2 p = generator_matrix(Sector::P);
  CHECK(q_bracket(p, p) == det_variant(p, DetKind::q));
  CHECK(ordinary_trace(p) == g("P11") + g("P22"));
}

TEST_CASE("determinant variants agree at q = 1") {
  OpMatrix2 p = generator_matrix(Sector::P);
  NCPoly plain = det_variant(p, DetKind::ordinary);
  for (DetKind k : {DetKind::q, DetKind::inverse_sqrt_q})
    CHECK(det_variant(p, k).substitute(kQ1) == plain);
  CHECK(det_variant(p, DetKind::inverse_q_transpose).substitute(kQ1) == det_variant(p, DetKind::ordinary_swapped));
}

TEST_CASE("adjugate and scalar product reduce to the Minkowski form at q = 1") {
  // A from P_mu, B from four J components standing in for a second vector.
  NCPoly a[4], b[4];
  for (int mu = 0; mu < 4; ++mu)
    a[mu] = ComponentMap::P(mu);
  b[0] = ComponentMap::J(0, 1);
  b[1] = ComponentMap::J(0, 2);
  b[2] = ComponentMap::J(0, 3);
  b[3] = ComponentMap::J(1, 2);
  OpMatrix2 A = ComponentMap::from_vector(a[0], a[1], a[2], a[3]);
  OpMatrix2 B = ComponentMap::from_vector(b[0], b[1], b[2], b[3]);

  OpMatrix2 adjB = adjugate_P(B).substitute(kQ1);
  CHECK(adjB == ComponentMap::from_vector(b[0], -b[1], -b[2], -b[3]));

  NCPoly expected = -(a[0] * b[0]);
  for (int k = 1; k <= 3; ++k)
    expected += a[k] * b[k];
  CHECK(q_scalar_product(A, adjugate_P(B)).substitute(kQ1) == expected);
}

TEST_CASE("inverse matrices of Gamma and T") {
  OpMatrix2 gi = gamma_inverse();
  CHECK(gi.substitute(kQ1)(1, 1) == g("G22"));
  OpMatrix2 ti = t_inverse(Sector::T);
  CHECK(ti(1, 2) == NCPoly(-Scalar::q_power(-1)) * g("T12"));
}
