#include "doctest.h"

#include "cuntzwave/error.hpp"
#include "cuntzwave/indefinite.hpp"
#include "test_support.hpp"

using namespace cuntzwave;
using namespace testing;

namespace {

SignatureMatrix random_signature(Gen& g, Index p) {
  Eigen::HouseholderQR<CMatrix> qr(g.matrix(p, p));
  const CMatrix U = qr.householderQ();
  CMatrix D = CMatrix::Zero(p, p);
  for (Index i = 0; i < p; ++i) D(i, i) = g.integer(0, 1) ? 1.0 : -1.0;
  CMatrix J = U * D * U.adjoint();
  J = (J + J.adjoint()) / 2.0;
  return SignatureMatrix::validate(J, 1e-10);
}

LaurentMatrix random_vector_poly(Gen& g, Index p) { return g.laurent(p, 1, 0, g.integer(0, 5)); }

}  // namespace

TEST_CASE("validate accepts identity and diag(1,-1)") {
  const auto I = SignatureMatrix::validate(CMatrix::Identity(2, 2));
  CHECK(I.dim() == 2);
  CHECK(I.nu_minus() == 0);
  const auto J = SignatureMatrix::validate(mat({{1, 0}, {0, -1}}));
  CHECK(J.nu_minus() == 1);
  CHECK(J.nu_plus() == 1);
}

TEST_CASE("validate rejects non-Hermitian and non-involutive input") {
  try {
    SignatureMatrix::validate(mat({{0, 1}, {0, 0}}));
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  try {
    SignatureMatrix::validate(mat({{2, 0}, {0, 1}}));
    FAIL("expected NotInvolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvolution);
  }
}

TEST_CASE("j_adjoint examples") {
  const auto I2 = SignatureMatrix::identity(2);
  Gen g(11);
  const CMatrix A = g.matrix(2, 2);
  CHECK(diff(j_adjoint(A, I2, I2), A.adjoint()) == 0.0);

  const auto J = SignatureMatrix::diag({1, -1});
  const CMatrix B = mat({{0, 1}, {0, 0}});
  CHECK(diff(j_adjoint(B, J, J), mat({{0, 0}, {-1, 0}})) == 0.0);
}

TEST_CASE("j_adjoint is an involution on random data") {
  Gen g(12);
  for (int t = 0; t < 50; ++t) {
    const Index p1 = g.integer(1, 4);
    const Index p2 = g.integer(1, 4);
    const auto J1 = random_signature(g, p1);
    const auto J2 = random_signature(g, p2);
    const CMatrix A = g.matrix(p2, p1);
    const CMatrix back = j_adjoint(j_adjoint(A, J1, J2), J2, J1);
    CHECK(diff(back, A) <= 1e-14 * std::max(1.0, A.cwiseAbs().maxCoeff()) * 10);
  }
}

TEST_CASE("hermitian_signature examples") {
  CHECK(hermitian_signature(CMatrix::Identity(3, 3)) == Signature{3, 0, 0});
  CHECK(hermitian_signature(mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}})) == Signature{1, 1, 1});

  const std::vector<cd> pts{0.5, cd(0, 0.3), -0.2};
  CMatrix G(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = -1.0 / (pts[i] * std::conj(pts[j]));
  CHECK(hermitian_signature(G) == Signature{0, 1, 2});
}

TEST_CASE("hermitian_signature rejects a non-Hermitian matrix") {
  CHECK_THROWS_AS(hermitian_signature(mat({{1, 2}, {0, 1}})), Error);
}

TEST_CASE("validated signature matrices have no zero eigenvalues") {
  Gen g(13);
  for (int t = 0; t < 30; ++t) {
    const Index p = g.integer(1, 5);
    const auto J = random_signature(g, p);
    const Signature s = hermitian_signature(J.matrix());
    CHECK(s.n_zero == 0);
    CHECK(s.n_neg == J.nu_minus());
  }
}

TEST_CASE("h2j_inner examples") {
  const auto J1 = SignatureMatrix::identity(1);
  const auto one = LaurentMatrix::scalar({{0, 1.0}});
  const auto z = LaurentMatrix::scalar({{1, 1.0}});
  CHECK(h2j_inner(one, one, J1) == cd(1.0));
  CHECK(h2j_inner(z, one, J1) == cd(0.0));

  LaurentMatrix f(2, 1);
  f.add_term(0, mat({{1}, {0}}));
  f.add_term(1, mat({{0}, {1}}));
  CHECK(h2j_inner(f, f, SignatureMatrix::diag({1, -1})) == cd(0.0));
}

TEST_CASE("h2j_inner properties on random polynomials") {
  Gen g(14);
  for (int t = 0; t < 40; ++t) {
    const Index p = g.integer(1, 3);
    const auto J = random_signature(g, p);
    const auto f = random_vector_poly(g, p);
    const auto h = random_vector_poly(g, p);
    const auto k = random_vector_poly(g, p);

    const cd ff = h2j_inner(f, f, J);
    CHECK(std::abs(ff.imag()) <= 1e-12 * std::max(1.0, std::abs(ff)));

    const cd plain = h2j_inner(f, f, SignatureMatrix::identity(p));
    double sq = 0.0;
    for (const auto& [e, c] : f.terms()) sq += c.squaredNorm();
    CHECK(plain.real() >= 0.0);
    CHECK(std::abs(plain - sq) <= 1e-12 * std::max(1.0, sq));

    const cd alpha = g.complex();
    const cd lhs = h2j_inner(f.scaled(alpha) + h, k, J);
    const cd rhs = alpha * h2j_inner(f, k, J) + h2j_inner(h, k, J);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("h2j_gram matches entrywise inner products") {
  Gen g(15);
  const auto J = SignatureMatrix::diag({1, -1});
  const auto F = g.laurent(2, 3, 0, 3);
  const auto G = g.laurent(2, 2, 0, 4);
  const CMatrix M = h2j_gram(F, G, J);
  REQUIRE(M.rows() == 2);
  REQUIRE(M.cols() == 3);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      CHECK(std::abs(M(i, j) - h2j_inner(F.column(j), G.column(i), J)) <= 1e-12);
}

TEST_CASE("h2j_inner rejects negative exponents") {
  const auto J = SignatureMatrix::identity(1);
  CHECK_THROWS_AS(h2j_inner(LaurentMatrix::scalar({{-1, 1.0}}), LaurentMatrix::scalar({{0, 1.0}}), J),
                  Error);
}
