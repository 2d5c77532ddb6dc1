#include "cuntzwave/indefinite.hpp"

#include <algorithm>
#include <vector>

#include "cuntzwave/error.hpp"

namespace cuntzwave {

SignatureMatrix SignatureMatrix::validate(const CMatrix& J, double tol) {
  if (J.rows() != J.cols() || J.rows() == 0) {
    fail(ErrorCode::NotSquare, "signature matrix must be square and non-empty");
  }
  if (max_abs(J - J.adjoint()) > tol) {
    fail(ErrorCode::NotHermitian, "signature matrix is not Hermitian");
  }
  const CMatrix square = J * J;
  if (max_abs(square - CMatrix::Identity(J.rows(), J.cols())) > tol) {
    fail(ErrorCode::NotInvolution, "signature matrix does not square to I");
  }
  // An involution has eigenvalues +-1 only, so the split at 0 is robust.
  const Signature s = hermitian_signature(J, 0.5);
  return SignatureMatrix(J, s.n_neg);
}

SignatureMatrix SignatureMatrix::diag(std::span<const double> signs) {
  CMatrix J = CMatrix::Zero(static_cast<Index>(signs.size()),
                            static_cast<Index>(signs.size()));
  for (std::size_t i = 0; i < signs.size(); ++i) {
    J(static_cast<Index>(i), static_cast<Index>(i)) = signs[i];
  }
  return validate(J);
}

SignatureMatrix SignatureMatrix::diag(std::initializer_list<double> signs) {
  const std::vector<double> v(signs);
  return diag(std::span<const double>(v));
}

SignatureMatrix SignatureMatrix::identity(Index p) {
  return SignatureMatrix(CMatrix::Identity(p, p), 0);
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& H) {
  if (H.size() == 0) return {};
  const CMatrix sym = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Signature hermitian_signature(const CMatrix& H, double tol) {
  if (H.rows() != H.cols()) fail(ErrorCode::NotSquare, "hermitian_signature: not square");
  if (max_abs(H - H.adjoint()) > tol * std::max(1.0, max_abs(H))) {
    fail(ErrorCode::NotHermitian, "hermitian_signature: matrix is not Hermitian");
  }
  Signature s;
  for (double lambda : hermitian_eigenvalues(H)) {
    if (lambda > tol) {
      ++s.n_pos;
    } else if (lambda < -tol) {
      ++s.n_neg;
    } else {
      ++s.n_zero;
    }
  }
  return s;
}

CMatrix j_adjoint(const CMatrix& A, const SignatureMatrix& J1,
                  const SignatureMatrix& J2) {
  if (A.cols() != J1.dim() || A.rows() != J2.dim()) {
    fail(ErrorCode::DimensionMismatch, "j_adjoint: A must be dim(J2) x dim(J1)");
  }
  return J1.matrix() * A.adjoint() * J2.matrix();
}

CMatrix h2j_gram(const LaurentMatrix& F, const LaurentMatrix& G,
                 const SignatureMatrix& J) {
  if (F.rows() != J.dim() || G.rows() != J.dim()) {
    fail(ErrorCode::DimensionMismatch, "h2j inner product: values must lie in C^dim(J)");
  }
  for (const LaurentMatrix* h : {&F, &G}) {
    if (auto lo = h->min_exponent(); lo && *lo < 0) {
      fail(ErrorCode::NegativeExponent, "h2j inner product needs Taylor polynomials");
    }
  }
  CMatrix out = CMatrix::Zero(G.cols(), F.cols());
  for (const auto& [k, f] : F.terms()) {
    auto it = G.terms().find(k);
    if (it != G.terms().end()) out += it->second.adjoint() * J.matrix() * f;
  }
  return out;
}

cd h2j_inner(const LaurentMatrix& f, const LaurentMatrix& g,
             const SignatureMatrix& J) {
  if (f.cols() != 1 || g.cols() != 1) {
    fail(ErrorCode::DimensionMismatch, "h2j_inner: arguments must be vector valued");
  }
  return h2j_gram(f, g, J)(0, 0);
}

}  // namespace cuntzwave
