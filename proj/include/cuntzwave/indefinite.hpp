#pragma once

#include <span>

#include "cuntzwave/laurent.hpp"
#include "cuntzwave/types.hpp"

namespace cuntzwave {

/// Inertia of a Hermitian matrix.
struct Signature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;

  int dim() const { return n_pos + n_neg + n_zero; }
  bool operator==(const Signature&) const = default;
};

/// A Hermitian involution J (J = J^* = J^{-1}) on C^p, stored dense.
class SignatureMatrix {
 public:
  /// Checks J = J^* and J J = I entrywise within tol.
  static SignatureMatrix validate(const CMatrix& J, double tol = 1e-12);
  static SignatureMatrix diag(std::span<const double> signs);
  static SignatureMatrix diag(std::initializer_list<double> signs);
  static SignatureMatrix identity(Index p);

  const CMatrix& matrix() const { return J_; }
  Index dim() const { return J_.rows(); }
  int nu_minus() const { return n_neg_; }
  int nu_plus() const { return static_cast<int>(dim()) - n_neg_; }

 private:
  SignatureMatrix(CMatrix J, int n_neg) : J_(std::move(J)), n_neg_(n_neg) {}

  CMatrix J_;
  int n_neg_;
};

/// Eigenvalue inertia of (H + H^*)/2; |lambda| <= tol counts as zero.
/// Throws NotHermitian when H deviates from H^* by more than
/// tol * max(1, max|H_ij|).
Signature hermitian_signature(const CMatrix& H, double tol = 1e-9);

/// Eigenvalues of the symmetrised matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& H);

/// A^{[*]} = J1 A^* J2 for A : C_{J1} -> C_{J2}.
CMatrix j_adjoint(const CMatrix& A, const SignatureMatrix& J1,
                  const SignatureMatrix& J2);

/// [f, g]_J = sum_n g_n^* J f_n for C^p-valued Taylor polynomials.
cd h2j_inner(const LaurentMatrix& f, const LaurentMatrix& g,
             const SignatureMatrix& J);

/// Column-wise generalisation of h2j_inner for matrix-valued F (p x m) and
/// G (p x k): returns the k x m matrix sum_n G_n^* J F_n.
CMatrix h2j_gram(const LaurentMatrix& F, const LaurentMatrix& G,
                 const SignatureMatrix& J);

}  // namespace cuntzwave
