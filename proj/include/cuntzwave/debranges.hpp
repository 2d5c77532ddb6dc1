#pragma once

#include <array>
#include <string>
#include <vector>

#include "cuntzwave/indefinite.hpp"
#include "cuntzwave/realization.hpp"

namespace cuntzwave {

/// Hermitian H with M^* diag(H, J) M = diag(H, J) for M = [[A, B], [C, D]].
struct SteinCertificate {
  CMatrix H;
  /// Operator norms of A^*HA + C^*JC - H, A^*HB + C^*JD, B^*HB + D^*JD - J.
  std::array<double, 3> residuals{};
  int nu_neg = 0;
  Signature signature;
  /// Smallest singular value of H.
  double min_singular_value = 0.0;
  bool minimal = true;
  std::vector<std::string> warnings;

  double max_residual() const;
};

/// Solves the (1,1) block A^*HA + C^*JC = H as an n^2 x n^2 linear system
/// and evaluates the three block residuals without judging them. Throws
/// NoSolution when the system is singular (A has eigenvalues a, b with
/// conj(a) b = 1) and DimensionMismatch for nonconforming J.
SteinCertificate stein_candidate(const Realization& R, const SignatureMatrix& J);

/// stein_candidate followed by the checks: ResidualTooLarge if any residual
/// exceeds tol (the function is not J-unitary on the circle), HSingular if
/// sigma_min(H) <= tol * max(1, sigma_max(H)). Non-minimal realizations are
/// accepted with a warning: H then need not be unique.
SteinCertificate solve_stein(const Realization& R, const SignatureMatrix& J,
                             double tol = 1e-8);

struct CircleCheck {
  bool unitary = false;
  double max_residual = 0.0;
  int points = 0;
  int skipped = 0;
};

/// max_t ||W(e^{it})^* J W(e^{it}) - J|| over n_points equispaced points.
/// Points where W cannot be evaluated are skipped; more than 20% skipped
/// raises TooManyPolesOnCircle.
CircleCheck check_junitary_on_circle(const MatrixFunction& W, const SignatureMatrix& J,
                                     int n_points = 64, double tol = 1e-10);

struct FactorizationCheck {
  bool ok = false;
  double max_deviation = 0.0;
};

/// Compares K_Theta(z, w) with C(I - zA)^{-1} H^{-1} (I - conj(w) A^*)^{-1} C^*
/// on all pairs of points, where H is R.stein_H.
FactorizationCheck ptheta_kernel_factorization_check(const Realization& R,
                                                     const SignatureMatrix& J,
                                                     const std::vector<cd>& points,
                                                     double tol = 1e-8);

struct BlockCheck {
  bool ok = false;
  /// ||M^* G M - G|| and ||M G^{-1} M^* - G^{-1}|| with G = diag(H, J).
  double isometry_residual = 0.0;
  double coisometry_residual = 0.0;
};

/// Unitarity of the realization matrix in the indefinite metric diag(H, J).
BlockCheck coisometric_block_check(const Realization& R, const SignatureMatrix& J,
                                   double tol = 1e-8);

}  // namespace cuntzwave
