#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuntzwave/indefinite.hpp"
#include "cuntzwave/kernels.hpp"
#include "cuntzwave/laurent.hpp"
#include "cuntzwave/realization.hpp"

namespace cuntzwave {

/// N scalar Laurent functions s_0, ..., s_{N-1} generating a C_N member.
struct FilterBank {
  int N = 2;
  std::vector<LaurentMatrix> s_hat;

  /// Throws InvalidArgument unless N >= 2, there are N entries, all 1x1.
  void validate() const;
};

/// 1/sqrt(N), computed as sqrt(1/N). Every normalised construction below uses
/// this one constant so that products and quotients of the N = 2 and N = 4
/// factors reproduce each other bit for bit.
double inv_sqrt(int N);

/// Cyclic permutation with a 1 in position (0, N-1) and I_{N-1} below the
/// diagonal; right multiplication moves column j+1 into column j.
CMatrix permutation_matrix(int N);

/// W(z) = (1/sqrt N) [s_i(e^{2 pi i j/N} z)]_{i,j}, built on coefficients.
LaurentMatrix build_filter(const FilterBank& bank);

struct CNCheck {
  bool in_cn = false;
  bool nonsquare = false;
  /// max coefficient deviation between W(eps z) and W(z) P_N.
  double deviation = 0.0;
  /// s_i = sqrt(N) W_{i,0}; present for square members.
  std::optional<FilterBank> bank;
};

/// Decides W(eps z) = W(z) P_N on coefficients, N = number of columns.
/// Rotation phases are exact for N in {1, 2, 4}; for other N the comparison
/// allows tol * max(1, max|W_k|). With allow_nonsquare = false a non-square W
/// raises NotSquare.
CNCheck check_cn(const LaurentMatrix& W, double tol = 1e-12, bool allow_nonsquare = false);

/// Admissible twisting matrix for the decomposition.
struct PMatrix {
  int N = 2;
  CMatrix P;
};

/// Checks P^N = I (PowerNotIdentity) and det(I - eps^l P^l) != 0 for
/// l = 1..N-1 (DeterminantVanishes, naming every failing l).
PMatrix validate_P(const CMatrix& P, int N, double tol = 1e-10);

/// W_k(z) = (1/N) sum_l (eps P)^{kl} W(eps^l z), k = 0..N-1, on coefficients.
/// When P is exactly the identity the sum is evaluated symbolically, so each
/// coefficient of W lands unchanged in exactly one W_k.
std::vector<LaurentMatrix> decompose_P(const LaurentMatrix& W, const PMatrix& P);

struct DecompositionCheck {
  /// max coefficient deviation of sum_k W_k from W.
  double sum_deviation = 0.0;
  /// max over k of the coefficient deviation of W_k(eps z) from (eps P)^{-k} W_k(z).
  double symmetry_deviation = 0.0;
};

DecompositionCheck check_decomposition(const LaurentMatrix& W, const PMatrix& P,
                                       const std::vector<LaurentMatrix>& parts);

struct OrthogonalityReport {
  bool orthogonal = false;
  double max_inner = 0.0;
  std::vector<LaurentMatrix> parts;
};

/// Checks [W_l, W_k]_J = 0 for l != k in H_{2,J}. P must be J-unitary
/// (PNotJUnitary otherwise).
OrthogonalityReport krein_orthogonality_check(const LaurentMatrix& W, const PMatrix& P,
                                              const SignatureMatrix& J,
                                              double tol = 1e-12);

struct XFactorReport {
  /// "pointwise-inverse", "structural" or "pseudo-inverse".
  std::string method;
  std::vector<cd> points;
  std::vector<CMatrix> samples;
  double max_norm = 0.0;
  bool schur = false;
  /// max ||W(eps z) X(z) - W(z)|| over the points.
  double factorization_residual = 0.0;
  std::optional<PositivityResult> positivity;
};

/// X(z) with W(z) = W(eps z) X(z) on the given points.
///
/// Square W: X = W(eps z)^{-1} W(z) (SingularAtSample if W(eps z) is
/// singular). Non-square Laurent W with W(eps z) = W(z) P_N: X = P_N^{-1}.
/// Any other non-square W: least-squares X with the residual reported.
/// When cfg is given, the kernel K_W(z, w) - K_W(eps z, eps w) is also tested
/// for positivity.
XFactorReport schur_x_factor(const MatrixFunction& W, int N, const std::vector<cd>& points,
                             double tol = 1e-10,
                             const std::optional<GridConfig>& cfg = std::nullopt);

/// F_N with entries eps^{-jk} / sqrt(N).
CMatrix dft_matrix(int N);

/// diag(1, z^{-1}, ..., z^{1-N}) F_N.
LaurentMatrix w_hat(int N);

struct FactorResult {
  /// R(u) with W(z) = R(z^N) w_hat(N)(z).
  LaurentMatrix R;
  /// max coefficient deviation of R(z^N) w_hat(z) from W.
  double reconstruction_error = 0.0;
};

/// Computes W(z) F_N^* diag(1, z, ..., z^{N-1}) on coefficients and reads R
/// off the exponents, all of which must be multiples of N. Errors: NotInCN,
/// DeterminantVanishes (det W vanishes at every probe point),
/// ExponentNotMultipleOfN.
FactorResult factor_R(const LaurentMatrix& W, double tol = 1e-12);

struct ProductCheck {
  /// W1(z) W2(conj z)^*.
  bool depends_on_zN = false;
  LaurentMatrix product;
  /// W1(z) W2(1 / conj z)^*.
  bool reflected_depends_on_zN = false;
  LaurentMatrix reflected_product;
};

/// Forms both products on coefficients and reports, for each, whether only
/// multiples of N occur. The reflected product always does for members of
/// C_N; the other one does in special cases such as the Haar filter.
ProductCheck product_zN_check(const LaurentMatrix& W1, const LaurentMatrix& W2,
                              double tol = 1e-12);

/// D_N(z) = diag(z^N, eps^{N-1} z^{N-1}, ..., eps z).
LaurentMatrix D_N(int N);

/// Coefficient check of W(eps z) = D_N(1)^{-1} W(z) P_N; returns the deviation.
double periodic_deviation(const LaurentMatrix& W);

/// W -> D_N W. Throws NotPeriodicSymmetric unless W satisfies the periodic
/// symmetry (within tol * max(1, max|W_k|)).
LaurentMatrix periodic_map(const LaurentMatrix& W, double tol = 1e-12);

/// (1/sqrt N) [eps^{-ij} s_i(eps^j z)]_{i,j}: the general solution of the
/// periodic symmetry.
LaurentMatrix build_periodic(const FilterBank& bank);

struct SymmetryT {
  CMatrix T;
  /// Least-squares residual of the similarity equations.
  double residual = 0.0;
  /// ||T^N - I||.
  double power_residual = 0.0;
  double min_singular_value = 0.0;
  bool minimal = true;
  Eigen::VectorXcd eigenvalues;
};

/// Solves eps A T = T A, T B P_N = B, eps C T = C for T, which relates the
/// realizations (eps A, B, eps C, D) of W(eps z) and (A, B P_N, C, D P_N) of
/// W(z) P_N. Errors: NoSimilarity when the residual (including ||D - D P_N||)
/// exceeds tol, TNotInvertible when T is singular.
SymmetryT symmetry_realization_T(const Realization& R, int N, double tol = 1e-8);

}  // namespace cuntzwave
