#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "cuntzwave/indefinite.hpp"
#include "cuntzwave/laurent.hpp"
#include "cuntzwave/realization.hpp"

namespace cuntzwave {

/// (S_j f)(z) = z^j f(z^N): exponent k goes to kN + j. Requires 0 <= j < N.
LaurentMatrix s_apply(int j, int N, const LaurentMatrix& f);

/// f(z) = sum_j z^j f_j(z^N); parts[j] holds the exponents congruent to j.
struct SplitResult {
  int N = 1;
  std::vector<LaurentMatrix> parts;
};

SplitResult split(int N, const LaurentMatrix& f);
LaurentMatrix assemble(const SplitResult& s);

/// S_j^{[*]} f = f_j.
LaurentMatrix s_adjoint(int j, int N, const LaurentMatrix& f);

struct CuntzReport {
  int N = 1;
  int degree = 0;
  /// True when degree + 1 is a multiple of N; otherwise the completeness
  /// relation is checked on the largest compatible subspace only.
  bool degree_compatible = true;
  int checked_degree = 0;
  double orthogonality_residual = 0.0;
  double completeness_residual = 0.0;
  double max_residual = 0.0;
  bool relations_exact = false;
};

/// Builds S_j and S_j^{[*]} as matrices on C^p-valued polynomials of degree
/// <= degree with the metric I (x) J and checks S_j^{[*]} S_k = delta_jk I and
/// sum_j S_j S_j^{[*]} = I.
CuntzReport verify_cuntz(int N, int degree, const SignatureMatrix& J);

/// S_{i_1} S_{i_2} ... S_{i_k} f, rightmost first:
/// f -> z^m f(z^{N^k}) with m = sum_t i_t N^{t-1}.
LaurentMatrix iterate_isometries(const std::vector<int>& word, int N,
                                 const LaurentMatrix& f);

using InnerProduct = std::function<cd(const LaurentMatrix&, const LaurentMatrix&)>;

/// sum_j base(f_j, g_j) over the parts of the mod-N split.
cd ptheta_inner(int N, const LaurentMatrix& f, const LaurentMatrix& g,
                const InnerProduct& base);

/// Concrete model of P(Theta) on truncated Taylor data.
///
/// Hardy: Theta = 0, the space H_{2,J} with the coefficient form.
/// Stein: Theta with realization (A, B, C, D) and certificate H; elements are
/// f(z) = C(I - zA)^{-1} x and [f, g] = y^* H x, where x, y are recovered from
/// the first `window` Taylor coefficients by least squares.
class PThetaModel {
 public:
  static PThetaModel hardy(SignatureMatrix J);
  /// R must carry its certificate in stein_H and be observable on window.
  static PThetaModel stein(Realization R, SignatureMatrix J, int window);

  bool is_hardy() const { return !realization_.has_value(); }
  Index output_dim() const { return J_.dim(); }
  const SignatureMatrix& J() const { return J_; }
  const std::optional<Realization>& realization() const { return realization_; }
  int window() const { return window_; }
  /// Dimension of the coefficient space of Theta's inputs.
  Index input_dim() const;

  /// Coordinates x with f_k = C A^k x for k < window (Stein model only).
  /// Throws ResidualTooLarge when f is not of that form.
  CVector coordinates(const LaurentMatrix& f) const;
  /// First `count` Taylor coefficients of C(I - zA)^{-1} x.
  LaurentMatrix element(const CVector& x, int count) const;

  cd inner(const LaurentMatrix& f, const LaurentMatrix& g) const;
  InnerProduct as_inner() const;

  /// Taylor coefficients 0..count-1 of Theta (zero for the Hardy model).
  std::vector<CMatrix> theta_coeffs(int count) const;

 private:
  PThetaModel(SignatureMatrix J, std::optional<Realization> R, int window);

  SignatureMatrix J_;
  std::optional<Realization> realization_;
  int window_ = 0;
  CMatrix observability_;
};

/// (f(z) - f(0)) / z on coefficients.
LaurentMatrix backward_shift(const LaurentMatrix& f);

/// The maps U, T, script A, script B, script C attached to Theta(z^N) on
/// polynomials of degree < truncation.
class ThetaNMaps {
 public:
  /// truncation must be a positive multiple of N with at least two
  /// coefficients per part, and for the Stein model at least window + 1 of
  /// them; TruncationTooSmall otherwise.
  ThetaNMaps(PThetaModel base, int N, int truncation);

  int N() const { return N_; }
  int truncation() const { return truncation_; }
  const PThetaModel& base() const { return base_; }

  SplitResult U(const LaurentMatrix& f) const;
  /// (f_0, ..., f_{N-1}) -> (f_1, ..., f_{N-1}, R_0 f_0).
  std::vector<LaurentMatrix> T(const std::vector<LaurentMatrix>& parts) const;
  LaurentMatrix script_A(const LaurentMatrix& f) const;
  LaurentMatrix script_B(const CVector& xi) const;
  CVector script_C(const LaurentMatrix& f) const;
  /// R_0 Theta xi in P(Theta), truncated to one part.
  LaurentMatrix B(const CVector& xi) const;

  cd inner_N(const LaurentMatrix& f, const LaurentMatrix& g) const;
  cd inner_tuple(const std::vector<LaurentMatrix>& f,
                 const std::vector<LaurentMatrix>& g) const;

  /// Random element of P(Theta_N) on the truncation.
  LaurentMatrix random_element(std::mt19937_64& rng) const;

 private:
  PThetaModel base_;
  int N_;
  int truncation_;
};

struct ThetaNIdentityReport {
  /// max coefficient deviation between U script_A f and T U f.
  double r0a = 0.0;
  /// max |<Af, Ag> - <TUf, TUg>|.
  double a_inner = 0.0;
  /// max |<Bxi, Beta>_N - <Bxi, Beta>|.
  double b_inner = 0.0;
  /// max |script_C f - C (first part)(0)|.
  double c_map = 0.0;
  int trials = 0;
};

ThetaNIdentityReport check_thetaN_identities(const ThetaNMaps& maps, int trials,
                                             std::uint64_t seed);

struct GleasonResult {
  std::vector<LaurentMatrix> parts;
  double residual = 0.0;
  bool rank_deficient = false;
};

/// Least-squares solution of f(z) = sum_n m_n(z) g_n(z^N) with each g_n a
/// polynomial of degree <= degree / N. When m_n = z^n for all n this is the
/// split and is computed exactly.
GleasonResult gleason_decompose(const LaurentMatrix& f, const std::vector<LaurentMatrix>& m,
                                int degree);

}  // namespace cuntzwave
