#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <utility>

#include "cuntzwave/types.hpp"

namespace cuntzwave {

/// Finite Laurent polynomial with complex matrix coefficients,
/// W(z) = sum_k W_k z^k.
///
/// The coefficient map is kept canonical: a coefficient that is exactly the
/// zero matrix is never stored. Arithmetic is exact up to floating roundoff
/// of the coefficient operations themselves; exponent bookkeeping is exact.
/// Use chop() to discard roundoff residue after operations that average over
/// roots of unity.
class LaurentMatrix {
 public:
  using Terms = std::map<int, CMatrix>;

  LaurentMatrix(Index rows, Index cols);

  static LaurentMatrix constant(const CMatrix& value);
  static LaurentMatrix monomial(const CMatrix& value, int exponent);
  /// Scalar polynomial from (exponent, coefficient) pairs.
  static LaurentMatrix scalar(std::initializer_list<std::pair<int, cd>> terms);
  static LaurentMatrix identity(Index n);
  static LaurentMatrix zero(Index rows, Index cols) { return {rows, cols}; }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<int> min_exponent() const;
  std::optional<int> max_exponent() const;

  /// Adds value to the coefficient of z^exponent, dropping it if it cancels.
  void add_term(int exponent, const CMatrix& value);
  CMatrix coeff(int exponent) const;

  /// Exact finite sum; throws EvalAtZeroWithPole at z = 0 when a negative
  /// exponent is present.
  CMatrix operator()(cd z) const;

  LaurentMatrix operator-() const;
  LaurentMatrix& operator+=(const LaurentMatrix& other);
  LaurentMatrix& operator-=(const LaurentMatrix& other);

  /// Multiplies every coefficient by a complex scalar.
  LaurentMatrix scaled(cd factor) const;
  /// z -> W(conj(z))^*: coefficients conjugate-transposed, exponents kept.
  LaurentMatrix paraconjugate() const;
  /// z -> W(z^N): exponent k becomes kN.
  LaurentMatrix compose_power(int N) const;
  /// z -> W(e^{2 pi i j / N} z), done on coefficients with exact phase lookup.
  LaurentMatrix rotate(int N, long long j) const;
  /// Multiplies by z^shift.
  LaurentMatrix shifted(int shift) const;
  /// Keeps exponents in [lo, hi].
  LaurentMatrix truncated(int lo, int hi) const;
  /// Entry-wise zeroing of magnitudes <= tol, then canonicalisation.
  LaurentMatrix chop(double tol) const;

  LaurentMatrix entry(Index i, Index j) const;
  LaurentMatrix column(Index j) const;
  LaurentMatrix row(Index i) const;
  LaurentMatrix transpose() const;

  /// Largest coefficient entry modulus.
  double max_abs() const;

 private:
  Index rows_;
  Index cols_;
  Terms terms_;
};

LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b);
LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b);
/// Matrix product. A 1x1 factor multiplies the other operand as a scalar
/// function when ordinary dimensions do not conform.
LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator*(const CMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator*(const LaurentMatrix& a, const CMatrix& b);

/// Largest coefficient-entry difference over the union of exponents.
double max_difference(const LaurentMatrix& a, const LaurentMatrix& b);

/// Exact structural equality: same exponents and bitwise-identical
/// coefficients.
bool identical(const LaurentMatrix& a, const LaurentMatrix& b);

/// Matrix function of diagonal entries diag(d_0(z), ..., d_{n-1}(z)) where
/// each d_i is a scalar Laurent polynomial.
LaurentMatrix diagonal(std::initializer_list<LaurentMatrix> entries);

}  // namespace cuntzwave
