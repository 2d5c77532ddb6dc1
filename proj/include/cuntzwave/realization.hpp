#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cuntzwave/laurent.hpp"
#include "cuntzwave/types.hpp"

namespace cuntzwave {

/// State-space data for W(z) = D + z C (I - zA)^{-1} B.
struct Realization {
  CMatrix A;
  CMatrix B;
  CMatrix C;
  CMatrix D;
  /// Associated Hermitian matrix, when one has been certified.
  std::optional<CMatrix> stein_H;

  Index state_dim() const { return A.rows(); }
  Index inputs() const { return D.cols(); }
  Index outputs() const { return D.rows(); }

  /// Throws DimensionMismatch unless A is n x n, B n x q, C p x n, D p x q.
  void check_shapes() const;

  /// The block operator matrix [[A, B], [C, D]].
  CMatrix block_matrix() const;
};

/// D + zC(I - zA)^{-1}B by a linear solve; SingularResolvent at poles.
CMatrix evaluate(const Realization& R, cd z);

/// Scalar realization of (z - a) / (1 - z conj(a)) with A = conj(a),
/// B = C = sqrt(1 - |a|^2), D = -a.
Realization blaschke_factor(cd a);

/// [D, CB, CAB, ..., C A^{count-2} B].
std::vector<CMatrix> taylor_coeffs(const Realization& R, int count);

/// Realization of z -> W(z^N) on N copies of the state space: the state
/// matrix shifts the blocks cyclically and feeds A back into the last one,
/// the input enters the last block and the output reads the first.
Realization compose_power(const Realization& R, int N);

struct MinimalityRanks {
  Index observability = 0;
  Index controllability = 0;
};

/// Numerical ranks of [C; CA; ...; CA^{n-1}] and [B, AB, ..., A^{n-1}B],
/// singular values below rel_tol * sigma_max treated as zero.
MinimalityRanks minimality_ranks(const Realization& R, double rel_tol = 1e-9);
bool is_minimal(const Realization& R, double rel_tol = 1e-9);

/// Numerical rank of a matrix at rel_tol * sigma_max.
Index numerical_rank(const CMatrix& M, double rel_tol);

/// Type-erased evaluable matrix function: a Laurent polynomial, a
/// realization, or an arbitrary callable with known shape.
class MatrixFunction {
 public:
  using Callable = std::function<CMatrix(cd)>;

  MatrixFunction(LaurentMatrix laurent);  // NOLINT(runtime/explicit)
  MatrixFunction(Realization realization);  // NOLINT(runtime/explicit)
  MatrixFunction(Index rows, Index cols, Callable fn);

  CMatrix operator()(cd z) const { return fn_(z); }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  const std::optional<LaurentMatrix>& laurent() const { return laurent_; }
  const std::optional<Realization>& realization() const { return realization_; }

  /// z -> W(conj(z))^*.
  MatrixFunction reflected() const;

 private:
  Index rows_;
  Index cols_;
  Callable fn_;
  std::optional<LaurentMatrix> laurent_;
  std::optional<Realization> realization_;
};

/// First `count` Taylor coefficients of a function analytic at the origin.
/// Laurent input must have no negative exponents; arbitrary callables are
/// not supported.
std::vector<CMatrix> taylor_coeffs(const MatrixFunction& W, int count);

}  // namespace cuntzwave
