#include "cuntzwave/realization.hpp"

#include <cmath>

#include "cuntzwave/error.hpp"

namespace cuntzwave {

void Realization::check_shapes() const {
  const Index n = A.rows();
  const bool ok = A.cols() == n && B.rows() == n && C.cols() == n &&
                  C.rows() == D.rows() && B.cols() == D.cols() &&
                  D.rows() > 0 && D.cols() > 0;
  if (!ok) fail(ErrorCode::DimensionMismatch, "realization blocks do not conform");
  if (stein_H && (stein_H->rows() != n || stein_H->cols() != n)) {
    fail(ErrorCode::DimensionMismatch, "Stein certificate H must be n x n");
  }
}

CMatrix Realization::block_matrix() const {
  const Index n = state_dim();
  CMatrix M(n + outputs(), n + inputs());
  M << A, B, C, D;
  return M;
}

CMatrix evaluate(const Realization& R, cd z) {
  const Index n = R.state_dim();
  if (n == 0) return R.D;
  const CMatrix resolvent = CMatrix::Identity(n, n) - z * R.A;
  Eigen::FullPivLU<CMatrix> lu(resolvent);
  // A relative pivot threshold keeps near-poles from producing garbage.
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) {
    fail(ErrorCode::SingularResolvent, "I - zA is singular: z is a pole");
  }
  return R.D + z * R.C * lu.solve(R.B);
}

Realization blaschke_factor(cd a) {
  if (!(std::abs(a) < 1.0)) {
    fail(ErrorCode::ModulusNotLessThanOne, "Blaschke zero must lie in the open disk");
  }
  const double s = std::sqrt(1.0 - std::norm(a));
  Realization R;
  R.A = CMatrix::Constant(1, 1, std::conj(a));
  R.B = CMatrix::Constant(1, 1, s);
  R.C = CMatrix::Constant(1, 1, s);
  R.D = CMatrix::Constant(1, 1, -a);
  return R;
}

std::vector<CMatrix> taylor_coeffs(const Realization& R, int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "taylor_coeffs: count must be >= 1");
  R.check_shapes();
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(R.D);
  CMatrix AkB = R.B;
  for (int k = 1; k < count; ++k) {
    out.push_back(R.C * AkB);
    AkB = R.A * AkB;
  }
  return out;
}

Realization compose_power(const Realization& R, int N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "compose_power: N must be >= 1");
  R.check_shapes();
  const Index n = R.state_dim();
  Realization out;
  out.A = CMatrix::Zero(n * N, n * N);
  for (int i = 0; i + 1 < N; ++i) {
    out.A.block(i * n, (i + 1) * n, n, n) = CMatrix::Identity(n, n);
  }
  out.A.block((N - 1) * n, 0, n, n) = R.A;
  out.B = CMatrix::Zero(n * N, R.inputs());
  out.B.bottomRows(n) = R.B;
  out.C = CMatrix::Zero(R.outputs(), n * N);
  out.C.leftCols(n) = R.C;
  out.D = R.D;
  return out;
}

Index numerical_rank(const CMatrix& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(M);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

MinimalityRanks minimality_ranks(const Realization& R, double rel_tol) {
  R.check_shapes();
  const Index n = R.state_dim();
  if (n == 0) return {};
  CMatrix obs(R.outputs() * n, n);
  CMatrix ctrl(n, R.inputs() * n);
  CMatrix CAk = R.C;
  CMatrix AkB = R.B;
  for (Index k = 0; k < n; ++k) {
    obs.middleRows(k * R.outputs(), R.outputs()) = CAk;
    ctrl.middleCols(k * R.inputs(), R.inputs()) = AkB;
    CAk = CAk * R.A;
    AkB = R.A * AkB;
  }
  return {numerical_rank(obs, rel_tol), numerical_rank(ctrl, rel_tol)};
}

bool is_minimal(const Realization& R, double rel_tol) {
  const auto r = minimality_ranks(R, rel_tol);
  return r.observability == R.state_dim() && r.controllability == R.state_dim();
}

MatrixFunction::MatrixFunction(LaurentMatrix laurent)
    : rows_(laurent.rows()), cols_(laurent.cols()), laurent_(std::move(laurent)) {
  fn_ = [w = *laurent_](cd z) { return w(z); };
}

MatrixFunction::MatrixFunction(Realization realization)
    : rows_(realization.outputs()),
      cols_(realization.inputs()),
      realization_(std::move(realization)) {
  realization_->check_shapes();
  fn_ = [r = *realization_](cd z) { return evaluate(r, z); };
}

MatrixFunction::MatrixFunction(Index rows, Index cols, Callable fn)
    : rows_(rows), cols_(cols), fn_(std::move(fn)) {}

MatrixFunction MatrixFunction::reflected() const {
  if (laurent_) return MatrixFunction(laurent_->paraconjugate());
  return MatrixFunction(cols_, rows_,
                        [fn = fn_](cd z) -> CMatrix { return fn(std::conj(z)).adjoint(); });
}

std::vector<CMatrix> taylor_coeffs(const MatrixFunction& W, int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "taylor_coeffs: count must be >= 1");
  if (W.realization()) return taylor_coeffs(*W.realization(), count);
  if (W.laurent()) {
    const auto& L = *W.laurent();
    if (auto lo = L.min_exponent(); lo && *lo < 0) {
      fail(ErrorCode::NegativeExponent, "taylor_coeffs: function has a pole at 0");
    }
    std::vector<CMatrix> out;
    for (int k = 0; k < count; ++k) out.push_back(L.coeff(k));
    return out;
  }
  fail(ErrorCode::InvalidArgument, "taylor_coeffs: needs a Laurent or realization function");
}

}  // namespace cuntzwave
