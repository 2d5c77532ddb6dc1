#include "cuntzwave/filters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cuntzwave/error.hpp"

namespace cuntzwave {

namespace {

void check_scale(int N) {
  if (N < 2) fail(ErrorCode::InvalidArgument, "scale N must be >= 2");
}

double scaled_tol(double tol, const LaurentMatrix& W) {
  return tol * std::max(1.0, W.max_abs());
}

bool exactly_identity(const CMatrix& P) {
  const CMatrix I = CMatrix::Identity(P.rows(), P.cols());
  return (P.array() == I.array()).all();
}

CMatrix kron(const CMatrix& X, const CMatrix& Y) {
  CMatrix out(X.rows() * Y.rows(), X.cols() * Y.cols());
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < X.cols(); ++j) {
      out.block(i * Y.rows(), j * Y.cols(), Y.rows(), Y.cols()) = X(i, j) * Y;
    }
  }
  return out;
}

CVector vec(const CMatrix& M) { return Eigen::Map<const CVector>(M.data(), M.size()); }

// diag(1, z, ..., z^{N-1}).
LaurentMatrix monomial_diagonal(int N) {
  LaurentMatrix out(N, N);
  for (int j = 0; j < N; ++j) {
    CMatrix e = CMatrix::Zero(N, N);
    e(j, j) = 1.0;
    out.add_term(j, e);
  }
  return out;
}

}  // namespace

void FilterBank::validate() const {
  check_scale(N);
  if (static_cast<int>(s_hat.size()) != N) {
    fail(ErrorCode::InvalidArgument, "filter bank must hold exactly N functions");
  }
  for (const auto& s : s_hat) {
    if (s.rows() != 1 || s.cols() != 1) {
      fail(ErrorCode::DimensionMismatch, "filter bank entries must be scalar");
    }
  }
}

double inv_sqrt(int N) { return std::sqrt(1.0 / N); }

CMatrix permutation_matrix(int N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "permutation_matrix: N must be >= 1");
  CMatrix P = CMatrix::Zero(N, N);
  P(0, N - 1) = 1.0;
  for (int i = 1; i < N; ++i) P(i, i - 1) = 1.0;
  return P;
}

LaurentMatrix build_filter(const FilterBank& bank) {
  bank.validate();
  const int N = bank.N;
  const double c = inv_sqrt(N);
  LaurentMatrix W(N, N);
  for (int i = 0; i < N; ++i) {
    for (const auto& [k, s] : bank.s_hat[static_cast<std::size_t>(i)].terms()) {
      CMatrix coeff = CMatrix::Zero(N, N);
      for (int j = 0; j < N; ++j) {
        coeff(i, j) = (s(0, 0) * c) * unit_root(N, static_cast<long long>(j) * k);
      }
      W.add_term(k, coeff);
    }
  }
  return W;
}

CNCheck check_cn(const LaurentMatrix& W, double tol, bool allow_nonsquare) {
  const int N = static_cast<int>(W.cols());
  check_scale(N);
  CNCheck out;
  out.nonsquare = W.rows() != W.cols();
  if (out.nonsquare && !allow_nonsquare) fail(ErrorCode::NotSquare, "check_cn: W must be square");
  out.deviation = max_difference(W.rotate(N, 1), W * permutation_matrix(N));
  out.in_cn = out.deviation <= scaled_tol(tol, W);
  if (out.in_cn && !out.nonsquare) {
    const double c = inv_sqrt(N);
    FilterBank bank;
    bank.N = N;
    for (int i = 0; i < N; ++i) {
      LaurentMatrix s(1, 1);
      for (const auto& [k, m] : W.terms()) s.add_term(k, CMatrix::Constant(1, 1, m(i, 0) / c));
      bank.s_hat.push_back(std::move(s));
    }
    out.bank = std::move(bank);
  }
  return out;
}

PMatrix validate_P(const CMatrix& P, int N, double tol) {
  check_scale(N);
  if (P.rows() != N || P.cols() != N) fail(ErrorCode::DimensionMismatch, "P must be N x N");
  std::vector<CMatrix> powers{CMatrix::Identity(N, N)};
  for (int l = 1; l <= N; ++l) powers.push_back(powers.back() * P);
  if (max_abs(powers[static_cast<std::size_t>(N)] - CMatrix::Identity(N, N)) > tol) {
    fail(ErrorCode::PowerNotIdentity, "P^N differs from the identity");
  }
  std::vector<int> bad;
  for (int l = 1; l < N; ++l) {
    const CMatrix M = CMatrix::Identity(N, N) - unit_root(N, l) * powers[static_cast<std::size_t>(l)];
    if (std::abs(M.determinant()) <= tol) bad.push_back(l);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "det(I - eps^l P^l) vanishes for l =";
    for (int l : bad) msg << ' ' << l;
    fail(ErrorCode::DeterminantVanishes, msg.str());
  }
  return {N, P};
}

std::vector<LaurentMatrix> decompose_P(const LaurentMatrix& W, const PMatrix& P) {
  const int N = P.N;
  if (W.rows() != N) fail(ErrorCode::RowCountMismatch, "decompose_P: W must have N rows");
  std::vector<LaurentMatrix> parts(static_cast<std::size_t>(N), LaurentMatrix(W.rows(), W.cols()));

  if (exactly_identity(P.P)) {
    for (const auto& [m, c] : W.terms()) {
      parts[static_cast<std::size_t>(wrap_index(-static_cast<long long>(m), N))].add_term(m, c);
    }
    return parts;
  }

  std::vector<CMatrix> powers{CMatrix::Identity(N, N)};
  for (int l = 1; l < N; ++l) powers.push_back(powers.back() * P.P);
  const double chop_tol = scaled_tol(1e-13, W);
  for (int k = 0; k < N; ++k) {
    LaurentMatrix& Wk = parts[static_cast<std::size_t>(k)];
    for (const auto& [m, c] : W.terms()) {
      CMatrix acc = CMatrix::Zero(W.rows(), W.cols());
      for (int l = 0; l < N; ++l) {
        const long long phase = static_cast<long long>(l) * (k + m);
        acc += unit_root(N, phase) *
               (powers[static_cast<std::size_t>(wrap_index(static_cast<long long>(k) * l, N))] * c);
      }
      Wk.add_term(m, acc / static_cast<double>(N));
    }
    Wk = Wk.chop(chop_tol);
  }
  return parts;
}

DecompositionCheck check_decomposition(const LaurentMatrix& W, const PMatrix& P,
                                       const std::vector<LaurentMatrix>& parts) {
  const int N = P.N;
  if (static_cast<int>(parts.size()) != N) {
    fail(ErrorCode::InvalidArgument, "check_decomposition: expected N parts");
  }
  DecompositionCheck out;
  LaurentMatrix sum(W.rows(), W.cols());
  for (const auto& Wk : parts) sum += Wk;
  out.sum_deviation = max_difference(sum, W);

  // (eps P)^{-k} = eps^{-k} P^{N-k}
  std::vector<CMatrix> powers{CMatrix::Identity(N, N)};
  for (int l = 1; l < N; ++l) powers.push_back(powers.back() * P.P);
  for (int k = 0; k < N; ++k) {
    const auto& Wk = parts[static_cast<std::size_t>(k)];
    const CMatrix M = unit_root(N, -k) * powers[static_cast<std::size_t>(wrap_index(N - k, N))];
    out.symmetry_deviation =
        std::max(out.symmetry_deviation, max_difference(Wk.rotate(N, 1), M * Wk));
  }
  return out;
}

OrthogonalityReport krein_orthogonality_check(const LaurentMatrix& W, const PMatrix& P,
                                              const SignatureMatrix& J, double tol) {
  if (J.dim() != P.N) fail(ErrorCode::DimensionMismatch, "J must be N x N");
  if (max_abs(P.P.adjoint() * J.matrix() * P.P - J.matrix()) > 1e-10) {
    fail(ErrorCode::PNotJUnitary, "P is not J-unitary");
  }
  OrthogonalityReport out;
  out.parts = decompose_P(W, P);
  for (int l = 0; l < P.N; ++l) {
    for (int k = 0; k < P.N; ++k) {
      if (l == k) continue;
      out.max_inner = std::max(
          out.max_inner, max_abs(h2j_gram(out.parts[static_cast<std::size_t>(l)],
                                          out.parts[static_cast<std::size_t>(k)], J)));
    }
  }
  out.orthogonal = out.max_inner <= tol;
  return out;
}

XFactorReport schur_x_factor(const MatrixFunction& W, int N, const std::vector<cd>& points,
                             double tol, const std::optional<GridConfig>& cfg) {
  check_scale(N);
  const cd eps = unit_root(N, 1);
  auto sample = [&](cd z) -> CMatrix {
    try {
      return W(z);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularResolvent || e.code() == ErrorCode::EvalAtZeroWithPole) {
        fail(ErrorCode::SingularAtSample, e.what());
      }
      throw;
    }
  };

  XFactorReport out;
  out.points = points;
  const bool square = W.rows() == W.cols();
  bool structural = false;
  if (!square && W.laurent() && W.cols() == N) {
    structural = check_cn(*W.laurent(), 1e-12, true).in_cn;
  }
  out.method = square ? "pointwise-inverse" : (structural ? "structural" : "pseudo-inverse");
  const CMatrix Pinv = permutation_matrix(N).transpose();

  for (cd z : points) {
    const CMatrix Wz = sample(z);
    const CMatrix We = sample(eps * z);
    CMatrix X;
    if (square) {
      Eigen::FullPivLU<CMatrix> lu(We);
      lu.setThreshold(1e-12);
      if (!lu.isInvertible()) fail(ErrorCode::SingularAtSample, "W(eps z) is singular at a sample");
      X = lu.solve(Wz);
    } else if (structural) {
      X = Pinv;
    } else {
      X = We.completeOrthogonalDecomposition().solve(Wz);
    }
    out.factorization_residual = std::max(out.factorization_residual, spectral_norm(We * X - Wz));
    out.max_norm = std::max(out.max_norm, spectral_norm(X));
    out.samples.push_back(std::move(X));
  }
  out.schur = out.max_norm <= 1.0 + tol;
  if (cfg) {
    const Kernel K = KernelSpec::schur(W).kernel();
    const MatrixFunction one(LaurentMatrix::identity(W.rows()));
    out.positivity = positivity_test(K, one, DiskMap::rotation(N), K, *cfg);
  }
  return out;
}

CMatrix dft_matrix(int N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "dft_matrix: N must be >= 1");
  const double c = inv_sqrt(N);
  CMatrix F(N, N);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) F(j, k) = c * unit_root(N, -static_cast<long long>(j) * k);
  }
  return F;
}

LaurentMatrix w_hat(int N) {
  check_scale(N);
  const CMatrix F = dft_matrix(N);
  LaurentMatrix out(N, N);
  for (int i = 0; i < N; ++i) {
    CMatrix row = CMatrix::Zero(N, N);
    row.row(i) = F.row(i);
    out.add_term(-i, row);
  }
  return out;
}

FactorResult factor_R(const LaurentMatrix& W, double tol) {
  if (W.rows() != W.cols()) fail(ErrorCode::NotInCN, "factor_R: W must be square");
  const CNCheck cn = check_cn(W, tol);
  if (!cn.in_cn) fail(ErrorCode::NotInCN, "factor_R: W does not satisfy W(eps z) = W(z) P_N");
  const int N = static_cast<int>(W.cols());

  bool nondegenerate = false;
  for (int k = 0; k < 5 && !nondegenerate; ++k) {
    const cd z = std::polar(0.3 + 0.1 * k, 0.7 * k + 0.2);
    nondegenerate = std::abs(W(z).determinant()) > 1e-12;
  }
  if (!nondegenerate) fail(ErrorCode::DeterminantVanishes, "factor_R: det W vanishes identically");

  // W_hat^{-1} = F_N^* diag(1, z, ..., z^{N-1}) = E diag(1, z, ...) / sqrt(N),
  // with E the unnormalised conjugate DFT matrix.
  CMatrix E(N, N);
  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < N; ++j) E(k, j) = unit_root(N, static_cast<long long>(j) * k);
  }
  const LaurentMatrix WE = (W * E) * monomial_diagonal(N);
  const double root = std::sqrt(static_cast<double>(N));
  LaurentMatrix Q(N, N);
  for (const auto& [k, c] : WE.terms()) Q.add_term(k, c / root);
  Q = Q.chop(scaled_tol(tol, W));

  LaurentMatrix R(N, N);
  for (const auto& [k, c] : Q.terms()) {
    if (wrap_index(k, N) != 0) {
      fail(ErrorCode::ExponentNotMultipleOfN,
           "factor_R: quotient has exponent " + std::to_string(k) + " not divisible by N");
    }
    R.add_term(k / N, c);
  }
  FactorResult out{R, 0.0};
  out.reconstruction_error = max_difference(R.compose_power(N) * w_hat(N), W);
  return out;
}

ProductCheck product_zN_check(const LaurentMatrix& W1, const LaurentMatrix& W2, double tol) {
  for (const LaurentMatrix* W : {&W1, &W2}) {
    if (W->rows() != W->cols() || !check_cn(*W, tol).in_cn) {
      fail(ErrorCode::NotInCN, "product_zN_check: inputs must lie in C_N");
    }
  }
  if (W1.cols() != W2.cols()) fail(ErrorCode::DimensionMismatch, "product_zN_check: N differs");
  const int N = static_cast<int>(W1.cols());
  const double chop_tol = tol * std::max(1.0, W1.max_abs() * W2.max_abs());
  auto only_multiples = [N](const LaurentMatrix& F) {
    for (const auto& [k, c] : F.terms()) {
      if (wrap_index(k, N) != 0) return false;
    }
    return true;
  };
  LaurentMatrix reflected(W2.cols(), W2.rows());
  for (const auto& [k, c] : W2.terms()) reflected.add_term(-k, c.adjoint());
  const LaurentMatrix plain = (W1 * W2.paraconjugate()).chop(chop_tol);
  const LaurentMatrix refl = (W1 * reflected).chop(chop_tol);
  return {only_multiples(plain), plain, only_multiples(refl), refl};
}

LaurentMatrix D_N(int N) {
  check_scale(N);
  LaurentMatrix out(N, N);
  for (int i = 0; i < N; ++i) {
    CMatrix e = CMatrix::Zero(N, N);
    e(i, i) = unit_root(N, N - i);
    out.add_term(N - i, e);
  }
  return out;
}

double periodic_deviation(const LaurentMatrix& W) {
  if (W.rows() != W.cols()) fail(ErrorCode::NotSquare, "periodic symmetry needs square W");
  const int N = static_cast<int>(W.cols());
  check_scale(N);
  CMatrix D1inv = CMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i) D1inv(i, i) = unit_root(N, i);
  return max_difference(W.rotate(N, 1), D1inv * W * permutation_matrix(N));
}

LaurentMatrix periodic_map(const LaurentMatrix& W, double tol) {
  if (periodic_deviation(W) > scaled_tol(tol, W)) {
    fail(ErrorCode::NotPeriodicSymmetric, "W(eps z) != D_N(1)^{-1} W(z) P_N");
  }
  return D_N(static_cast<int>(W.cols())) * W;
}

LaurentMatrix build_periodic(const FilterBank& bank) {
  bank.validate();
  const int N = bank.N;
  const double c = inv_sqrt(N);
  LaurentMatrix W(N, N);
  for (int i = 0; i < N; ++i) {
    for (const auto& [k, s] : bank.s_hat[static_cast<std::size_t>(i)].terms()) {
      CMatrix coeff = CMatrix::Zero(N, N);
      for (int j = 0; j < N; ++j) {
        const long long phase = static_cast<long long>(j) * k - static_cast<long long>(i) * j;
        coeff(i, j) = (s(0, 0) * c) * unit_root(N, phase);
      }
      W.add_term(k, coeff);
    }
  }
  return W;
}

SymmetryT symmetry_realization_T(const Realization& R, int N, double tol) {
  check_scale(N);
  R.check_shapes();
  if (R.inputs() != N) fail(ErrorCode::DimensionMismatch, "symmetry_realization_T: W needs N columns");
  const Index n = R.state_dim();
  const cd eps = unit_root(N, 1);
  const CMatrix P = permutation_matrix(N);
  const double d_residual = spectral_norm(R.D - R.D * P);

  SymmetryT out;
  out.minimal = is_minimal(R);
  if (n == 0) {
    out.residual = d_residual;
    if (out.residual > tol) fail(ErrorCode::NoSimilarity, "D != D P_N");
    out.T = CMatrix(0, 0);
    return out;
  }
  const CMatrix In = CMatrix::Identity(n, n);
  const CMatrix BP = R.B * P;
  const Index rows = n * n + n * N + R.outputs() * n;
  CMatrix M(rows, n * n);
  CVector b(rows);
  M.topRows(n * n) = kron(In, eps * R.A) - kron(R.A.transpose(), In);
  b.head(n * n).setZero();
  M.middleRows(n * n, n * N) = kron(BP.transpose(), In);
  b.segment(n * n, n * N) = vec(R.B);
  M.bottomRows(R.outputs() * n) = kron(In, eps * R.C);
  b.tail(R.outputs() * n) = vec(R.C);

  const CVector x = M.completeOrthogonalDecomposition().solve(b);
  out.residual = std::max((M * x - b).norm(), d_residual);
  if (out.residual > tol) {
    std::ostringstream msg;
    msg << "no similarity T: residual " << out.residual << " exceeds " << tol;
    fail(ErrorCode::NoSimilarity, msg.str());
  }
  out.T = Eigen::Map<const CMatrix>(x.data(), n, n);
  Eigen::JacobiSVD<CMatrix> svd(out.T);
  out.min_singular_value = svd.singularValues().minCoeff();
  if (out.min_singular_value <= tol * std::max(1.0, svd.singularValues().maxCoeff())) {
    fail(ErrorCode::TNotInvertible, "similarity T is singular");
  }
  CMatrix TN = In;
  for (int k = 0; k < N; ++k) TN = TN * out.T;
  out.power_residual = spectral_norm(TN - In);
  out.eigenvalues = Eigen::ComplexEigenSolver<CMatrix>(out.T).eigenvalues();
  return out;
}

}  // namespace cuntzwave
