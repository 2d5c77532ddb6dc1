#include "cuntzwave/debranges.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cuntzwave/error.hpp"

namespace cuntzwave {

namespace {

const CMatrix& certificate_of(const Realization& R) {
  if (!R.stein_H) fail(ErrorCode::InvalidArgument, "realization carries no Stein certificate H");
  return *R.stein_H;
}

void check_signature(const Realization& R, const SignatureMatrix& J) {
  R.check_shapes();
  if (R.outputs() != J.dim() || R.inputs() != J.dim()) {
    fail(ErrorCode::DimensionMismatch, "Stein equation: D must be dim(J) x dim(J)");
  }
}

CMatrix metric(const CMatrix& H, const CMatrix& J) {
  const Index n = H.rows();
  const Index p = J.rows();
  CMatrix G = CMatrix::Zero(n + p, n + p);
  G.topLeftCorner(n, n) = H;
  G.bottomRightCorner(p, p) = J;
  return G;
}

}  // namespace

double SteinCertificate::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

SteinCertificate stein_candidate(const Realization& R, const SignatureMatrix& J) {
  check_signature(R, J);
  const Index n = R.state_dim();
  const CMatrix& A = R.A;
  const CMatrix& B = R.B;
  const CMatrix& C = R.C;
  const CMatrix& D = R.D;
  const CMatrix& Jm = J.matrix();

  SteinCertificate cert;
  cert.H = CMatrix::Zero(n, n);
  if (n > 0) {
    // vec(A^* H A) = (A^T kron A^*) vec(H) in column-major order.
    const CMatrix Ah = A.adjoint();
    CMatrix K(n * n, n * n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        K.block(i * n, j * n, n, n) = A(j, i) * Ah;
      }
    }
    K -= CMatrix::Identity(n * n, n * n);
    const CMatrix rhs = -(C.adjoint() * Jm * C);
    const CVector b = Eigen::Map<const CVector>(rhs.data(), n * n);
    Eigen::FullPivLU<CMatrix> lu(K);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
      fail(ErrorCode::NoSolution,
           "Stein equation is singular: A has eigenvalues a, b with conj(a) b = 1");
    }
    const CVector x = lu.solve(b);
    const CMatrix H = Eigen::Map<const CMatrix>(x.data(), n, n);
    cert.H = 0.5 * (H + H.adjoint());
  }
  const CMatrix& H = cert.H;
  cert.residuals[0] = spectral_norm(A.adjoint() * H * A + C.adjoint() * Jm * C - H);
  cert.residuals[1] = spectral_norm(A.adjoint() * H * B + C.adjoint() * Jm * D);
  cert.residuals[2] = spectral_norm(B.adjoint() * H * B + D.adjoint() * Jm * D - Jm);
  if (n > 0) {
    Eigen::JacobiSVD<CMatrix> svd(H);
    cert.min_singular_value = svd.singularValues().minCoeff();
    const double scale = std::max(1.0, svd.singularValues().maxCoeff());
    cert.signature = hermitian_signature(H, 1e-9 * scale);
    cert.nu_neg = cert.signature.n_neg;
  }
  cert.minimal = is_minimal(R);
  if (!cert.minimal) {
    cert.warnings.emplace_back("NotMinimal: realization is not minimal, H may not be unique");
  }
  return cert;
}

SteinCertificate solve_stein(const Realization& R, const SignatureMatrix& J, double tol) {
  SteinCertificate cert = stein_candidate(R, J);
  if (!(cert.max_residual() <= tol)) {
    std::ostringstream msg;
    msg << "Stein residuals [" << cert.residuals[0] << ", " << cert.residuals[1] << ", "
        << cert.residuals[2] << "] exceed " << tol
        << ": the function is not J-unitary on the circle";
    fail(ErrorCode::ResidualTooLarge, msg.str());
  }
  if (R.state_dim() > 0) {
    const double scale = std::max(1.0, spectral_norm(cert.H));
    if (cert.min_singular_value <= tol * scale) {
      fail(ErrorCode::HSingular, "Stein solution H is singular");
    }
  }
  return cert;
}

CircleCheck check_junitary_on_circle(const MatrixFunction& W, const SignatureMatrix& J,
                                     int n_points, double tol) {
  if (n_points < 1) fail(ErrorCode::InvalidArgument, "n_points must be >= 1");
  if (W.rows() != J.dim() || W.cols() != J.dim()) {
    fail(ErrorCode::DimensionMismatch, "check_junitary_on_circle: W must be dim(J) x dim(J)");
  }
  CircleCheck out;
  out.points = n_points;
  const CMatrix& Jm = J.matrix();
  for (int k = 0; k < n_points; ++k) {
    const cd z = unit_root(n_points, k);
    CMatrix v;
    try {
      v = W(z);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularResolvent &&
          e.code() != ErrorCode::EvalAtZeroWithPole) {
        throw;
      }
      ++out.skipped;
      continue;
    }
    if (!v.allFinite()) {
      ++out.skipped;
      continue;
    }
    out.max_residual = std::max(out.max_residual, spectral_norm(v.adjoint() * Jm * v - Jm));
  }
  if (5 * out.skipped > n_points) {
    fail(ErrorCode::TooManyPolesOnCircle, "more than 20% of circle points are poles");
  }
  out.unitary = out.max_residual <= tol;
  return out;
}

FactorizationCheck ptheta_kernel_factorization_check(const Realization& R,
                                                     const SignatureMatrix& J,
                                                     const std::vector<cd>& points,
                                                     double tol) {
  check_signature(R, J);
  const CMatrix& H = certificate_of(R);
  const Index n = R.state_dim();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix Hinv = n > 0 ? CMatrix(H.fullPivLu().inverse()) : CMatrix(0, 0);
  const CMatrix& Jm = J.matrix();

  // Row factors C (I - zA)^{-1}, computed once per point.
  std::vector<CMatrix> F;
  std::vector<CMatrix> Theta;
  for (cd z : points) {
    Theta.push_back(evaluate(R, z));
    if (n == 0) {
      F.push_back(CMatrix::Zero(R.outputs(), 0));
      continue;
    }
    const CMatrix resolvent_t = (I - z * R.A).transpose();
    F.push_back(resolvent_t.fullPivLu().solve(R.C.transpose()).transpose());
  }
  FactorizationCheck out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      const cd z = points[i];
      const cd w = points[j];
      const CMatrix k = (Jm - Theta[i] * Jm * Theta[j].adjoint()) / (1.0 - z * std::conj(w));
      const CMatrix r = n > 0 ? CMatrix(F[i] * Hinv * F[j].adjoint())
                              : CMatrix::Zero(R.outputs(), R.outputs());
      out.max_deviation = std::max(out.max_deviation, max_abs(k - r));
    }
  }
  out.ok = out.max_deviation <= tol;
  return out;
}

BlockCheck coisometric_block_check(const Realization& R, const SignatureMatrix& J,
                                   double tol) {
  check_signature(R, J);
  const CMatrix& H = certificate_of(R);
  const CMatrix M = R.block_matrix();
  const CMatrix G = metric(H, J.matrix());
  const CMatrix Hinv = R.state_dim() > 0 ? CMatrix(H.fullPivLu().inverse()) : CMatrix(0, 0);
  const CMatrix Ginv = metric(Hinv, J.matrix());
  BlockCheck out;
  out.isometry_residual = spectral_norm(M.adjoint() * G * M - G);
  out.coisometry_residual = spectral_norm(M * Ginv * M.adjoint() - Ginv);
  out.ok = std::max(out.isometry_residual, out.coisometry_residual) <= tol;
  return out;
}

}  // namespace cuntzwave
