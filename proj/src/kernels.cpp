#include "cuntzwave/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuntzwave/error.hpp"

namespace cuntzwave {

namespace {

constexpr double kDerivativeStep = 1e-6;
constexpr double kPoleNorm = 1e8;
constexpr int kMaxRetries = 100;

bool all_finite(const CMatrix& M) {
  for (Index i = 0; i < M.size(); ++i) {
    if (!std::isfinite(M.data()[i].real()) || !std::isfinite(M.data()[i].imag())) {
      return false;
    }
  }
  return true;
}

// Evaluates a function, translating pole signals into PoleAtSample.
CMatrix eval_at(const MatrixFunction& f, cd z) {
  CMatrix v;
  try {
    v = f(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularResolvent ||
        e.code() == ErrorCode::EvalAtZeroWithPole) {
      fail(ErrorCode::PoleAtSample, e.what());
    }
    throw;
  }
  if (!all_finite(v)) fail(ErrorCode::PoleAtSample, "function is not finite at sample");
  return v;
}

cd pairing_denominator(cd z, cd w) {
  const cd d = 1.0 - z * std::conj(w);
  if (std::abs(d) < 1e-14) fail(ErrorCode::UnitPairing, "z conj(w) = 1");
  return d;
}

CMatrix theta_kernel(const MatrixFunction& f, const CMatrix& J1, const CMatrix& J2,
                     cd z, cd w) {
  const CMatrix fz = eval_at(f, z);
  const CMatrix fw = eval_at(f, w);
  return (J2 - fz * J1 * fw.adjoint()) / pairing_denominator(z, w);
}

// (g(z) - g(conj w)) / (z - conj w), with the derivative on the diagonal.
CMatrix difference_quotient(const MatrixFunction& g, cd z, cd w) {
  const cd wb = std::conj(w);
  if (std::abs(z - wb) < kDerivativeStep) {
    const cd h = kDerivativeStep;
    return (eval_at(g, z + h) - eval_at(g, z - h)) / (2.0 * h);
  }
  return (eval_at(g, z) - eval_at(g, wb)) / (z - wb);
}

}  // namespace

CMatrix Kernel::operator()(cd z, cd w) const {
  CMatrix v = fn_(z, w);
  if (!all_finite(v)) fail(ErrorCode::PoleAtSample, "kernel value is not finite");
  return v;
}

Kernel hardy_kernel(Index p) {
  return Kernel(p, [p](cd z, cd w) -> CMatrix {
    return CMatrix::Identity(p, p) / pairing_denominator(z, w);
  });
}

Kernel block_diagonal(const Kernel& K, int copies) {
  if (copies < 1) fail(ErrorCode::InvalidArgument, "block_diagonal: copies must be >= 1");
  const Index p = K.dim();
  return Kernel(p * copies, [K, p, copies](cd z, cd w) -> CMatrix {
    const CMatrix block = K(z, w);
    CMatrix out = CMatrix::Zero(p * copies, p * copies);
    for (int c = 0; c < copies; ++c) out.block(c * p, c * p, p, p) = block;
    return out;
  });
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Schur: return "K_W";
    case KernelKind::Theta: return "K_Theta";
    case KernelKind::NonSquare: return "NonSquare";
    case KernelKind::Block: return "D_Theta";
  }
  return "?";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "K_W") return KernelKind::Schur;
  if (name == "K_Theta") return KernelKind::Theta;
  if (name == "NonSquare") return KernelKind::NonSquare;
  if (name == "D_Theta") return KernelKind::Block;
  fail(ErrorCode::InvalidArgument, "unknown kernel kind '" + name + "'");
}

KernelSpec KernelSpec::schur(MatrixFunction W) {
  return {KernelKind::Schur, std::move(W), std::nullopt, std::nullopt, std::nullopt};
}

KernelSpec KernelSpec::theta(MatrixFunction Theta, SignatureMatrix J) {
  if (Theta.rows() != J.dim() || Theta.cols() != J.dim()) {
    fail(ErrorCode::DimensionMismatch, "K_Theta: Theta must be dim(J) x dim(J)");
  }
  return {KernelKind::Theta, std::move(Theta), std::move(J), std::nullopt, std::nullopt};
}

KernelSpec KernelSpec::nonsquare(MatrixFunction Theta, SignatureMatrix J1,
                                 SignatureMatrix J2) {
  if (Theta.rows() != J2.dim() || Theta.cols() != J1.dim()) {
    fail(ErrorCode::DimensionMismatch, "nonsquare kernel: Theta must be dim(J2) x dim(J1)");
  }
  if (J1.nu_minus() != J2.nu_minus()) {
    fail(ErrorCode::SignatureMismatch,
         "nonsquare kernel: J1 and J2 must have the same number of negative eigenvalues");
  }
  return {KernelKind::NonSquare, std::move(Theta), std::nullopt, std::move(J1),
          std::move(J2)};
}

KernelSpec KernelSpec::block(MatrixFunction Theta, SignatureMatrix J) {
  if (Theta.rows() != J.dim() || Theta.cols() != J.dim()) {
    fail(ErrorCode::DimensionMismatch, "D_Theta: Theta must be dim(J) x dim(J)");
  }
  return {KernelKind::Block, std::move(Theta), std::move(J), std::nullopt, std::nullopt};
}

Index KernelSpec::dim() const {
  return kind == KernelKind::Block ? 2 * function.rows() : function.rows();
}

Kernel KernelSpec::kernel() const {
  return Kernel(dim(), [spec = *this](cd z, cd w) { return kernel_eval(spec, z, w); });
}

CMatrix kernel_eval(const KernelSpec& spec, cd z, cd w) {
  const MatrixFunction& f = spec.function;
  switch (spec.kind) {
    case KernelKind::Schur: {
      const CMatrix I_in = CMatrix::Identity(f.cols(), f.cols());
      const CMatrix I_out = CMatrix::Identity(f.rows(), f.rows());
      return theta_kernel(f, I_in, I_out, z, w);
    }
    case KernelKind::Theta:
      return theta_kernel(f, spec.J->matrix(), spec.J->matrix(), z, w);
    case KernelKind::NonSquare:
      return theta_kernel(f, spec.J1->matrix(), spec.J2->matrix(), z, w);
    case KernelKind::Block: {
      const CMatrix& J = spec.J->matrix();
      const Index p = f.rows();
      const MatrixFunction tilde = f.reflected();
      CMatrix out(2 * p, 2 * p);
      out.topLeftCorner(p, p) = theta_kernel(f, J, J, z, w);
      out.topRightCorner(p, p) = J * difference_quotient(f, z, w);
      out.bottomLeftCorner(p, p) = difference_quotient(tilde, z, w) * J;
      out.bottomRightCorner(p, p) = theta_kernel(tilde, J, J, z, w);
      return out;
    }
  }
  fail(ErrorCode::InvalidArgument, "kernel_eval: unknown kind");
}

cd sample_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, theta);
}

SampleGrid random_grid(const Kernel& K, int size, std::mt19937_64& rng, double radius) {
  if (size < 1) fail(ErrorCode::InvalidArgument, "random_grid: size must be >= 1");
  if (!(radius > 0.0 && radius < 1.0)) {
    fail(ErrorCode::InvalidArgument, "random_grid: radius must lie in (0, 1)");
  }
  SampleGrid grid;
  grid.points.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    bool accepted = false;
    for (int attempt = 0; attempt <= kMaxRetries && !accepted; ++attempt) {
      const cd z = sample_disk_point(rng, radius);
      try {
        const CMatrix d = K(z, z);
        if (max_abs(d) <= kPoleNorm) {
          grid.points.push_back(z);
          accepted = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PoleAtSample) throw;
      }
    }
    if (!accepted) {
      fail(ErrorCode::AllSamplesHitPoles, "random_grid: every resample hit a pole");
    }
  }
  return grid;
}

CMatrix gram_matrix(const Kernel& K, const SampleGrid& grid) {
  const Index M = static_cast<Index>(grid.points.size());
  const Index p = K.dim();
  const bool directed = !grid.directions.empty();
  if (directed) {
    if (grid.directions.size() != grid.points.size()) {
      fail(ErrorCode::DimensionMismatch, "gram_matrix: one direction per point required");
    }
    for (const auto& xi : grid.directions) {
      if (xi.size() != p) {
        fail(ErrorCode::DimensionMismatch, "gram_matrix: direction dimension != kernel dimension");
      }
    }
  }
  const Index b = directed ? 1 : p;
  CMatrix G(M * b, M * b);
  for (Index i = 0; i < M; ++i) {
    for (Index j = 0; j < M; ++j) {
      const CMatrix k = K(grid.points[i], grid.points[j]);
      if (directed) {
        G(i, j) = grid.directions[i].dot(k * grid.directions[j]);
      } else {
        G.block(i * p, j * p, p, p) = k;
      }
    }
  }
  return G;
}

Signature gram_signature(const CMatrix& G, double tol, double* min_eig, double* max_eig) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(G);
  double scale = 1.0;
  for (double l : ev) scale = std::max(scale, std::abs(l));
  const double t = tol * scale;
  Signature s;
  for (double l : ev) {
    if (l > t) {
      ++s.n_pos;
    } else if (l < -t) {
      ++s.n_neg;
    } else {
      ++s.n_zero;
    }
  }
  if (min_eig) *min_eig = ev.size() ? ev.minCoeff() : 0.0;
  if (max_eig) *max_eig = ev.size() ? ev.maxCoeff() : 0.0;
  return s;
}

namespace {

void check_config(const GridConfig& cfg) {
  if (cfg.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (cfg.max_points < 1) fail(ErrorCode::InvalidArgument, "max_points must be >= 1");
}

CMatrix trial_gram(const Kernel& K, const GridConfig& cfg, int trial) {
  std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(trial));
  const SampleGrid grid = random_grid(K, cfg.max_points, rng, cfg.radius);
  return gram_matrix(K, grid);
}

}  // namespace

NegativeSquares estimate_negative_squares(const Kernel& K, const GridConfig& cfg) {
  check_config(cfg);
  NegativeSquares out;
  const Index p = K.dim();
  for (int t = 0; t < cfg.trials; ++t) {
    const CMatrix G = trial_gram(K, cfg, t);
    TrialEvidence ev;
    ev.trial = t;
    ev.signature.n_neg = -1;
    for (int s = 1; s <= cfg.max_points; ++s) {
      double lo = 0.0;
      double hi = 0.0;
      const Signature sig = gram_signature(G.topLeftCorner(s * p, s * p), cfg.tol, &lo, &hi);
      if (sig.n_neg > ev.signature.n_neg) {
        ev.signature = sig;
        ev.points = s;
      }
      if (s == cfg.max_points) {
        ev.min_eigenvalue = lo;
        ev.max_eigenvalue = hi;
      }
    }
    out.kappa = std::max(out.kappa, ev.signature.n_neg);
    out.evidence.push_back(ev);
  }
  return out;
}

std::vector<SweepRow> eigen_sweep(const Kernel& K, const GridConfig& cfg) {
  check_config(cfg);
  std::vector<SweepRow> rows;
  const Index p = K.dim();
  for (int t = 0; t < cfg.trials; ++t) {
    const CMatrix G = trial_gram(K, cfg, t);
    for (int s = 1; s <= cfg.max_points; ++s) {
      SweepRow row;
      row.trial = t;
      row.grid_size = s;
      row.n_neg = gram_signature(G.topLeftCorner(s * p, s * p), cfg.tol, &row.min_eigenvalue)
                      .n_neg;
      rows.push_back(row);
    }
  }
  return rows;
}

cd DiskMap::operator()(cd z) const {
  switch (kind) {
    case Kind::Identity: return z;
    case Kind::Power: return ipow(z, N);
    case Kind::Rotation: return unit_root(N, 1) * z;
  }
  return z;
}

Kernel pullback_difference(const Kernel& K2, const MatrixFunction& m, DiskMap phi,
                           const Kernel& K1) {
  if (m.rows() != K2.dim() || m.cols() != K1.dim()) {
    fail(ErrorCode::DimensionMismatch,
         "pullback_difference: m must be dim(K2) x dim(K1)");
  }
  return Kernel(K2.dim(), [K2, m, phi, K1](cd z, cd w) -> CMatrix {
    return K2(z, w) - eval_at(m, z) * K1(phi(z), phi(w)) * eval_at(m, w).adjoint();
  });
}

PositivityResult positivity_test(const Kernel& K, const GridConfig& cfg) {
  check_config(cfg);
  PositivityResult out;
  out.worst_eigenvalue = std::numeric_limits<double>::infinity();
  out.max_eigenvalue = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(trial_gram(K, cfg, t));
    out.worst_eigenvalue = std::min(out.worst_eigenvalue, ev.minCoeff());
    out.max_eigenvalue = std::max(out.max_eigenvalue, ev.maxCoeff());
  }
  out.positive = out.worst_eigenvalue >= -cfg.tol;
  return out;
}

PositivityResult positivity_test(const Kernel& K2, const MatrixFunction& m, DiskMap phi,
                                 const Kernel& K1, const GridConfig& cfg) {
  return positivity_test(pullback_difference(K2, m, phi, K1), cfg);
}

MatrixFunction composition_adjoint_image(const Kernel& K1, const MatrixFunction& m,
                                         DiskMap phi, cd w, const CVector& xi) {
  if (m.cols() != K1.dim() || xi.size() != m.rows()) {
    fail(ErrorCode::DimensionMismatch, "composition_adjoint_image: dimensions do not conform");
  }
  const CVector v = eval_at(m, w).adjoint() * xi;
  const cd pw = phi(w);
  return MatrixFunction(K1.dim(), 1, [K1, v, pw](cd z) -> CMatrix { return K1(z, pw) * v; });
}

UnitaryCheck composition_unitary_check(const Kernel& K, DiskMap phi,
                                       const SampleGrid& grid, double tol) {
  UnitaryCheck out;
  for (cd z : grid.points) {
    for (cd w : grid.points) {
      out.max_deviation =
          std::max(out.max_deviation, max_abs(K(z, w) - K(phi(z), phi(w))));
    }
  }
  out.unitary = out.max_deviation <= tol;
  return out;
}

}  // namespace cuntzwave
