#include "cuntzwave/cuntz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuntzwave/error.hpp"

namespace cuntzwave {

namespace {

void check_index(int j, int N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "scale N must be >= 1");
  if (j < 0 || j >= N) fail(ErrorCode::IndexOutOfRange, "isometry index outside [0, N)");
}

CVector random_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = cd(g(rng), g(rng));
  return v;
}

}  // namespace

LaurentMatrix s_apply(int j, int N, const LaurentMatrix& f) {
  check_index(j, N);
  return f.compose_power(N).shifted(j);
}

SplitResult split(int N, const LaurentMatrix& f) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "split: N must be >= 1");
  SplitResult out;
  out.N = N;
  out.parts.assign(static_cast<std::size_t>(N), LaurentMatrix(f.rows(), f.cols()));
  for (const auto& [k, c] : f.terms()) {
    const int j = static_cast<int>(wrap_index(k, N));
    out.parts[static_cast<std::size_t>(j)].add_term((k - j) / N, c);
  }
  return out;
}

LaurentMatrix assemble(const SplitResult& s) {
  if (s.parts.empty() || static_cast<int>(s.parts.size()) != s.N) {
    fail(ErrorCode::InvalidArgument, "assemble: expected exactly N parts");
  }
  LaurentMatrix out(s.parts[0].rows(), s.parts[0].cols());
  for (int j = 0; j < s.N; ++j) out += s_apply(j, s.N, s.parts[static_cast<std::size_t>(j)]);
  return out;
}

LaurentMatrix s_adjoint(int j, int N, const LaurentMatrix& f) {
  check_index(j, N);
  return split(N, f).parts[static_cast<std::size_t>(j)];
}

CuntzReport verify_cuntz(int N, int degree, const SignatureMatrix& J) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "verify_cuntz: N must be >= 1");
  if (degree < N - 1) fail(ErrorCode::InvalidArgument, "verify_cuntz: degree must be >= N - 1");
  const Index p = J.dim();
  const int m = (degree + 1) / N - 1;  // domain degree: every S_j maps into degree <= degree
  const int c = N * (m + 1) - 1;       // largest compatible degree
  const Index dim_d = (degree + 1) * p;
  const Index dim_m = (m + 1) * p;
  const Index dim_c = (c + 1) * p;

  CuntzReport rep;
  rep.N = N;
  rep.degree = degree;
  rep.degree_compatible = (degree + 1) % N == 0;
  rep.checked_degree = c;

  // Metric I (x) J; J is its own inverse.
  auto metric = [&](Index blocks) {
    CMatrix G = CMatrix::Zero(blocks * p, blocks * p);
    for (Index b = 0; b < blocks; ++b) G.block(b * p, b * p, p, p) = J.matrix();
    return G;
  };
  const CMatrix Gd = metric(degree + 1);
  const CMatrix Gm = metric(m + 1);

  std::vector<CMatrix> S;
  std::vector<CMatrix> Sadj;
  for (int j = 0; j < N; ++j) {
    CMatrix Sj = CMatrix::Zero(dim_d, dim_m);
    for (int k = 0; k <= m; ++k) {
      Sj.block((static_cast<Index>(k) * N + j) * p, k * p, p, p) = CMatrix::Identity(p, p);
    }
    Sadj.push_back(Gm * Sj.adjoint() * Gd);
    S.push_back(std::move(Sj));
  }
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      CMatrix prod = Sadj[j] * S[k];
      if (j == k) prod -= CMatrix::Identity(dim_m, dim_m);
      rep.orthogonality_residual = std::max(rep.orthogonality_residual, max_abs(prod));
    }
  }
  CMatrix sum = CMatrix::Zero(dim_c, dim_c);
  for (int j = 0; j < N; ++j) {
    sum += S[j].topRows(dim_c) * Sadj[j].leftCols(dim_c);
  }
  sum -= CMatrix::Identity(dim_c, dim_c);
  rep.completeness_residual = max_abs(sum);
  rep.max_residual = std::max(rep.orthogonality_residual, rep.completeness_residual);
  rep.relations_exact = rep.max_residual == 0.0;
  return rep;
}

LaurentMatrix iterate_isometries(const std::vector<int>& word, int N,
                                 const LaurentMatrix& f) {
  if (word.empty()) fail(ErrorCode::InvalidArgument, "iterate_isometries: empty word");
  LaurentMatrix out = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = s_apply(*it, N, out);
  return out;
}

cd ptheta_inner(int N, const LaurentMatrix& f, const LaurentMatrix& g,
                const InnerProduct& base) {
  const SplitResult sf = split(N, f);
  const SplitResult sg = split(N, g);
  cd total = 0.0;
  for (int j = 0; j < N; ++j) {
    total += base(sf.parts[static_cast<std::size_t>(j)], sg.parts[static_cast<std::size_t>(j)]);
  }
  return total;
}

PThetaModel::PThetaModel(SignatureMatrix J, std::optional<Realization> R, int window)
    : J_(std::move(J)), realization_(std::move(R)), window_(window) {}

PThetaModel PThetaModel::hardy(SignatureMatrix J) {
  return PThetaModel(std::move(J), std::nullopt, 0);
}

PThetaModel PThetaModel::stein(Realization R, SignatureMatrix J, int window) {
  R.check_shapes();
  if (!R.stein_H) fail(ErrorCode::InvalidArgument, "Stein model needs a certificate H");
  if (R.outputs() != J.dim()) {
    fail(ErrorCode::DimensionMismatch, "Stein model: outputs must match dim(J)");
  }
  const Index n = R.state_dim();
  if (window < 1 || window < n) {
    fail(ErrorCode::TruncationTooSmall, "Stein model: window shorter than the state dimension");
  }
  PThetaModel model(std::move(J), std::move(R), window);
  const Realization& r = *model.realization_;
  const Index p = r.outputs();
  model.observability_.resize(window * p, n);
  CMatrix CAk = r.C;
  for (int k = 0; k < window; ++k) {
    model.observability_.middleRows(k * p, p) = CAk;
    CAk = CAk * r.A;
  }
  if (numerical_rank(model.observability_, 1e-9) != n) {
    fail(ErrorCode::InvalidArgument, "Stein model: realization is not observable on the window");
  }
  return model;
}

Index PThetaModel::input_dim() const {
  return realization_ ? realization_->inputs() : J_.dim();
}

CVector PThetaModel::coordinates(const LaurentMatrix& f) const {
  if (is_hardy()) fail(ErrorCode::InvalidArgument, "coordinates: Hardy model has none");
  if (f.cols() != 1 || f.rows() != output_dim()) {
    fail(ErrorCode::DimensionMismatch, "coordinates: element must be a C^p-valued function");
  }
  if (auto lo = f.min_exponent(); lo && *lo < 0) {
    fail(ErrorCode::NegativeExponent, "coordinates: element must be a Taylor polynomial");
  }
  const Index p = output_dim();
  CVector y(window_ * p);
  for (int k = 0; k < window_; ++k) y.segment(k * p, p) = f.coeff(k);
  const CVector x = observability_.colPivHouseholderQr().solve(y);
  const double miss = (observability_ * x - y).norm();
  if (miss > 1e-8 * std::max(1.0, y.norm())) {
    fail(ErrorCode::ResidualTooLarge, "coordinates: function does not lie in P(Theta)");
  }
  return x;
}

LaurentMatrix PThetaModel::element(const CVector& x, int count) const {
  if (is_hardy()) fail(ErrorCode::InvalidArgument, "element: Hardy model has no coordinates");
  const Realization& r = *realization_;
  if (x.size() != r.state_dim()) fail(ErrorCode::DimensionMismatch, "element: wrong state size");
  LaurentMatrix out(r.outputs(), 1);
  CVector Akx = x;
  for (int k = 0; k < count; ++k) {
    out.add_term(k, r.C * Akx);
    Akx = r.A * Akx;
  }
  return out;
}

cd PThetaModel::inner(const LaurentMatrix& f, const LaurentMatrix& g) const {
  if (is_hardy()) return h2j_inner(f, g, J_);
  const CVector x = coordinates(f);
  const CVector y = coordinates(g);
  return y.dot(*realization_->stein_H * x);
}

InnerProduct PThetaModel::as_inner() const {
  return [model = *this](const LaurentMatrix& f, const LaurentMatrix& g) {
    return model.inner(f, g);
  };
}

std::vector<CMatrix> PThetaModel::theta_coeffs(int count) const {
  if (is_hardy()) {
    return std::vector<CMatrix>(static_cast<std::size_t>(count),
                                CMatrix::Zero(J_.dim(), J_.dim()));
  }
  return taylor_coeffs(*realization_, count);
}

LaurentMatrix backward_shift(const LaurentMatrix& f) {
  if (auto lo = f.min_exponent(); lo && *lo < 0) {
    fail(ErrorCode::NegativeExponent, "backward_shift: function has a pole at 0");
  }
  return f.truncated(1, std::numeric_limits<int>::max()).shifted(-1);
}

ThetaNMaps::ThetaNMaps(PThetaModel base, int N, int truncation)
    : base_(std::move(base)), N_(N), truncation_(truncation) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "ThetaNMaps: N must be >= 1");
  if (truncation % N != 0 || truncation / N < 2) {
    fail(ErrorCode::TruncationTooSmall,
         "truncation must be a multiple of N with at least two coefficients per part");
  }
  if (!base_.is_hardy() && base_.window() > truncation / N - 1) {
    fail(ErrorCode::TruncationTooSmall, "truncation too short for the model window");
  }
}

SplitResult ThetaNMaps::U(const LaurentMatrix& f) const { return split(N_, f); }

std::vector<LaurentMatrix> ThetaNMaps::T(const std::vector<LaurentMatrix>& parts) const {
  if (static_cast<int>(parts.size()) != N_) {
    fail(ErrorCode::DimensionMismatch, "T: expected N components");
  }
  std::vector<LaurentMatrix> out(parts.begin() + 1, parts.end());
  out.push_back(backward_shift(parts.front()));
  return out;
}

LaurentMatrix ThetaNMaps::script_A(const LaurentMatrix& f) const { return backward_shift(f); }

CVector ThetaNMaps::script_C(const LaurentMatrix& f) const { return f.coeff(0); }

LaurentMatrix ThetaNMaps::B(const CVector& xi) const {
  if (xi.size() != base_.input_dim()) fail(ErrorCode::DimensionMismatch, "B: wrong input size");
  const int q = truncation_ / N_;
  const std::vector<CMatrix> theta = base_.theta_coeffs(q + 1);
  LaurentMatrix out(base_.output_dim(), 1);
  for (int k = 0; k < q; ++k) out.add_term(k, theta[static_cast<std::size_t>(k) + 1] * xi);
  return out;
}

LaurentMatrix ThetaNMaps::script_B(const CVector& xi) const {
  return B(xi).compose_power(N_).shifted(N_ - 1);
}

cd ThetaNMaps::inner_N(const LaurentMatrix& f, const LaurentMatrix& g) const {
  return ptheta_inner(N_, f, g, base_.as_inner());
}

cd ThetaNMaps::inner_tuple(const std::vector<LaurentMatrix>& f,
                           const std::vector<LaurentMatrix>& g) const {
  if (f.size() != g.size()) fail(ErrorCode::DimensionMismatch, "inner_tuple: sizes differ");
  cd total = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) total += base_.inner(f[j], g[j]);
  return total;
}

LaurentMatrix ThetaNMaps::random_element(std::mt19937_64& rng) const {
  const int q = truncation_ / N_;
  const Index p = base_.output_dim();
  SplitResult s;
  s.N = N_;
  for (int j = 0; j < N_; ++j) {
    if (base_.is_hardy()) {
      LaurentMatrix part(p, 1);
      for (int k = 0; k < q; ++k) part.add_term(k, random_vector(rng, p));
      s.parts.push_back(std::move(part));
    } else {
      s.parts.push_back(
          base_.element(random_vector(rng, base_.realization()->state_dim()), q));
    }
  }
  return assemble(s);
}

ThetaNIdentityReport check_thetaN_identities(const ThetaNMaps& maps, int trials,
                                             std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  std::mt19937_64 rng(seed);
  ThetaNIdentityReport rep;
  rep.trials = trials;
  const PThetaModel& base = maps.base();
  for (int t = 0; t < trials; ++t) {
    const LaurentMatrix f = maps.random_element(rng);
    const LaurentMatrix g = maps.random_element(rng);

    const SplitResult uaf = maps.U(maps.script_A(f));
    const std::vector<LaurentMatrix> tuf = maps.T(maps.U(f).parts);
    for (int j = 0; j < maps.N(); ++j) {
      rep.r0a = std::max(rep.r0a, max_difference(uaf.parts[static_cast<std::size_t>(j)],
                                                 tuf[static_cast<std::size_t>(j)]));
    }
    const cd lhs = maps.inner_N(maps.script_A(f), maps.script_A(g));
    const cd rhs = maps.inner_tuple(tuf, maps.T(maps.U(g).parts));
    rep.a_inner = std::max(rep.a_inner, std::abs(lhs - rhs));

    const CVector xi = random_vector(rng, base.input_dim());
    const CVector eta = random_vector(rng, base.input_dim());
    const cd bl = maps.inner_N(maps.script_B(xi), maps.script_B(eta));
    const cd br = base.inner(maps.B(xi), maps.B(eta));
    rep.b_inner = std::max(rep.b_inner, std::abs(bl - br));

    const LaurentMatrix f0 = maps.U(f).parts.front();
    const CVector c0 = base.is_hardy()
                           ? CVector(f0.coeff(0))
                           : CVector(base.realization()->C * base.coordinates(f0));
    rep.c_map = std::max(rep.c_map, (maps.script_C(f) - c0).cwiseAbs().maxCoeff());
  }
  return rep;
}

GleasonResult gleason_decompose(const LaurentMatrix& f, const std::vector<LaurentMatrix>& m,
                                int degree) {
  const int N = static_cast<int>(m.size());
  if (N < 1) fail(ErrorCode::InvalidArgument, "gleason_decompose: need at least one m_n");
  if (degree < 0) fail(ErrorCode::InvalidArgument, "gleason_decompose: degree must be >= 0");
  for (const auto& mn : m) {
    if (mn.rows() != 1 || mn.cols() != 1) {
      fail(ErrorCode::DimensionMismatch, "gleason_decompose: m_n must be scalar");
    }
  }
  const int G = degree / N;
  GleasonResult out;

  bool monomial = true;
  for (int n = 0; n < N && monomial; ++n) {
    monomial = identical(m[static_cast<std::size_t>(n)], LaurentMatrix::scalar({{n, 1.0}}));
  }
  const bool in_range =
      f.is_zero() || (*f.min_exponent() >= 0 && *f.max_exponent() <= N * G + N - 1);
  if (monomial && in_range) {
    out.parts = split(N, f).parts;
    return out;
  }

  int lo = 0;
  int hi = 0;
  if (!f.is_zero()) {
    lo = std::min(lo, *f.min_exponent());
    hi = std::max(hi, *f.max_exponent());
  }
  for (const auto& mn : m) {
    if (mn.is_zero()) continue;
    lo = std::min(lo, *mn.min_exponent());
    hi = std::max(hi, *mn.max_exponent() + N * G);
  }
  const Index rows = hi - lo + 1;
  const Index cols = static_cast<Index>(N) * (G + 1);
  CMatrix M = CMatrix::Zero(rows, cols);
  for (int n = 0; n < N; ++n) {
    for (int k = 0; k <= G; ++k) {
      for (const auto& [e, c] : m[static_cast<std::size_t>(n)].terms()) {
        M(e + N * k - lo, n * (G + 1) + k) += c(0, 0);
      }
    }
  }
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(M);
  cod.setThreshold(1e-12);
  out.rank_deficient = cod.rank() < cols;

  const double chop_tol = 1e-13 * std::max(1.0, f.max_abs());
  for (int n = 0; n < N; ++n) out.parts.emplace_back(f.rows(), f.cols());
  double residual2 = 0.0;
  for (Index r = 0; r < f.rows(); ++r) {
    for (Index c = 0; c < f.cols(); ++c) {
      CVector b = CVector::Zero(rows);
      for (const auto& [e, coeff] : f.terms()) b(e - lo) = coeff(r, c);
      const CVector x = cod.solve(b);
      residual2 += (M * x - b).squaredNorm();
      for (int n = 0; n < N; ++n) {
        for (int k = 0; k <= G; ++k) {
          CMatrix unit = CMatrix::Zero(f.rows(), f.cols());
          unit(r, c) = x(n * (G + 1) + k);
          out.parts[static_cast<std::size_t>(n)].add_term(k, unit);
        }
      }
    }
  }
  for (auto& part : out.parts) part = part.chop(chop_tol);
  out.residual = std::sqrt(residual2);
  return out;
}

}  // namespace cuntzwave
