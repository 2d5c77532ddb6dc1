#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace cuntzwave {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr cd kI{0.0, 1.0};

/// Reduces k modulo N into [0, N).
inline long long wrap_index(long long k, long long N) {
  const long long r = k % N;
  return r < 0 ? r + N : r;
}

/// e^{2 pi i k / N}. Quarter turns are returned exactly so that identities
/// involving -1 and +-i survive floating-point arithmetic bit for bit.
inline cd unit_root(int N, long long k) {
  const long long r = wrap_index(k, N);
  if (r == 0) return {1.0, 0.0};
  if (2 * r == N) return {-1.0, 0.0};
  if (4 * r == N) return {0.0, 1.0};
  if (4 * r == 3LL * N) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / N;
  return {std::cos(angle), std::sin(angle)};
}

/// z^k by repeated squaring; ipow(0, 0) == 1.
inline cd ipow(cd z, int k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  cd result{1.0, 0.0};
  cd base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

/// Largest entry modulus; zero for empty matrices.
inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Spectral norm (largest singular value).
double spectral_norm(const CMatrix& m);

}  // namespace cuntzwave
