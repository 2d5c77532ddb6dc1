#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cuntzwave/indefinite.hpp"
#include "cuntzwave/realization.hpp"

namespace cuntzwave {

/// A matrix-valued Hermitian kernel K(z, w) on the disk.
class Kernel {
 public:
  using Fn = std::function<CMatrix(cd, cd)>;

  Kernel(Index dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

  /// Throws PoleAtSample if the value is not finite.
  CMatrix operator()(cd z, cd w) const;
  Index dim() const { return dim_; }

 private:
  Index dim_;
  Fn fn_;
};

/// I_p / (1 - z conj(w)).
Kernel hardy_kernel(Index p = 1);

/// diag(K, ..., K) with `copies` blocks.
Kernel block_diagonal(const Kernel& K, int copies);

enum class KernelKind {
  Schur,      // K_W = (I - W(z)W(w)^*) / (1 - z w^*)
  Theta,      // K_Theta = (J - Theta(z) J Theta(w)^*) / (1 - z w^*)
  NonSquare,  // (J2 - Theta(z) J1 Theta(w)^*) / (1 - z w^*)
  Block,      // D_Theta, the 2x2 block kernel built from K_Theta and K_Theta~
};

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// The kernels attached to a matrix function and its signature matrices.
struct KernelSpec {
  KernelKind kind;
  MatrixFunction function;
  std::optional<SignatureMatrix> J;
  std::optional<SignatureMatrix> J1;
  std::optional<SignatureMatrix> J2;

  static KernelSpec schur(MatrixFunction W);
  static KernelSpec theta(MatrixFunction Theta, SignatureMatrix J);
  /// Requires nu_-(J1) == nu_-(J2) (SignatureMismatch otherwise).
  static KernelSpec nonsquare(MatrixFunction Theta, SignatureMatrix J1,
                              SignatureMatrix J2);
  static KernelSpec block(MatrixFunction Theta, SignatureMatrix J);

  Index dim() const;
  Kernel kernel() const;
};

/// Evaluates the kernel described by spec. Poles of the underlying function
/// surface as PoleAtSample; z conj(w) = 1 as UnitPairing. For the block
/// kernel the difference quotient on z = conj(w) is replaced by a central
/// finite-difference derivative with step 1e-6.
CMatrix kernel_eval(const KernelSpec& spec, cd z, cd w);

struct SampleGrid {
  std::vector<cd> points;
  /// Optional: one direction per point; when present the Gram matrix is the
  /// scalar matrix xi_i^* K(w_i, w_j) xi_j.
  std::vector<CVector> directions;
};

struct GridConfig {
  int trials = 50;
  int max_points = 12;
  std::uint64_t seed = 0;
  double radius = 0.95;
  /// Eigenvalue threshold for the sign count, scaled by max(1, max|lambda|).
  double tol = 1e-9;
};

/// Uniform in r^2 and angle on the disk of the given radius.
cd sample_disk_point(std::mt19937_64& rng, double radius);

/// Draws `size` points, resampling (up to 100 times per point) those at
/// which the kernel diagonal cannot be evaluated. Throws AllSamplesHitPoles.
SampleGrid random_grid(const Kernel& K, int size, std::mt19937_64& rng,
                       double radius);

/// Block matrix [K(w_i, w_j)]_{i,j}.
CMatrix gram_matrix(const Kernel& K, const SampleGrid& grid);

/// One trial: the smallest prefix size attaining the trial's largest negative
/// count, its signature, and the eigenvalue extremes of the full grid.
struct TrialEvidence {
  int trial = 0;
  int points = 0;
  Signature signature;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

struct NegativeSquares {
  /// Largest number of negative eigenvalues seen: a lower bound for the true
  /// number of negative squares, never an upper bound.
  int kappa = 0;
  std::vector<TrialEvidence> evidence;
};

/// Randomised lower-bound estimate of the number of negative squares. Trial t
/// uses the generator seeded with seed + t and draws max_points points in
/// sequence, so the grid for a smaller max_points is a prefix of the grid for
/// a larger one and the estimate is nondecreasing in max_points.
NegativeSquares estimate_negative_squares(const Kernel& K, const GridConfig& cfg);

/// Inertia of the Gram matrix with the scaled tolerance used by the estimator.
Signature gram_signature(const CMatrix& G, double tol, double* min_eig = nullptr,
                         double* max_eig = nullptr);

struct SweepRow {
  int trial = 0;
  int grid_size = 0;
  double min_eigenvalue = 0.0;
  int n_neg = 0;
};

/// For every trial, the inertia of every leading Gram block of sizes
/// 1..max_points (in points).
std::vector<SweepRow> eigen_sweep(const Kernel& K, const GridConfig& cfg);

/// Self-maps of the disk used by composition operators.
struct DiskMap {
  enum class Kind { Identity, Power, Rotation };
  Kind kind = Kind::Identity;
  int N = 1;

  static DiskMap identity() { return {Kind::Identity, 1}; }
  /// z -> z^N.
  static DiskMap power(int N) { return {Kind::Power, N}; }
  /// z -> e^{2 pi i / N} z.
  static DiskMap rotation(int N) { return {Kind::Rotation, N}; }

  cd operator()(cd z) const;
};

/// K2(z, w) - m(z) K1(phi(z), phi(w)) m(w)^*.
Kernel pullback_difference(const Kernel& K2, const MatrixFunction& m, DiskMap phi,
                           const Kernel& K1);

struct PositivityResult {
  bool positive = false;
  double worst_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Positive iff the smallest Gram eigenvalue over all trial grids is at least
/// -cfg.tol (absolute).
PositivityResult positivity_test(const Kernel& K, const GridConfig& cfg);
PositivityResult positivity_test(const Kernel& K2, const MatrixFunction& m,
                                 DiskMap phi, const Kernel& K1,
                                 const GridConfig& cfg);

/// The function z -> K1(z, phi(w)) m(w)^* xi, i.e. the image of the kernel
/// function K2(., w) xi under the adjoint of f -> m f(phi).
MatrixFunction composition_adjoint_image(const Kernel& K1, const MatrixFunction& m,
                                         DiskMap phi, cd w, const CVector& xi);

struct UnitaryCheck {
  bool unitary = false;
  double max_deviation = 0.0;
};

/// Compares K(z, w) with K(phi(z), phi(w)) on all grid pairs.
UnitaryCheck composition_unitary_check(const Kernel& K, DiskMap phi,
                                       const SampleGrid& grid, double tol = 1e-10);

}  // namespace cuntzwave
