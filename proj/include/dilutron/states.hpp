#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilutron/linalg.hpp"

namespace dilutron {

inline constexpr double kWeightTol = 1e-12;

/// Positive, unit-trace, Hermitian matrix with subsystem dimensions.
/// Instances only come out of validate() or the named constructors below, so
/// the invariants hold for every value of this type.
class DensityOperator {
 public:
  /// Checks Hermiticity (1e-10), positivity (eigenvalues >= -1e-10) and trace
  /// (|Tr - 1| <= 1e-10); clamps and renormalizes inside those bands.
  static DensityOperator validate(const ComplexMatrix& raw, Dims dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  Dims dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  DensityOperator(ComplexMatrix m, Dims d) : matrix_(std::move(m)), dims_(d) {}

  ComplexMatrix matrix_;
  Dims dims_;
};

struct PureState {
  ComplexVector amplitudes;  // A-major: index a * d_B + b
  Dims dims;

  ComplexMatrix density() const { return amplitudes * amplitudes.adjoint(); }
};

/// Decomposition {p_i, phi_i} of a bipartite state into pure states.
struct PureStateEnsemble {
  std::vector<double> weights;
  std::vector<ComplexVector> states;  // normalized
  Dims dims;

  std::size_t size() const { return weights.size(); }
  ComplexMatrix reconstruct() const;
  /// Throws unless weights sum to 1 and every member is normalized (1e-10).
  void check() const;
};

/// Block-diagonal positive operator sum_i |i><i|_R (x) omega_i, possibly
/// subnormalized. The register basis is the computational basis of R.
struct CqOperator {
  std::vector<ComplexMatrix> blocks;

  int register_dim() const { return static_cast<int>(blocks.size()); }
  int block_dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().rows()); }
  double trace() const;
  /// Full (N d) x (N d) matrix with R as the first tensor factor.
  ComplexMatrix assemble() const;
  /// Tr_A: the classical state sum_i Tr[omega_i] |i><i|.
  ComplexMatrix register_marginal() const;
  /// Throws unless each block is PSD (1e-10) and the total trace <= 1 + 1e-10.
  void check() const;
};

PureState mes(int rank, Dims dims);
/// The pure state |Psi+_M><Psi+_M| as a DensityOperator.
DensityOperator mes_density(int rank, Dims dims);

DensityOperator pure_density(const PureState& psi);
DensityOperator product_density(const DensityOperator& a, const DensityOperator& b);

/// Seeded G G^dagger / Tr with G of size d x rank (complex Gaussian).
DensityOperator random_density(Dims dims, int rank, std::uint64_t seed);
PureState random_pure_state(Dims dims, std::uint64_t seed);

/// p Psi+_d + (1 - p) I / d^2, valid for p in [-1/(d^2 - 1), 1].
DensityOperator isotropic_state(int d, double p);
/// p (normalized antisymmetric projector) + (1 - p) (normalized symmetric
/// projector) on C^d (x) C^d, p in [0, 1].
DensityOperator werner_state(int d, double p);

/// Seeded N x r isometry: orthonormalized complex Gaussian draw.
ComplexMatrix random_isometry(int rows, int cols, std::uint64_t seed);
/// [I_r; 0]: the isometry that yields the eigen-ensemble.
ComplexMatrix identity_isometry(int rows, int cols);

/// Eigen-decomposition data an isometry acts on: rows sqrt(q_j) e_j^T for the
/// support of rho (rank per support_rank).
ComplexMatrix weighted_eigenbasis(const DensityOperator& rho);
int state_rank(const DensityOperator& rho);

/// Hughston-Jozsa-Wootters ensemble: sqrt(p_i)|phi_i> = sum_j V_ij sqrt(q_j)|e_j>.
/// Members with p_i < kWeightTol are dropped and weights renormalized.
PureStateEnsemble ensemble_from_isometry(const DensityOperator& rho, const ComplexMatrix& isometry);
/// Same as above from precomputed weighted_eigenbasis rows (no validation of V).
PureStateEnsemble ensemble_from_members(const ComplexMatrix& unnormalized_rows, Dims dims);

/// rho_RA = sum_i p_i |i><i| (x) Tr_B[phi_i].
CqOperator cq_extension(const PureStateEnsemble& ensemble);
/// rho_RAB = sum_i p_i |i><i| (x) phi_i, with R as the first factor.
ComplexMatrix cq_tripartite(const PureStateEnsemble& ensemble);

/// rho^{(x)n} with factors reordered to (A_1..A_n)(B_1..B_n).
DensityOperator tensor_power(const DensityOperator& rho, int n);
/// Pairs members (i, k) of two ensembles into the product ensemble on
/// (A_1 A_2)(B_1 B_2).
PureStateEnsemble product_ensemble(const PureStateEnsemble& first, const PureStateEnsemble& second);

/// Stable 64-bit FNV-1a digest of dims and matrix entries, as 16 hex digits.
std::string digest(const DensityOperator& rho);

}  // namespace dilutron
