#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dilutron {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

/// Default relative threshold for every rank decision: an eigenvalue counts
/// towards the support iff it exceeds kRankTol * lambda_max.
inline constexpr double kRankTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-10;
/// Negative eigenvalues at or above this are treated as numerical noise.
inline constexpr double kSqrtNegativeTol = 1e-12;

/// Subsystem dimensions of a bipartite operator. A single system is {d, 1}.
struct Dims {
  int a = 1;
  int b = 1;

  int total() const { return a * b; }
  int min() const { return a < b ? a : b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { kA, kB };

struct SpectralDecomposition {
  RealVector eigenvalues;     // non-increasing
  ComplexMatrix eigenvectors;  // column k pairs with eigenvalues[k]
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. The sweep order is
/// fixed, so identical input gives bit-identical output.
SpectralDecomposition hermitian_eig(const ComplexMatrix& h, double hermiticity_tol = kHermiticityTol);

/// Eigenvalues only, non-increasing. Same rotations as hermitian_eig without
/// accumulating eigenvectors.
RealVector hermitian_eigenvalues(const ComplexMatrix& h, double hermiticity_tol = kHermiticityTol);

/// Allocation-free eigenvalues of a small Hermitian matrix stored row-major in
/// `a` (n <= 8). `a` is overwritten; eigenvalues land in `out`, non-increasing.
void small_hermitian_eigenvalues(Complex* a, int n, double* out);

double max_abs_deviation_from_hermitian(const ComplexMatrix& h);

/// Number of eigenvalues strictly above rank_tol * lambda_max. The single
/// thresholding policy used for every rank decision.
int support_rank(std::span<const double> eigenvalues_desc, double rank_tol = kRankTol);

/// Sum of singular values. Hermitian input uses sum |eigenvalue|; otherwise
/// the eigenvalues of the Hermitian dilation [[0, A], [A^dagger, 0]].
double trace_norm(const ComplexMatrix& a);

/// Singular values (non-increasing) from the Hermitian dilation.
RealVector singular_values(const ComplexMatrix& a);

/// Square root of a PSD matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

/// Root fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)) = ||sqrt(rho) sqrt(sigma)||_1.
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep, Dims dims);

/// Partial transpose over B.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims);

ComplexMatrix support_projector(const ComplexMatrix& rho, double rank_tol = kRankTol);

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexVector kron(const ComplexVector& x, const ComplexVector& y);

/// Reorders tensor factors: output factor k is input factor perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims, std::span<const int> perm);
ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> dims, std::span<const int> perm);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // squared Schmidt coefficients, non-increasing
  ComplexMatrix basis_a;             // d_A x k, orthonormal columns
  ComplexMatrix basis_b;             // d_B x k, orthonormal columns
};

/// Schmidt decomposition of a normalized pure state with A-major amplitude
/// ordering (index a * d_B + b). Only the support (per support_rank) is kept.
SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, Dims dims);

}  // namespace dilutron
