#pragma once

#include <string>
#include <vector>

#include "dilutron/dilution.hpp"
#include "dilutron/execution.hpp"
#include "dilutron/states.hpp"

namespace dilutron {

/// Largest total dimension of an n-copy operator handled here (6 qubits).
inline constexpr int kMaxCopyDimension = 64;
/// Cap on (N d_A)^n for the block-wise statistic with diagonal sigma_R.
inline constexpr double kMaxSpectralTerms = 1 << 22;

/// (1/n) one-shot cost of rho^{(x)n}, n in {1, 2}. n = 1 is one_shot_cost.
/// For n = 2 the pool holds the searched decompositions of rho (x) rho plus
/// every product of two single-copy pool decompositions.
DilutionReport n_copy_cost(const DensityOperator& rho, int n, double eps, const OptimizerConfig& config);

/// Tr[{Delta >= 0} Delta] for Delta = rho_RA^{(x)n} - 2^{n gamma} (sigma_R (x) 1_A)^{(x)n}.
/// A diagonal sigma_R takes a block-wise path; otherwise the dense one below.
double inf_divergence_statistic(const CqOperator& rho_ra, const DensityOperator& sigma_r, int n, double gamma);
/// Full eigendecomposition of Delta, for any sigma_R.
double inf_divergence_statistic_dense(const CqOperator& rho_ra, const DensityOperator& sigma_r, int n, double gamma);

struct DivergenceScan {
  int n = 1;
  std::vector<double> gamma_grid;
  std::vector<double> values;
  std::string sigma = "iid";  // sigma_R^{(x)n} with sigma_R as given
};

std::vector<DivergenceScan> divergence_scan(const CqOperator& rho_ra, const DensityOperator& sigma_r,
                                            const std::vector<int>& n_list, const std::vector<double>& gamma_grid,
                                            Execution exec = Execution::kParallel);

/// `points` evenly spaced values over [center - 2, center + 2].
std::vector<double> default_gamma_grid(double center, int points = 101);

/// gamma in [lo, hi] at which the statistic falls to half of Tr[rho_RA]^n,
/// located by bisection to `tol`.
double transition_midpoint(const CqOperator& rho_ra, const DensityOperator& sigma_r, int n, double lo, double hi,
                           double tol = 1e-9);

/// S(rho_RA || rho_R (x) 1_A).
double relative_entropy_rate_reference(const CqOperator& rho_ra);

/// rho_R = Tr_A rho_RA as a DensityOperator on R.
DensityOperator register_state(const CqOperator& rho_ra);

}  // namespace dilutron
