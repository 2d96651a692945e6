#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilutron/dilution.hpp"
#include "dilutron/entropies.hpp"
#include "dilutron/execution.hpp"
#include "dilutron/random.hpp"
#include "dilutron/states.hpp"

// Brute-force checks for the fast paths. Apart from sandwich_audit (which
// audits the dilution module) nothing here calls into the optimizer.
namespace dilutron {

/// Max of the fixed-ensemble fidelity over `samples` isometries. Sample 0 is
/// the eigen-ensemble; sample s > 0 draws an N x r isometry from
/// (seed, s) with N cycling over r .. min(r^2, 16).
double mc_fidelity_oracle(const DensityOperator& rho, int m, int samples, std::uint64_t seed,
                          Execution exec = Execution::kParallel);

/// Smallest max-block-rank seen over random feasible omega in the c-q
/// eps-ball of the profile's c-q operator (blocks p_i U_i diag(lambda^i) U_i^dagger).
/// omega = rho_RA itself is always included.
int smoothing_oracle(const SpectralProfile& profile, double eps, int samples, std::uint64_t seed);

struct GentleResult {
  double delta = 0.0;  // 1 - Tr[rho P]
  double lhs = 0.0;    // ||rho - sqrt(P) rho sqrt(P)||_1
};
/// rho may be subnormalized. Throws ParameterOutOfRange unless 0 <= P <= 1
/// within 1e-10.
GentleResult gentle_measurement_check(const ComplexMatrix& rho, const ComplexMatrix& p);

/// V diag(u) V^dagger with u uniform in [0, 1] and V Haar.
ComplexMatrix random_effect(Rng& rng, int dim);

/// Random profile: `members` weights from a flat Dirichlet, each spectrum of
/// length `width` drawn the same way with a random support size, sorted.
SpectralProfile random_profile(Rng& rng, int members, int width);

/// Closed-form two-qubit entanglement of formation from the concurrence.
double concurrence(const DensityOperator& rho);
double two_qubit_eof_oracle(const DensityOperator& rho);

struct AuditRow {
  std::string state_digest;
  double epsilon = 0.0;
  double lower = 0.0;
  double cost = 0.0;
  double upper = 0.0;
  bool violation = false;
};
inline constexpr double kSearchNoiseTol = 1e-6;

/// lower <= cost <= upper per eps, all evaluated on one ensemble pool.
std::vector<AuditRow> sandwich_audit(const DensityOperator& rho, const std::vector<double>& eps_grid,
                                     const OptimizerConfig& config, double tol = kSearchNoiseTol);

// Seeded verification suites backing `dilutron verify`. Row i depends only on
// (seed, i).

struct GentleRow {
  int draw = 0;
  int dim = 0;
  double trace = 0.0;
  double delta = 0.0;
  double lhs = 0.0;
  double bound = 0.0;  // 2 sqrt(delta)
  bool violation = false;
};
inline constexpr double kGentleSlack = 1e-9;
std::vector<GentleRow> gentle_suite(std::uint64_t seed, int draws, Execution exec = Execution::kParallel);

struct SmoothingRow {
  int draw = 0;
  double epsilon = 0.0;
  int greedy = 0;     // truncation route
  int projector = 0;  // projector route
  int oracle = 0;
  bool violation = false;
};
inline const std::vector<double> kSmoothingEpsGrid{0.0, 0.01, 0.1, 0.25, 0.5};
std::vector<SmoothingRow> smoothing_suite(std::uint64_t seed, int draws, int samples,
                                          Execution exec = Execution::kParallel);

struct OrderingRow {
  int draw = 0;
  double relative = 0.0;  // S(rho||sigma)
  double s0 = 0.0;        // S_0(rho||sigma)
  double h0_cq = 0.0;
  double h_cq = 0.0;  // S(rho_RA) - S(rho_R)
  bool violation = false;
};
inline constexpr double kOrderingTol = 1e-9;
std::vector<OrderingRow> ordering_suite(std::uint64_t seed, int draws, Execution exec = Execution::kParallel);

/// Random two-qubit states (mixed and pure alternating) audited on eps_grid.
std::vector<AuditRow> sandwich_suite(std::uint64_t seed, int draws, const std::vector<double>& eps_grid,
                                     const OptimizerConfig& config);

}  // namespace dilutron
