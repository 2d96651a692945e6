#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dilutron/ensemble_search.hpp"
#include "dilutron/entropies.hpp"
#include "dilutron/states.hpp"

namespace dilutron {

/// How a reported value relates to the true quantity. Searched values over a
/// finite family of decompositions are bounds; pure-state and PPT paths are
/// exact.
enum class BoundKind { kExact, kLowerBound, kUpperBound };
const char* to_string(BoundKind kind);

struct BestEnsemble {
  ComplexMatrix isometry;  // empty for ensembles not produced from an isometry
  std::vector<double> weights;
  int restart = -1;
  int searched_m = 0;  // Ky Fan order the search optimized (0: eigen-ensemble / seed)
};

struct Provenance {
  OptimizerConfig config;
  std::string method;  // "pure-schmidt", "ppt", "trivial", "search", "pool"
  int ensemble_size = 0;
  int restarts_used = 0;
  long iterations = 0;
  int pool_size = 0;
};

struct DilutionReport {
  std::string quantity;
  std::string state_digest;
  Dims dims;
  std::optional<int> m;
  std::optional<double> epsilon;
  std::optional<int> copies;  // n for multi-copy costs; value is then per copy
  double value = 0.0;
  std::optional<int> integer_value;  // M* behind log2-valued costs
  bool degenerate = false;
  BoundKind bound = BoundKind::kExact;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<BestEnsemble> best;
  Provenance provenance;
};

/// sum_i p_i (sum of the M largest lambda^(i)).
double fidelity_fixed_ensemble(const SpectralProfile& profile, int m);

/// For each member: rho_A^i and its top-M spectral truncation.
struct TruncatedMember {
  ComplexMatrix reduced;
  ComplexMatrix truncated;
};
std::vector<TruncatedMember> truncated_members(const PureStateEnsemble& ensemble, int m);

/// Decompositions gathered by the searches: the eigen-ensemble, then every
/// restart's final ensemble for each Ky Fan order 1..min(d_A, d_B) - 1.
struct PoolEntry {
  SpectralProfile profile;
  BestEnsemble origin;
};

struct EnsemblePool {
  bool exact = false;  // pure input: a single, unique decomposition
  std::vector<PoolEntry> entries;
  int ensemble_size = 0;
  int restarts = 0;
  long iterations = 0;
};

EnsemblePool build_pool(const DensityOperator& rho, const OptimizerConfig& config);

struct PoolChoice {
  SmoothedRank rank;
  std::size_t index = 0;
};
/// min over the pool of the projector-route integer (E^eps).
PoolChoice pool_cost(const EnsemblePool& pool, SmoothingBudget eps);
/// min over the pool of the truncation-route integer (H_0^eps).
PoolChoice pool_smoothed(const EnsemblePool& pool, SmoothingBudget eps);
/// max over the pool of fidelity_fixed_ensemble(., M); non-decreasing in M.
double pool_fidelity(const EnsemblePool& pool, int m);

DilutionReport dilution_fidelity(const DensityOperator& rho, int m, const OptimizerConfig& config);
DilutionReport one_shot_cost(const DensityOperator& rho, double eps, const OptimizerConfig& config);
/// one_shot_cost evaluated on an existing pool (shared with cost_bounds).
DilutionReport one_shot_cost(const DensityOperator& rho, double eps, const EnsemblePool& pool,
                             const OptimizerConfig& config);

enum class ExactCostMethod { kAuto, kSearch };
DilutionReport exact_cost(const DensityOperator& rho, const OptimizerConfig& config,
                          ExactCostMethod method = ExactCostMethod::kAuto);

struct CostBounds {
  double lower = 0.0;
  double cost = 0.0;
  double upper = 0.0;
  SmoothedRank lower_rank;
  SmoothedRank cost_rank;
  SmoothedRank upper_rank;
  bool exact = false;
  DilutionReport cost_report;
};
CostBounds cost_bounds(const DensityOperator& rho, double eps, const OptimizerConfig& config);
CostBounds cost_bounds(const DensityOperator& rho, double eps, const EnsemblePool& pool,
                               const OptimizerConfig& config);

DilutionReport entanglement_of_formation(const DensityOperator& rho, const OptimizerConfig& config);

/// Minimum eigenvalue of the partial transpose >= -tol.
bool is_ppt(const DensityOperator& rho, double tol = 1e-12);

/// Schmidt coefficients of a rank-1 state.
std::vector<double> pure_state_spectrum(const DensityOperator& rho);

}  // namespace dilutron
