#pragma once

#include <cstdint>
#include <vector>

#include "dilutron/execution.hpp"
#include "dilutron/linalg.hpp"
#include "dilutron/states.hpp"

namespace dilutron {

inline constexpr int kMaxEnsembleSize = 16;

struct OptimizerConfig {
  int ensemble_size = 0;  // 0 selects clamp(r^2, r, kMaxEnsembleSize)
  int restarts = 32;
  int max_iterations = 4000;  // full passes over the rotation generators
  double initial_step = 0.5;  // radians
  double convergence_tol = 1e-9;  // search stops once the step falls below this
  std::uint64_t seed = 0;
  Execution execution = Execution::kParallel;

  /// Throws ParameterOutOfRange on non-positive fields.
  void check() const;
};

/// Per-member score summed over the ensemble. Scores are evaluated on the
/// unnormalized member vector w_i = sqrt(p_i) phi_i, whose reduced operator
/// has eigenvalues p_i lambda_j.
struct MemberObjective {
  enum class Kind {
    kKyFan,            // sum of the `m` largest eigenvalues: sum_i p_i sum_{j<=m} lambda_j
    kNegativeEntropy,  // -p_i S(rho_A^i)
  };
  Kind kind = Kind::kKyFan;
  int m = 1;

  static MemberObjective ky_fan(int m) { return {Kind::kKyFan, m}; }
  static MemberObjective negative_entropy() { return {Kind::kNegativeEntropy, 0}; }
};

/// Score of one unnormalized member (length dims.total(), A-major).
double member_score(const Complex* member, Dims dims, MemberObjective objective);

struct RestartOutcome {
  int restart = 0;
  double value = 0.0;
  ComplexMatrix isometry;
  long iterations = 0;
  long accepted_moves = 0;
};

struct SearchOutcome {
  std::vector<RestartOutcome> restarts;  // ordered by restart index
  int best = 0;                          // max value, ties to the lowest index

  const RestartOutcome& best_outcome() const { return restarts[static_cast<std::size_t>(best)]; }
  long total_iterations() const;
};

/// Multi-start maximization of sum_i score(w_i) over ensembles
/// w = V * (weighted eigenbasis of rho), V an N x r isometry. Moves are
/// rotations exp(t K) with K an elementary anti-Hermitian generator on two
/// rows of V (real and imaginary types), run as a compass search with step
/// halving. Restart 0 starts from the eigen-ensemble, restart k > 0 from a
/// seeded random isometry.
class EnsembleSearch {
 public:
  EnsembleSearch(const DensityOperator& rho, const OptimizerConfig& config);

  int rank() const { return static_cast<int>(basis_.rows()); }
  int ensemble_size() const { return ensemble_size_; }
  Dims dims() const { return dims_; }
  const OptimizerConfig& config() const { return config_; }

  SearchOutcome run(MemberObjective objective) const;
  SearchOutcome run(MemberObjective objective, Execution exec) const;
  RestartOutcome run_single(MemberObjective objective, int restart) const;

  ComplexMatrix initial_isometry(int restart) const;
  double evaluate(const ComplexMatrix& isometry, MemberObjective objective) const;
  PureStateEnsemble ensemble(const ComplexMatrix& isometry) const;

 private:
  ComplexMatrix basis_;
  Dims dims_;
  int ensemble_size_;
  OptimizerConfig config_;
};

/// Resolves the configured ensemble size against rank r.
int resolve_ensemble_size(const OptimizerConfig& config, int rank);

}  // namespace dilutron
