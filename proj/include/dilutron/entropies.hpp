#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dilutron/linalg.hpp"
#include "dilutron/states.hpp"

namespace dilutron {

/// Slack applied when comparing accumulated probability mass against 1 - eps
/// or eps. Same scale as kWeightTol.
inline constexpr double kMassSlack = 1e-12;

/// Real number or +/- infinity, kept as an explicit tag rather than IEEE inf.
class ExtendedReal {
 public:
  enum class Kind { kMinusInfinity, kFinite, kPlusInfinity };

  static ExtendedReal finite(double v) { return ExtendedReal(Kind::kFinite, v); }
  static ExtendedReal plus_infinity() { return ExtendedReal(Kind::kPlusInfinity, 0.0); }
  static ExtendedReal minus_infinity() { return ExtendedReal(Kind::kMinusInfinity, 0.0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  double value() const;
  ExtendedReal operator-() const;
  std::string to_string() const;

  friend std::weak_ordering operator<=>(const ExtendedReal& x, const ExtendedReal& y);
  friend bool operator==(const ExtendedReal& x, const ExtendedReal& y) { return (x <=> y) == 0; }

 private:
  ExtendedReal(Kind k, double v) : kind_(k), value_(v) {}

  Kind kind_;
  double value_;
};

/// Non-increasing reduced-state spectra of the members of an ensemble.
/// Eigenvalues outside the support (support_rank policy) are stored as exact
/// zeros.
struct SpectralProfile {
  std::vector<double> weights;
  std::vector<std::vector<double>> spectra;

  static SpectralProfile from_ensemble(const PureStateEnsemble& ensemble, double rank_tol = kRankTol);
  /// Throws unless weights and each spectrum sum to 1 (1e-10) and every
  /// spectrum is non-increasing and non-negative.
  void check() const;
  int max_support() const;
};

/// Normalizes a member spectrum in place: thresholds by support_rank, clamps
/// negatives and rescales so the list sums to 1. Input must be non-increasing.
void canonicalize_spectrum(std::vector<double>& spectrum, double rank_tol = kRankTol);

struct SmoothingBudget {
  double epsilon = 0.0;

  /// Throws ParameterOutOfRange unless 0 <= eps <= 1.
  static SmoothingBudget make(double eps);
  /// Clamps into [0, 1]; used for derived budgets such as 2 sqrt(eps).
  static SmoothingBudget saturating(double eps);
};

/// Integer m behind a smoothed zero-entropy value. degenerate marks eps >= 1,
/// where the empty operator is admissible and the value is reported as 0.
struct SmoothedRank {
  int rank = 0;
  bool degenerate = false;

  double log2_value() const;
  friend bool operator==(const SmoothedRank&, const SmoothedRank&) = default;
};

ExtendedReal s0_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma, double rank_tol = kRankTol);
ExtendedReal h0_conditional_given(const DensityOperator& rho_ab, const DensityOperator& sigma_b,
                                  double rank_tol = kRankTol);
/// log2 lambda_max(Tr_other[Pi_rho]) conditioned on the given side.
double h0_conditional(const ComplexMatrix& rho, Dims dims, Subsystem conditioning = Subsystem::kB,
                      double rank_tol = kRankTol);
double h0_conditional(const DensityOperator& rho_ab, double rank_tol = kRankTol);

/// max_i log2 rank(omega_i).
double h0_cq(const CqOperator& rho_ra, double rank_tol = kRankTol);

/// Smallest m with sum_i p_i sum_{j>m} lambda_j <= eps (truncation route).
SmoothedRank smoothed_rank(const SpectralProfile& profile, SmoothingBudget eps);
double h0_smoothed_cq(const SpectralProfile& profile, SmoothingBudget eps);

/// Smallest m with sum_i p_i sum_{j<=m} lambda_j >= 1 - eps (projector route).
SmoothedRank projector_rank(const SpectralProfile& profile, SmoothingBudget eps);
double e_epsilon(const SpectralProfile& profile, SmoothingBudget eps);

double von_neumann(const ComplexMatrix& rho, double rank_tol = kRankTol);
ExtendedReal relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma, double rank_tol = kRankTol);
/// S(XY) - S(conditioning marginal).
double conditional_entropy(const ComplexMatrix& rho, Dims dims, Subsystem conditioning);
/// H(rho_RA | R) = S(rho_RA) - S(rho_R).
double cq_conditional_entropy(const CqOperator& rho_ra);

}  // namespace dilutron
