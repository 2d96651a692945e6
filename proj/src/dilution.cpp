#include "dilutron/dilution.hpp"

#include <algorithm>
#include <cmath>

#include "dilutron/error.hpp"

namespace dilutron {

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kExact: return "exact";
    case BoundKind::kLowerBound: return "lower_bound";
    case BoundKind::kUpperBound: return "upper_bound";
  }
  return "unknown";
}

namespace {

DilutionReport base_report(const char* quantity, const DensityOperator& rho, const OptimizerConfig& config) {
  DilutionReport r;
  r.quantity = quantity;
  r.state_digest = digest(rho);
  r.dims = rho.dims();
  r.provenance.config = config;
  return r;
}

SpectralProfile pure_profile(const DensityOperator& rho) {
  SpectralProfile p;
  p.weights = {1.0};
  auto spectrum = pure_state_spectrum(rho);
  spectrum.resize(static_cast<std::size_t>(rho.dims().a), 0.0);
  p.spectra.push_back(std::move(spectrum));
  return p;
}

bool ppt_decides(Dims dims) {
  return (dims.a == 2 && dims.b == 2) || (dims.a == 2 && dims.b == 3) || (dims.a == 3 && dims.b == 2);
}

void check_epsilon(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorKind::kParameterOutOfRange, "eps must lie in [0, 1)");
}

void fill_cost(DilutionReport& report, const EnsemblePool& pool, const PoolChoice& choice) {
  report.value = choice.rank.log2_value();
  report.integer_value = choice.rank.rank;
  report.degenerate = choice.rank.degenerate;
  report.bound = (pool.exact || choice.rank.rank <= 1) ? BoundKind::kExact : BoundKind::kUpperBound;
  report.best = pool.entries[choice.index].origin;
  report.provenance.method = pool.exact ? "pure-schmidt" : "pool";
  report.provenance.ensemble_size = pool.ensemble_size;
  report.provenance.restarts_used = pool.restarts;
  report.provenance.iterations = pool.iterations;
  report.provenance.pool_size = static_cast<int>(pool.entries.size());
}

}  // namespace

std::vector<double> pure_state_spectrum(const DensityOperator& rho) {
  const auto eig = hermitian_eig(rho.matrix());
  ComplexVector psi = eig.eigenvectors.col(0);
  psi.normalize();
  auto schmidt = schmidt_decompose(psi, rho.dims());
  canonicalize_spectrum(schmidt.coefficients);
  return schmidt.coefficients;
}

double fidelity_fixed_ensemble(const SpectralProfile& profile, int m) {
  if (m < 1) throw Error(ErrorKind::kParameterOutOfRange, "M must be positive");
  double total = 0.0;
  for (std::size_t i = 0; i < profile.weights.size(); ++i) {
    const auto& s = profile.spectra[i];
    double head = 0.0;
    for (std::size_t j = 0; j < std::min(static_cast<std::size_t>(m), s.size()); ++j) head += s[j];
    total += profile.weights[i] * head;
  }
  return total;
}

std::vector<TruncatedMember> truncated_members(const PureStateEnsemble& ensemble, int m) {
  std::vector<TruncatedMember> out;
  const Dims dims = ensemble.dims;
  for (const auto& psi : ensemble.states) {
    ComplexMatrix coeff(dims.a, dims.b);
    for (int a = 0; a < dims.a; ++a)
      for (int b = 0; b < dims.b; ++b) coeff(a, b) = psi(a * dims.b + b);
    TruncatedMember t;
    t.reduced = coeff * coeff.adjoint();
    const auto eig = hermitian_eig(t.reduced);
    t.truncated = ComplexMatrix::Zero(dims.a, dims.a);
    for (int j = 0; j < std::min(m, dims.a); ++j)
      t.truncated += std::max(0.0, eig.eigenvalues(j)) * eig.eigenvectors.col(j) * eig.eigenvectors.col(j).adjoint();
    out.push_back(std::move(t));
  }
  return out;
}

EnsemblePool build_pool(const DensityOperator& rho, const OptimizerConfig& config) {
  config.check();
  EnsemblePool pool;
  if (state_rank(rho) == 1) {
    pool.exact = true;
    pool.ensemble_size = 1;
    pool.entries.push_back(PoolEntry{pure_profile(rho), BestEnsemble{ComplexMatrix::Identity(1, 1), {1.0}, 0, 0}});
    return pool;
  }
  const EnsembleSearch search(rho, config);
  pool.ensemble_size = search.ensemble_size();
  pool.restarts = config.restarts;

  const ComplexMatrix eigen_iso = search.initial_isometry(0);
  const auto eigen_ens = search.ensemble(eigen_iso);
  pool.entries.push_back(
      PoolEntry{SpectralProfile::from_ensemble(eigen_ens), BestEnsemble{eigen_iso, eigen_ens.weights, 0, 0}});

  for (int m = 1; m < rho.dims().min(); ++m) {
    const auto outcome = search.run(MemberObjective::ky_fan(m));
    pool.iterations += outcome.total_iterations();
    for (const auto& r : outcome.restarts) {
      const auto ens = search.ensemble(r.isometry);
      pool.entries.push_back(
          PoolEntry{SpectralProfile::from_ensemble(ens), BestEnsemble{r.isometry, ens.weights, r.restart, m}});
    }
  }
  return pool;
}

PoolChoice pool_cost(const EnsemblePool& pool, SmoothingBudget eps) {
  PoolChoice best{projector_rank(pool.entries.front().profile, eps), 0};
  for (std::size_t i = 1; i < pool.entries.size(); ++i) {
    const auto r = projector_rank(pool.entries[i].profile, eps);
    if (r.rank < best.rank.rank) best = PoolChoice{r, i};
  }
  return best;
}

PoolChoice pool_smoothed(const EnsemblePool& pool, SmoothingBudget eps) {
  PoolChoice best{smoothed_rank(pool.entries.front().profile, eps), 0};
  for (std::size_t i = 1; i < pool.entries.size(); ++i) {
    const auto r = smoothed_rank(pool.entries[i].profile, eps);
    if (r.rank < best.rank.rank) best = PoolChoice{r, i};
  }
  return best;
}

double pool_fidelity(const EnsemblePool& pool, int m) {
  double best = 0.0;
  for (const auto& e : pool.entries) best = std::max(best, fidelity_fixed_ensemble(e.profile, m));
  return std::min(best, 1.0);
}

DilutionReport dilution_fidelity(const DensityOperator& rho, int m, const OptimizerConfig& config) {
  config.check();
  if (m < 1) throw Error(ErrorKind::kParameterOutOfRange, "M must be positive");
  if (m > rho.dims().min()) throw Error(ErrorKind::kRankTooLarge, "M exceeds min(d_A, d_B)");
  DilutionReport report = base_report("dilution_fidelity", rho, config);
  report.m = m;
  if (m == rho.dims().min()) {
    report.value = 1.0;
    report.bound = BoundKind::kExact;
    report.provenance.method = "trivial";
    return report;
  }
  if (state_rank(rho) == 1) {
    const auto profile = pure_profile(rho);
    report.value = std::min(1.0, fidelity_fixed_ensemble(profile, m));
    report.bound = BoundKind::kExact;
    report.provenance.method = "pure-schmidt";
    report.provenance.ensemble_size = 1;
    return report;
  }
  const EnsembleSearch search(rho, config);
  const auto outcome = search.run(MemberObjective::ky_fan(m));
  const auto& best = outcome.best_outcome();
  report.value = std::min(1.0, best.value);
  report.bound = BoundKind::kLowerBound;
  report.best = BestEnsemble{best.isometry, search.ensemble(best.isometry).weights, best.restart, m};
  report.provenance.method = "search";
  report.provenance.ensemble_size = search.ensemble_size();
  report.provenance.restarts_used = config.restarts;
  report.provenance.iterations = outcome.total_iterations();
  return report;
}

DilutionReport one_shot_cost(const DensityOperator& rho, double eps, const OptimizerConfig& config) {
  check_epsilon(eps);
  return one_shot_cost(rho, eps, build_pool(rho, config), config);
}

DilutionReport one_shot_cost(const DensityOperator& rho, double eps, const EnsemblePool& pool,
                             const OptimizerConfig& config) {
  check_epsilon(eps);
  DilutionReport report = base_report("one_shot_cost", rho, config);
  report.epsilon = eps;
  fill_cost(report, pool, pool_cost(pool, SmoothingBudget::make(eps)));
  return report;
}

DilutionReport exact_cost(const DensityOperator& rho, const OptimizerConfig& config, ExactCostMethod method) {
  config.check();
  DilutionReport report = base_report("exact_cost", rho, config);
  report.epsilon = 0.0;
  if (state_rank(rho) == 1) {
    const int schmidt_rank = static_cast<int>(pure_state_spectrum(rho).size());
    report.integer_value = schmidt_rank;
    report.value = std::log2(static_cast<double>(schmidt_rank));
    report.provenance.method = "pure-schmidt";
    return report;
  }
  if (rho.dims().min() == 1) {
    report.integer_value = 1;
    report.value = 0.0;
    report.provenance.method = "trivial";
    return report;
  }
  if (method == ExactCostMethod::kAuto && ppt_decides(rho.dims())) {
    const bool separable = is_ppt(rho);
    report.integer_value = separable ? 1 : 2;
    report.value = separable ? 0.0 : 1.0;
    report.provenance.method = "ppt";
    return report;
  }
  const auto pool = build_pool(rho, config);
  fill_cost(report, pool, pool_cost(pool, SmoothingBudget::make(0.0)));
  report.provenance.method = "search";
  return report;
}

CostBounds cost_bounds(const DensityOperator& rho, double eps, const OptimizerConfig& config) {
  check_epsilon(eps);
  return cost_bounds(rho, eps, build_pool(rho, config), config);
}

CostBounds cost_bounds(const DensityOperator& rho, double eps, const EnsemblePool& pool,
                               const OptimizerConfig& config) {
  check_epsilon(eps);
  CostBounds out;
  out.exact = pool.exact;
  out.lower_rank = pool_smoothed(pool, SmoothingBudget::saturating(2.0 * std::sqrt(eps))).rank;
  out.upper_rank = pool_smoothed(pool, SmoothingBudget::make(eps / 2.0)).rank;
  out.cost_report = one_shot_cost(rho, eps, pool, config);
  out.cost_rank = SmoothedRank{*out.cost_report.integer_value, out.cost_report.degenerate};
  out.lower = out.lower_rank.log2_value();
  out.upper = out.upper_rank.log2_value();
  out.cost = out.cost_report.value;
  out.cost_report.lower = out.lower;
  out.cost_report.upper = out.upper;
  return out;
}

DilutionReport entanglement_of_formation(const DensityOperator& rho, const OptimizerConfig& config) {
  config.check();
  DilutionReport report = base_report("entanglement_of_formation", rho, config);
  if (state_rank(rho) == 1) {
    double s = 0.0;
    for (double x : pure_state_spectrum(rho))
      if (x > 0.0) s -= x * std::log2(x);
    report.value = s;
    report.provenance.method = "pure-schmidt";
    return report;
  }
  if (rho.dims().min() == 1) {
    report.value = 0.0;
    report.provenance.method = "trivial";
    return report;
  }
  const EnsembleSearch search(rho, config);
  const auto outcome = search.run(MemberObjective::negative_entropy());
  const auto& best = outcome.best_outcome();
  report.value = std::max(0.0, -best.value);
  report.bound = BoundKind::kUpperBound;
  report.best = BestEnsemble{best.isometry, search.ensemble(best.isometry).weights, best.restart, 0};
  report.provenance.method = "search";
  report.provenance.ensemble_size = search.ensemble_size();
  report.provenance.restarts_used = config.restarts;
  report.provenance.iterations = outcome.total_iterations();
  return report;
}

bool is_ppt(const DensityOperator& rho, double tol) {
  const RealVector ev = hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.dims()));
  return ev(ev.size() - 1) >= -tol;
}

}  // namespace dilutron
