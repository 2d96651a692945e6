#include "dilutron/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dilutron/error.hpp"

namespace dilutron {

namespace {

void check_copies(int n, int single_dim) {
  if (n < 1) throw Error(ErrorKind::kParameterOutOfRange, "n must be positive");
  if (std::pow(static_cast<double>(single_dim), n) > kMaxCopyDimension)
    throw Error(ErrorKind::kDimensionTooLarge,
                fmt::format("{} copies of a {}-dimensional operator exceed dimension {}", n, single_dim, kMaxCopyDimension));
}

// Spectral profile of the product decomposition {p_i q_k, phi_i (x) chi_k}.
// The reduced state of a product member is the tensor product of the reduced
// states, so its spectrum is the sorted set of pairwise products.
SpectralProfile product_profile(const SpectralProfile& x, const SpectralProfile& y) {
  SpectralProfile out;
  for (std::size_t i = 0; i < x.weights.size(); ++i)
    for (std::size_t k = 0; k < y.weights.size(); ++k) {
      out.weights.push_back(x.weights[i] * y.weights[k]);
      std::vector<double> s;
      s.reserve(x.spectra[i].size() * y.spectra[k].size());
      for (double a : x.spectra[i])
        for (double b : y.spectra[k]) s.push_back(a * b);
      std::sort(s.begin(), s.end(), std::greater<>());
      out.spectra.push_back(std::move(s));
    }
  return out;
}

bool is_diagonal(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != Complex(0.0)) return false;
  return true;
}

void check_statistic_inputs(const CqOperator& rho_ra, const DensityOperator& sigma_r, int n, bool dense) {
  rho_ra.check();
  if (sigma_r.dim() != rho_ra.register_dim())
    throw Error(ErrorKind::kDimensionMismatch, "sigma_R dimension differs from the register dimension");
  const int single = rho_ra.register_dim() * rho_ra.block_dim();
  if (dense) {
    check_copies(n, single);
  } else {
    if (n < 1) throw Error(ErrorKind::kParameterOutOfRange, "n must be positive");
    if (std::pow(static_cast<double>(single), n) > kMaxSpectralTerms)
      throw Error(ErrorKind::kDimensionTooLarge,
                  fmt::format("{} copies of a {}-dimensional operator exceed {} spectral terms", n, single,
                              kMaxSpectralTerms));
  }
}

ComplexMatrix kron_power(const ComplexMatrix& m, int n) {
  ComplexMatrix out = m;
  for (int k = 1; k < n; ++k) out = kron(out, m);
  return out;
}

}  // namespace

DilutionReport n_copy_cost(const DensityOperator& rho, int n, double eps, const OptimizerConfig& config) {
  if (n != 1 && n != 2) throw Error(ErrorKind::kParameterOutOfRange, "n must be 1 or 2");
  check_copies(n, rho.dim());
  if (n == 1) {
    DilutionReport report = one_shot_cost(rho, eps, config);
    report.quantity = "n_copy_cost";
    report.copies = 1;
    return report;
  }
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorKind::kParameterOutOfRange, "eps must lie in [0, 1)");
  const DensityOperator rho2 = tensor_power(rho, 2);
  EnsemblePool pool = build_pool(rho2, config);
  if (!pool.exact) {
    const EnsemblePool single = build_pool(rho, config);
    for (std::size_t i = 0; i < single.entries.size(); ++i)
      for (std::size_t k = i; k < single.entries.size(); ++k) {
        PoolEntry entry;
        entry.profile = product_profile(single.entries[i].profile, single.entries[k].profile);
        entry.origin.weights = entry.profile.weights;
        pool.entries.push_back(std::move(entry));
      }
    pool.iterations += single.iterations;
  }
  DilutionReport report = one_shot_cost(rho2, eps, pool, config);
  report.quantity = "n_copy_cost";
  report.state_digest = digest(rho);
  report.dims = rho.dims();
  report.copies = 2;
  report.value /= 2.0;
  return report;
}

double inf_divergence_statistic(const CqOperator& rho_ra, const DensityOperator& sigma_r, int n, double gamma) {
  if (!is_diagonal(sigma_r.matrix())) return inf_divergence_statistic_dense(rho_ra, sigma_r, n, gamma);
  check_statistic_inputs(rho_ra, sigma_r, n, false);

  // sigma_R diagonal: Delta is block diagonal over register strings, with
  // blocks (x)_t p_{i_t} rho^{i_t} - 2^{n gamma} prod_t s_{i_t} 1.
  std::vector<double> a{1.0};
  std::vector<double> b{1.0};
  std::vector<std::vector<double>> block_eigs;
  for (const auto& block : rho_ra.blocks) {
    const RealVector ev = hermitian_eigenvalues(block);
    block_eigs.emplace_back(ev.data(), ev.data() + ev.size());
  }
  for (int t = 0; t < n; ++t) {
    std::vector<double> next_a;
    std::vector<double> next_b;
    for (std::size_t k = 0; k < a.size(); ++k)
      for (int i = 0; i < rho_ra.register_dim(); ++i) {
        const double s = sigma_r.matrix()(i, i).real();
        for (double lambda : block_eigs[static_cast<std::size_t>(i)]) {
          next_a.push_back(a[k] * std::max(0.0, lambda));
          next_b.push_back(b[k] * s);
        }
      }
    a = std::move(next_a);
    b = std::move(next_b);
  }
  const double c = std::exp2(n * gamma);
  double value = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) value += std::max(0.0, a[k] - c * b[k]);
  return std::min(value, std::pow(rho_ra.trace(), n));
}

double inf_divergence_statistic_dense(const CqOperator& rho_ra, const DensityOperator& sigma_r, int n, double gamma) {
  check_statistic_inputs(rho_ra, sigma_r, n, true);
  const ComplexMatrix id_a = ComplexMatrix::Identity(rho_ra.block_dim(), rho_ra.block_dim());
  const ComplexMatrix rho_n = kron_power(rho_ra.assemble(), n);
  const ComplexMatrix sigma_n = kron_power(kron(sigma_r.matrix(), id_a), n);
  const RealVector ev = hermitian_eigenvalues(rho_n - std::exp2(n * gamma) * sigma_n);
  double value = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) value += std::max(0.0, ev(k));
  return std::min(value, std::pow(rho_ra.trace(), n));
}

std::vector<DivergenceScan> divergence_scan(const CqOperator& rho_ra, const DensityOperator& sigma_r,
                                            const std::vector<int>& n_list, const std::vector<double>& gamma_grid,
                                            Execution exec) {
  std::vector<DivergenceScan> scans;
  for (int n : n_list) {
    check_statistic_inputs(rho_ra, sigma_r, n, !is_diagonal(sigma_r.matrix()));
    DivergenceScan scan;
    scan.n = n;
    scan.gamma_grid = gamma_grid;
    scan.values.resize(gamma_grid.size());
    scans.push_back(std::move(scan));
  }
  const std::size_t points = gamma_grid.size();
  for_each_index(exec, scans.size() * points, [&](std::size_t j) {
    auto& scan = scans[j / points];
    scan.values[j % points] = inf_divergence_statistic(rho_ra, sigma_r, scan.n, gamma_grid[j % points]);
  });
  return scans;
}

std::vector<double> default_gamma_grid(double center, int points) {
  if (points < 2) throw Error(ErrorKind::kParameterOutOfRange, "gamma grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = center - 2.0 + 4.0 * k / (points - 1);
  return grid;
}

double transition_midpoint(const CqOperator& rho_ra, const DensityOperator& sigma_r, int n, double lo, double hi,
                           double tol) {
  if (!(lo < hi)) throw Error(ErrorKind::kParameterOutOfRange, "transition bracket needs lo < hi");
  const double target = 0.5 * std::pow(rho_ra.trace(), n);
  auto f = [&](double g) { return inf_divergence_statistic(rho_ra, sigma_r, n, g); };
  if (!(f(lo) > target) || !(f(hi) < target))
    throw Error(ErrorKind::kParameterOutOfRange, "transition bracket does not straddle the midpoint");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double relative_entropy_rate_reference(const CqOperator& rho_ra) {
  const ComplexMatrix id_a = ComplexMatrix::Identity(rho_ra.block_dim(), rho_ra.block_dim());
  return relative_entropy(rho_ra.assemble(), kron(rho_ra.register_marginal(), id_a)).value();
}

DensityOperator register_state(const CqOperator& rho_ra) {
  const double t = rho_ra.trace();
  if (!(t > 0.0)) throw Error(ErrorKind::kParameterOutOfRange, "zero c-q operator");
  return DensityOperator::validate(rho_ra.register_marginal() / t, Dims{rho_ra.register_dim(), 1});
}

}  // namespace dilutron
