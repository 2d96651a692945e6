#include "dilutron/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dilutron/error.hpp"

namespace dilutron {

namespace {

constexpr double kEffectTol = 1e-10;

// Sum of the m largest eigenvalues of Tr_B of an unnormalized member.
double member_head(const ComplexVector& w, Dims dims, int m) {
  ComplexMatrix coeff(dims.a, dims.b);
  for (int a = 0; a < dims.a; ++a)
    for (int b = 0; b < dims.b; ++b) coeff(a, b) = w(a * dims.b + b);
  const RealVector ev = hermitian_eigenvalues(coeff * coeff.adjoint());
  double head = 0.0;
  for (int j = 0; j < std::min(m, static_cast<int>(ev.size())); ++j) head += std::max(0.0, ev(j));
  return head;
}

std::vector<double> dirichlet(Rng& rng, int n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& v : x) total += (v = exp1(rng));
  for (auto& v : x) v /= total;
  return x;
}

double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

}  // namespace

double mc_fidelity_oracle(const DensityOperator& rho, int m, int samples, std::uint64_t seed, Execution exec) {
  if (m < 1) throw Error(ErrorKind::kParameterOutOfRange, "M must be positive");
  if (samples < 1) throw Error(ErrorKind::kParameterOutOfRange, "samples must be positive");
  if (m >= rho.dims().min()) return 1.0;
  const ComplexMatrix basis = weighted_eigenbasis(rho);
  const int r = static_cast<int>(basis.rows());
  const int n_max = std::max(r, std::min(r * r, 16));

  std::vector<double> values(static_cast<std::size_t>(samples));
  for_each_index(exec, values.size(), [&](std::size_t s) {
    ComplexMatrix v;
    if (s == 0) {
      v = ComplexMatrix::Identity(r, r);
    } else {
      const int n = r + static_cast<int>((s - 1) % static_cast<std::size_t>(n_max - r + 1));
      v = random_isometry(n, r, derive_seed(seed, s));
    }
    const ComplexMatrix members = v * basis;
    double total = 0.0;
    for (Eigen::Index i = 0; i < members.rows(); ++i)
      total += member_head(members.row(i).transpose(), rho.dims(), m);
    values[s] = total;
  });
  return std::min(1.0, *std::max_element(values.begin(), values.end()));
}

int smoothing_oracle(const SpectralProfile& profile, double eps, int samples, std::uint64_t seed) {
  std::size_t width = 0;
  for (const auto& s : profile.spectra) width = std::max(width, s.size());
  const int d = static_cast<int>(width);
  Rng rng = make_rng(seed);

  // Target blocks p_i U_i diag(lambda^i) U_i^dagger.
  std::vector<ComplexMatrix> blocks;
  std::vector<ComplexMatrix> bases;
  for (std::size_t i = 0; i < profile.spectra.size(); ++i) {
    ComplexMatrix u = random_unitary(rng, d);
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < profile.spectra[i].size(); ++j)
      diag(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = profile.weights[i] * profile.spectra[i][j];
    blocks.push_back(u * diag * u.adjoint());
    bases.push_back(std::move(u));
  }
  auto block_rank = [](const ComplexMatrix& b) {
    const RealVector ev = hermitian_eigenvalues(b);
    if (!(ev(0) > 0.0)) return 0;
    return support_rank(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
  };

  int best = 0;
  for (const auto& b : blocks) best = std::max(best, block_rank(b));

  std::uniform_int_distribution<int> pick_rank(1, d);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    const int m = pick_rank(rng);
    // Sample s % 4 == 0 is the plain top-m truncation; the rest add a random
    // rank-<=m perturbation A A^dagger around it.
    const double scale = s % 4 == 0 ? 0.0 : 0.2 * unit(rng);
    double distance = 0.0;
    int max_rank = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      ComplexMatrix a = ComplexMatrix::Zero(d, m);
      for (int j = 0; j < m && j < static_cast<int>(profile.spectra[i].size()); ++j)
        a.col(j) = std::sqrt(profile.weights[i] * profile.spectra[i][static_cast<std::size_t>(j)]) * bases[i].col(j);
      if (scale > 0.0) a += scale * std::sqrt(profile.weights[i]) * complex_gaussian(rng, d, m);
      const ComplexMatrix omega = a * a.adjoint();
      distance += trace_norm(omega - blocks[i]);
      max_rank = std::max(max_rank, block_rank(omega));
    }
    if (distance <= eps) best = std::min(best, max_rank);
  }
  return best;
}

GentleResult gentle_measurement_check(const ComplexMatrix& rho, const ComplexMatrix& p) {
  if (rho.rows() != p.rows() || rho.cols() != p.cols() || p.rows() != p.cols())
    throw Error(ErrorKind::kDimensionMismatch, "rho and P differ in dimension");
  if (max_abs_deviation_from_hermitian(p) > kEffectTol) throw Error(ErrorKind::kParameterOutOfRange, "P is not Hermitian");
  const auto eig = hermitian_eig(p);
  const auto n = eig.eigenvalues.size();
  if (eig.eigenvalues(n - 1) < -kEffectTol || eig.eigenvalues(0) > 1.0 + kEffectTol)
    throw Error(ErrorKind::kParameterOutOfRange, "P must satisfy 0 <= P <= 1");
  RealVector root(n);
  for (Eigen::Index k = 0; k < n; ++k) root(k) = std::sqrt(std::clamp(eig.eigenvalues(k), 0.0, 1.0));
  const ComplexMatrix sqrt_p = eig.eigenvectors * root.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();

  GentleResult out;
  out.delta = 1.0 - (rho * p).trace().real();
  out.lhs = trace_norm(rho - sqrt_p * rho * sqrt_p);
  return out;
}

ComplexMatrix random_effect(Rng& rng, int dim) {
  const ComplexMatrix v = random_unitary(rng, dim);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector u(dim);
  for (int k = 0; k < dim; ++k) u(k) = unit(rng);
  return v * u.cast<Complex>().asDiagonal() * v.adjoint();
}

SpectralProfile random_profile(Rng& rng, int members, int width) {
  SpectralProfile profile;
  profile.weights = dirichlet(rng, members);
  std::uniform_int_distribution<int> pick_support(1, width);
  std::uniform_int_distribution<int> pick_kind(0, 3);
  for (int i = 0; i < members; ++i) {
    const int k = pick_support(rng);
    std::vector<double> s;
    if (pick_kind(rng) == 0) {
      s.assign(static_cast<std::size_t>(k), 1.0 / k);  // flat spectra hit the grid boundaries exactly
    } else {
      s = dirichlet(rng, k);
      std::sort(s.begin(), s.end(), std::greater<>());
    }
    s.resize(static_cast<std::size_t>(width), 0.0);
    profile.spectra.push_back(std::move(s));
  }
  return profile;
}

double concurrence(const DensityOperator& rho) {
  if (!(rho.dims() == Dims{2, 2})) throw Error(ErrorKind::kDimensionMismatch, "concurrence needs a 2x2 state");
  ComplexMatrix y(2, 2);
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  const ComplexMatrix yy = kron(y, y);
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  // sqrt(rho~) = (Y x Y) conj(sqrt(rho)) (Y x Y).
  const ComplexMatrix root_tilde = yy * root.conjugate() * yy;
  const RealVector s = singular_values(root * root_tilde);
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double two_qubit_eof_oracle(const DensityOperator& rho) {
  const double c = std::min(1.0, concurrence(rho));
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

std::vector<AuditRow> sandwich_audit(const DensityOperator& rho, const std::vector<double>& eps_grid,
                                     const OptimizerConfig& config, double tol) {
  const auto pool = build_pool(rho, config);
  const std::string id = digest(rho);
  std::vector<AuditRow> rows;
  for (double eps : eps_grid) {
    const auto b = cost_bounds(rho, eps, pool, config);
    AuditRow row{id, eps, b.lower, b.cost, b.upper, false};
    row.violation = b.lower > b.cost + tol || b.cost > b.upper + tol;
    rows.push_back(row);
  }
  return rows;
}

std::vector<GentleRow> gentle_suite(std::uint64_t seed, int draws, Execution exec) {
  std::vector<GentleRow> rows(static_cast<std::size_t>(std::max(draws, 0)));
  for_each_index(exec, rows.size(), [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    const int d = 2 + static_cast<int>(i % 3);
    std::uniform_int_distribution<int> pick_rank(1, d);
    std::uniform_real_distribution<double> pick_trace(0.5, 1.0);
    const ComplexMatrix g = complex_gaussian(rng, d, pick_rank(rng));
    ComplexMatrix rho = g * g.adjoint();
    const double t = i % 2 == 0 ? 1.0 : pick_trace(rng);
    rho *= t / rho.trace().real();
    const ComplexMatrix p = random_effect(rng, d);
    const auto r = gentle_measurement_check(rho, p);
    GentleRow row;
    row.draw = static_cast<int>(i);
    row.dim = d;
    row.trace = t;
    row.delta = r.delta;
    row.lhs = r.lhs;
    row.bound = 2.0 * std::sqrt(std::max(0.0, r.delta));
    row.violation = !(r.lhs <= row.bound + kGentleSlack);
    rows[i] = row;
  });
  return rows;
}

std::vector<SmoothingRow> smoothing_suite(std::uint64_t seed, int draws, int samples, Execution exec) {
  const std::size_t per_draw = kSmoothingEpsGrid.size();
  std::vector<SmoothingRow> rows(static_cast<std::size_t>(std::max(draws, 0)) * per_draw);
  for_each_index(exec, static_cast<std::size_t>(std::max(draws, 0)), [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    std::uniform_int_distribution<int> pick_members(1, 4);
    std::uniform_int_distribution<int> pick_width(2, 4);
    const int members = pick_members(rng);
    const auto profile = random_profile(rng, members, pick_width(rng));
    for (std::size_t k = 0; k < per_draw; ++k) {
      const double eps = kSmoothingEpsGrid[k];
      const auto budget = SmoothingBudget::make(eps);
      SmoothingRow row;
      row.draw = static_cast<int>(i);
      row.epsilon = eps;
      row.greedy = smoothed_rank(profile, budget).rank;
      row.projector = projector_rank(profile, budget).rank;
      row.oracle = smoothing_oracle(profile, eps, samples, derive_seed(seed, i * per_draw + k + 0x9e37));
      row.violation = row.greedy != row.projector || row.oracle < row.greedy;
      rows[i * per_draw + k] = row;
    }
  });
  return rows;
}

std::vector<OrderingRow> ordering_suite(std::uint64_t seed, int draws, Execution exec) {
  std::vector<OrderingRow> rows(static_cast<std::size_t>(std::max(draws, 0)));
  for_each_index(exec, rows.size(), [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    const int d = 2 + static_cast<int>(i % 3);
    std::uniform_int_distribution<int> pick_rank(1, d);
    const auto rho = random_density(Dims{d, 1}, pick_rank(rng), rng());
    const auto sigma = random_density(Dims{d, 1}, d, rng());

    // c-q state from a random decomposition of a random 2 x d state.
    const Dims dims{2, d};
    const auto joint = random_density(dims, std::uniform_int_distribution<int>(1, 2 * d)(rng), rng());
    const int r = state_rank(joint);
    const auto ens = ensemble_from_isometry(joint, random_isometry(std::min(r * r, 16), r, rng()));
    const auto cq = cq_extension(ens);

    OrderingRow row;
    row.draw = static_cast<int>(i);
    row.relative = relative_entropy(rho.matrix(), sigma.matrix()).value();
    row.s0 = s0_relative(rho.matrix(), sigma.matrix()).value();
    row.h0_cq = h0_cq(cq);
    row.h_cq = cq_conditional_entropy(cq);
    row.violation = row.relative < row.s0 - kOrderingTol || row.h0_cq < row.h_cq - kOrderingTol;
    rows[i] = row;
  });
  return rows;
}

std::vector<AuditRow> sandwich_suite(std::uint64_t seed, int draws, const std::vector<double>& eps_grid,
                                     const OptimizerConfig& config) {
  std::vector<AuditRow> rows;
  for (int i = 0; i < draws; ++i) {
    const auto s = derive_seed(seed, static_cast<std::uint64_t>(i));
    const auto rho = i % 2 == 0 ? random_density(Dims{2, 2}, 2 + (i / 2) % 3, s)
                                : pure_density(random_pure_state(Dims{2, 2}, s));
    const auto part = sandwich_audit(rho, eps_grid, config);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace dilutron
