#include "dilutron/ensemble_search.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>

#include <fmt/format.h>

#include "dilutron/error.hpp"
#include "dilutron/random.hpp"

namespace dilutron {

namespace {

constexpr int kMaxReducedDim = 8;
// Sufficient-increase constants: a move must gain kForcing * step^2, and a
// pass gaining less than kPassProgress * step halves the step.
constexpr double kForcing = 1e-2;
constexpr double kPassProgress = 1e-3;

}  // namespace

void OptimizerConfig::check() const {
  if (ensemble_size < 0) throw Error(ErrorKind::kParameterOutOfRange, "ensemble_size must be non-negative");
  if (restarts < 1) throw Error(ErrorKind::kParameterOutOfRange, "restarts must be positive");
  if (max_iterations < 1) throw Error(ErrorKind::kParameterOutOfRange, "max_iterations must be positive");
  if (!(initial_step > 0.0)) throw Error(ErrorKind::kParameterOutOfRange, "initial_step must be positive");
  if (!(convergence_tol > 0.0)) throw Error(ErrorKind::kParameterOutOfRange, "convergence_tol must be positive");
}

int resolve_ensemble_size(const OptimizerConfig& config, int rank) {
  const int cap = std::max(kMaxEnsembleSize, rank);
  if (config.ensemble_size == 0) return std::clamp(rank * rank, rank, cap);
  if (config.ensemble_size < rank || config.ensemble_size > cap)
    throw Error(ErrorKind::kParameterOutOfRange,
                fmt::format("ensemble_size {} outside [{}, {}]", config.ensemble_size, rank, cap));
  return config.ensemble_size;
}

double member_score(const Complex* w, Dims dims, MemberObjective objective) {
  const int da = dims.a;
  const int db = dims.b;
  const int s = std::min(da, db);
  if (s > kMaxReducedDim) throw Error(ErrorKind::kDimensionTooLarge, "reduced dimension exceeds 8");

  std::array<Complex, kMaxReducedDim * kMaxReducedDim> red{};
  std::array<double, kMaxReducedDim> ev{};
  if (da <= db) {
    for (int i = 0; i < da; ++i)
      for (int j = i; j < da; ++j) {
        Complex acc = 0.0;
        for (int b = 0; b < db; ++b) acc += w[i * db + b] * std::conj(w[j * db + b]);
        red[static_cast<std::size_t>(i * s + j)] = acc;
        red[static_cast<std::size_t>(j * s + i)] = std::conj(acc);
      }
  } else {
    for (int i = 0; i < db; ++i)
      for (int j = i; j < db; ++j) {
        Complex acc = 0.0;
        for (int a = 0; a < da; ++a) acc += std::conj(w[a * db + i]) * w[a * db + j];
        red[static_cast<std::size_t>(i * s + j)] = acc;
        red[static_cast<std::size_t>(j * s + i)] = std::conj(acc);
      }
  }
  small_hermitian_eigenvalues(red.data(), s, ev.data());

  if (objective.kind == MemberObjective::Kind::kKyFan) {
    double sum = 0.0;
    for (int j = 0; j < std::min(objective.m, s); ++j) sum += std::max(0.0, ev[static_cast<std::size_t>(j)]);
    return sum;
  }
  double p = 0.0;
  for (int j = 0; j < s; ++j) p += std::max(0.0, ev[static_cast<std::size_t>(j)]);
  if (p <= 0.0) return 0.0;
  double value = 0.0;
  for (int j = 0; j < s; ++j) {
    const double x = ev[static_cast<std::size_t>(j)];
    if (x > 0.0) value += x * std::log2(x / p);
  }
  return value;
}

long SearchOutcome::total_iterations() const {
  long total = 0;
  for (const auto& r : restarts) total += r.iterations;
  return total;
}

EnsembleSearch::EnsembleSearch(const DensityOperator& rho, const OptimizerConfig& config)
    : basis_(weighted_eigenbasis(rho)), dims_(rho.dims()), config_(config) {
  config_.check();
  ensemble_size_ = resolve_ensemble_size(config_, rank());
}

ComplexMatrix EnsembleSearch::initial_isometry(int restart) const {
  if (restart == 0) return identity_isometry(ensemble_size_, rank());
  return random_isometry(ensemble_size_, rank(), derive_seed(config_.seed, static_cast<std::uint64_t>(restart)));
}

double EnsembleSearch::evaluate(const ComplexMatrix& isometry, MemberObjective objective) const {
  const ComplexMatrix members = isometry * basis_;
  double total = 0.0;
  for (Eigen::Index i = 0; i < members.rows(); ++i) total += member_score(members.row(i).data(), dims_, objective);
  return total;
}

PureStateEnsemble EnsembleSearch::ensemble(const ComplexMatrix& isometry) const {
  return ensemble_from_members(isometry * basis_, dims_);
}

RestartOutcome EnsembleSearch::run_single(MemberObjective objective, int restart) const {
  const int n = ensemble_size_;
  const int d = dims_.total();
  ComplexMatrix v = initial_isometry(restart);
  ComplexMatrix w = v * basis_;
  std::vector<double> score(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) score[static_cast<std::size_t>(i)] = member_score(w.row(i).data(), dims_, objective);

  std::vector<Complex> wi(static_cast<std::size_t>(d));
  std::vector<Complex> wk(static_cast<std::size_t>(d));
  const Complex iu(0.0, 1.0);

  RestartOutcome out;
  out.restart = restart;
  double step = config_.initial_step;
  while (step >= config_.convergence_tol && out.iterations < config_.max_iterations) {
    ++out.iterations;
    double total = 0.0;
    for (double x : score) total += x;
    const double min_gain = std::max(4.0 * DBL_EPSILON * std::max(1.0, std::abs(total)), kForcing * step * step);
    bool improved = false;
    double pass_gain = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      for (int k = i + 1; k < n; ++k) {
        for (int type = 0; type < 2; ++type) {
          for (int sign = 0; sign < 2; ++sign) {
            const double angle = sign == 0 ? step : -step;
            const double c = std::cos(angle);
            const Complex s = type == 0 ? Complex(std::sin(angle)) : iu * std::sin(angle);
            // type 0: [[c, -s], [s, c]];  type 1: [[c, s], [s, c]] with s imaginary.
            const Complex s_ik = type == 0 ? -s : s;
            for (int t = 0; t < d; ++t) {
              wi[static_cast<std::size_t>(t)] = c * w(i, t) + s_ik * w(k, t);
              wk[static_cast<std::size_t>(t)] = s * w(i, t) + c * w(k, t);
            }
            const double si = member_score(wi.data(), dims_, objective);
            const double sk = member_score(wk.data(), dims_, objective);
            const double gain = (si + sk) - (score[static_cast<std::size_t>(i)] + score[static_cast<std::size_t>(k)]);
            if (!(gain > min_gain)) continue;
            for (int t = 0; t < d; ++t) {
              w(i, t) = wi[static_cast<std::size_t>(t)];
              w(k, t) = wk[static_cast<std::size_t>(t)];
            }
            for (int col = 0; col < v.cols(); ++col) {
              const Complex vi = v(i, col);
              const Complex vk = v(k, col);
              v(i, col) = c * vi + s_ik * vk;
              v(k, col) = s * vi + c * vk;
            }
            score[static_cast<std::size_t>(i)] = si;
            score[static_cast<std::size_t>(k)] = sk;
            ++out.accepted_moves;
            pass_gain += gain;
            improved = true;
            break;
          }
        }
      }
    }
    if (!improved || pass_gain < kPassProgress * step) step *= 0.5;
  }
  out.value = evaluate(v, objective);
  out.isometry = std::move(v);
  return out;
}

SearchOutcome EnsembleSearch::run(MemberObjective objective) const { return run(objective, config_.execution); }

SearchOutcome EnsembleSearch::run(MemberObjective objective, Execution exec) const {
  SearchOutcome out;
  out.restarts.resize(static_cast<std::size_t>(config_.restarts));
  for_each_index(exec, out.restarts.size(),
                 [&](std::size_t j) { out.restarts[j] = run_single(objective, static_cast<int>(j)); });
  for (std::size_t j = 1; j < out.restarts.size(); ++j)
    if (out.restarts[j].value > out.restarts[static_cast<std::size_t>(out.best)].value) out.best = static_cast<int>(j);
  return out;
}

}  // namespace dilutron
