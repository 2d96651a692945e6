// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dilutron/asymptotics.hpp"
#include "dilutron/dilution.hpp"
#include "dilutron/entropies.hpp"
#include "dilutron/oracles.hpp"
#include "test_support.hpp"

using namespace dilutron;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> body;
};

OptimizerConfig default_config(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

std::vector<double> schmidt(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(rho.matrix())};
  const ComplexVector psi = es.eigenvectors().col(es.eigenvectors().cols() - 1);
  return oracle::schmidt_coefficients(psi, rho.dims().a, rho.dims().b);
}

Outcome pure_exactness() {
  double worst = 0.0;
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 3;
    const auto rho = pure_density(random_pure_state(Dims{d, d}, 1000 + static_cast<std::uint64_t>(t)));
    const auto c = schmidt(rho);
    double head = 0.0;
    for (int m = 1; m <= d; ++m) {
      head += c[static_cast<std::size_t>(m - 1)];
      worst = std::max(worst, std::abs(dilution_fidelity(rho, m, default_config(1)).value - std::min(head, 1.0)));
      ++checked;
    }
  }
  return {worst <= 1e-9, fmt::format("{} (state, M) pairs, max |F - Schmidt sum| = {:.2e}", checked, worst)};
}

Outcome mes_family() {
  double worst = 0.0;
  bool costs_exact = true;
  for (int k = 1; k <= 6; ++k) {
    const auto rho = mes_density(k, Dims{k, k});
    for (int m = 1; m <= k; ++m)
      worst = std::max(worst, std::abs(dilution_fidelity(rho, m, default_config(1)).value - std::min(1.0 * m / k, 1.0)));
    costs_exact = costs_exact && exact_cost(rho, default_config(1)).value == std::log2(static_cast<double>(k));
  }
  return {worst <= 1e-9 && costs_exact,
          fmt::format("max |F - min(M/K, 1)| = {:.2e}; exact_cost = log2 M bitwise: {}", worst, costs_exact)};
}

// Odd draws are blended with white noise so both PPT and NPT states appear.
DensityOperator two_qubit_sample(int t, std::uint64_t base) {
  const auto rho = random_density(Dims{2, 2}, 1 + t % 4, base + static_cast<std::uint64_t>(t));
  if (t % 2 == 0) return rho;
  const double q = 0.3 + 0.1 * (t % 7);
  return DensityOperator::validate((1 - q) * rho.matrix() + q * ComplexMatrix::Identity(4, 4) / 4.0, Dims{2, 2});
}

Outcome ppt_dichotomy() {
  int ppt = 0;
  int wrong = 0;
  int contradictions = 0;
  int certified_zero = 0;
  for (int t = 0; t < 50; ++t) {
    const auto rho = two_qubit_sample(t, 2000);
    const bool separable = is_ppt(rho);
    ppt += separable;
    const double fast = exact_cost(rho, default_config(3)).value;
    wrong += fast != (separable ? 0.0 : 1.0);
    const double searched = exact_cost(rho, default_config(3), ExactCostMethod::kSearch).value;
    // The search can only fail to find a product decomposition; it must
    // never report 0 for an entangled state or drop below the PPT answer.
    contradictions += searched < fast || (!separable && searched != 1.0);
    certified_zero += separable && searched == 0.0;
  }
  return {wrong == 0 && contradictions == 0,
          fmt::format("{} PPT / {} NPT; PPT-path mismatches {}; search contradictions {}; search certified 0 on {}/{} "
                      "PPT states",
                      ppt, 50 - ppt, wrong, contradictions, certified_zero, ppt)};
}

Outcome greedy_smoothing() {
  const auto rows = smoothing_suite(4000, 200, 1000);
  int route_mismatch = 0;
  int oracle_wins = 0;
  for (const auto& r : rows) {
    route_mismatch += r.greedy != r.projector;
    oracle_wins += r.oracle < r.greedy;
  }
  return {route_mismatch == 0 && oracle_wins == 0 && rows.size() == 200 * kSmoothingEpsGrid.size(),
          fmt::format("{} rows; route mismatches {}; oracle below greedy {}", rows.size(), route_mismatch, oracle_wins)};
}

Outcome sandwich() {
  const std::vector<double> grid{0.01, 0.1};
  const auto rows = sandwich_suite(5000, 20, grid, default_config(5));
  int flagged = 0;
  int pure_strict = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    flagged += rows[i].violation;
    const bool pure_draw = (i / grid.size()) % 2 == 1;
    if (pure_draw && !(rows[i].lower <= rows[i].cost && rows[i].cost <= rows[i].upper)) ++pure_strict;
  }
  return {flagged == 0 && pure_strict == 0 && rows.size() == 40,
          fmt::format("{} rows; violations beyond {:.0e}: {}; exact violations on pure draws: {}", rows.size(),
                      kSearchNoiseTol, flagged, pure_strict)};
}

Outcome gentle() {
  const auto rows = gentle_suite(6000, 1000);
  int flagged = 0;
  int subnormalized = 0;
  double margin = 1e9;
  for (const auto& r : rows) {
    flagged += r.violation;
    subnormalized += r.trace < 1.0 - 1e-12;
    margin = std::min(margin, r.bound + kGentleSlack - r.lhs);
  }
  return {flagged == 0 && rows.size() == 1000,
          fmt::format("{} pairs ({} subnormalized); failures {}; min slack {:.3e}", rows.size(), subnormalized, flagged,
                      margin)};
}

Outcome orderings() {
  const auto rows = ordering_suite(7000, 200);
  int flagged = 0;
  for (const auto& r : rows) flagged += r.violation;
  return {flagged == 0 && rows.size() == 200, fmt::format("{} instances; violations {}", rows.size(), flagged)};
}

Outcome eof_vs_cost() {
  int bad = 0;
  double worst = -1e9;
  for (int t = 0; t < 50; ++t) {
    const auto rho = two_qubit_sample(t, 8000);
    const double ef = two_qubit_eof_oracle(rho);
    const double cost = exact_cost(rho, default_config(8)).value;
    worst = std::max(worst, ef - cost);
    bad += ef > cost + 1e-9;
  }
  return {bad == 0, fmt::format("50 states; violations {}; max E_F - cost = {:.3f}", bad, worst)};
}

Outcome monotonicity() {
  int fidelity_drops = 0;
  int cost_rises = 0;
  int smoothed_rises = 0;
  int checks = 0;
  const std::vector<double> eps_grid{0.0, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.99};
  for (int t = 0; t < 6; ++t) {
    const Dims dims = t % 2 == 0 ? Dims{2, 3} : Dims{3, 3};
    const auto rho = random_density(dims, 2 + t, 9000 + static_cast<std::uint64_t>(t));
    const auto cfg = default_config(9);
    double last = 0.0;
    for (int m = 1; m <= dims.min(); ++m) {
      const double f = dilution_fidelity(rho, m, cfg).value;
      fidelity_drops += f < last;
      last = f;
      ++checks;
    }
    // Same config, same pool: the standalone cost at every eps is the pool cost.
    const auto pool = build_pool(rho, cfg);
    double last_cost = 1e18;
    for (double eps : eps_grid) {
      const double c = one_shot_cost(rho, eps, pool, cfg).value;
      cost_rises += c > last_cost;
      last_cost = c;
      ++checks;
    }
  }
  Rng rng = make_rng(9100);
  for (int t = 0; t < 200; ++t) {
    const auto profile = random_profile(rng, 1 + t % 5, 2 + t % 5);
    double last = 1e18;
    for (double eps : eps_grid) {
      const double h = h0_smoothed_cq(profile, SmoothingBudget::make(eps));
      smoothed_rises += h > last;
      last = h;
      ++checks;
    }
  }
  return {fidelity_drops + cost_rises + smoothed_rises == 0,
          fmt::format("{} checks; F drops {}; cost rises {}; H0 smoothed rises {}", checks, fidelity_drops, cost_rises,
                      smoothed_rises)};
}

CqOperator random_cq(std::uint64_t seed) {
  const auto rho = random_density(Dims{2, 2}, 2 + static_cast<int>(seed % 3), seed);
  const int r = state_rank(rho);
  const auto ens = ensemble_from_isometry(rho, random_isometry(r + 1, r, seed + 7));
  return cq_extension(ens);
}

Outcome divergence() {
  int rises = 0;
  double worst_scalar = 0.0;
  int closer = 0;
  std::string distances;
  for (int t = 0; t < 10; ++t) {
    const auto cq = random_cq(10000 + static_cast<std::uint64_t>(t));
    const auto sigma = register_state(cq);
    const double ref = relative_entropy_rate_reference(cq);
    for (int n : {1, 2}) {
      double last = 1e18;
      for (int k = 0; k < 50; ++k) {
        const double v = inf_divergence_statistic(cq, sigma, n, ref - 3.0 + 6.0 * k / 49.0);
        rises += v > last;
        last = v;
      }
    }
    const double d1 = std::abs(transition_midpoint(cq, sigma, 1, ref - 40.0, ref + 40.0) - ref);
    const double d2 = std::abs(transition_midpoint(cq, sigma, 2, ref - 40.0, ref + 40.0) - ref);
    closer += d2 <= d1;
    distances += fmt::format("{}{:.3f}->{:.3f}", t == 0 ? "" : " ", d1, d2);
  }
  Rng rng = make_rng(10100);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int nr = 2 + t % 3;
    const int da = 1 + t % 3;
    CqOperator cq;
    std::vector<std::vector<double>> r(static_cast<std::size_t>(nr));
    double total = 0.0;
    for (auto& row : r) {
      row.resize(static_cast<std::size_t>(da));
      for (auto& x : row) total += (x = u(rng));
    }
    std::vector<double> s(static_cast<std::size_t>(nr));
    double s_total = 0.0;
    for (auto& x : s) s_total += (x = u(rng));
    ComplexMatrix sm = ComplexMatrix::Zero(nr, nr);
    for (int i = 0; i < nr; ++i) {
      ComplexMatrix b = ComplexMatrix::Zero(da, da);
      for (int a = 0; a < da; ++a) b(a, a) = (r[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] /= total);
      cq.blocks.push_back(b);
      sm(i, i) = (s[static_cast<std::size_t>(i)] /= s_total);
    }
    const auto sigma = DensityOperator::validate(sm, Dims{nr, 1});
    for (double gamma : {-2.0, -0.7, 0.0, 0.3, 1.1, 2.4}) {
      double expected = 0.0;
      for (int i = 0; i < nr; ++i)
        for (double x : r[static_cast<std::size_t>(i)])
          expected += std::max(0.0, x - std::pow(2.0, gamma) * s[static_cast<std::size_t>(i)]);
      worst_scalar = std::max(worst_scalar, std::abs(inf_divergence_statistic(cq, sigma, 1, gamma) - expected));
    }
  }
  return {rises == 0 && worst_scalar <= 1e-10 && closer == 10,
          fmt::format("grid rises {}; classical max error {:.2e}; n=2 midpoint at least as close on {}/10 "
                      "(|mid - ref| n=1->n=2: {})",
                      rises, worst_scalar, closer, distances)};
}

Outcome two_copy() {
  const double eps = 0.1;
  int bad = 0;
  std::string values;
  for (int t = 0; t < 10; ++t) {
    const auto rho = two_qubit_sample(t, 11000);
    // The inequality rests on the product entries of the two-copy pool, not
    // on search depth, so a lighter restart budget keeps the run short.
    auto cfg = default_config(11);
    cfg.restarts = 8;
    const double two = n_copy_cost(rho, 2, eps, cfg).value;
    const double one = one_shot_cost(rho, eps / 2, cfg).value;
    // A rank-M protocol at eps/2, run twice, reaches fidelity (1 - eps/2)^2 >=
    // 1 - eps with rank M^2, so the per-copy rate never exceeds the single one.
    bad += two > one + 1e-12;
    values += fmt::format("{}{:.3f}<={:.3f}", t == 0 ? "" : " ", two, one);
  }
  return {bad == 0, fmt::format("eps {}; violations {}; per-copy vs single: {}", eps, bad, values)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "pure-state exactness", 10, pure_exactness},
      {2, "maximally entangled family", 5, mes_family},
      {3, "two-qubit exact-cost dichotomy", 120, ppt_dichotomy},
      {4, "greedy equals smoothing", 120, greedy_smoothing},
      {5, "cost sandwich", 600, sandwich},
      {6, "gentle measurement", 30, gentle},
      {7, "entropy orderings", 30, orderings},
      {8, "formation entanglement below exact cost", 60, eof_vs_cost},
      {9, "monotonicity", 60, monotonicity},
      {10, "spectral divergence statistic", 300, divergence},
      {11, "two-copy consistency", 1e9, two_copy},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    fmt::print("{} [{}] {}: {} ({:.2f} s{})\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail, secs,
               in_time ? "" : fmt::format(", over the {:.0f} s limit", c.limit_seconds));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
