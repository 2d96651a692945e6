#include "dilutron/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dilutron/asymptotics.hpp"
#include "dilutron/dilution.hpp"
#include "dilutron/entropies.hpp"
#include "dilutron/error.hpp"
#include "dilutron/io.hpp"
#include "dilutron/oracles.hpp"

namespace dilutron {

namespace {

constexpr int kOracleSamples = 1000;

struct RunOptions {
  std::string state;
  std::string ensemble;
  std::string sigma;
  std::string out;
  std::string format = "json";
  std::string m_text;
  std::string eps_grid;
  std::string n_text;
  std::string kind;
  std::string suite;
  std::string seed_text;
  double eps = 0.0;
  int draws = 0;
  int ensemble_size = 0;
  int restarts = 32;
  int max_iterations = 4000;
  double gamma_min = std::nan("");
  double gamma_max = std::nan("");
  int gamma_points = 101;
  bool serial = false;
};

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kInput, fmt::format("{}: {}", field, what));
}

int parse_int(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) bad(field, fmt::format("\"{}\" is not an integer", text));
    return v;
  } catch (const std::logic_error&) {
    bad(field, fmt::format("\"{}\" is not an integer", text));
  }
}

double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) bad(field, fmt::format("\"{}\" is not a finite number", text));
    return v;
  } catch (const std::logic_error&) {
    bad(field, fmt::format("\"{}\" is not a number", text));
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::vector<double> parse_grid(const std::string& text, const std::string& field) {
  std::vector<double> grid;
  for (const auto& part : split(text, ',')) grid.push_back(parse_double(part, field));
  if (grid.empty()) bad(field, "empty grid");
  return grid;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> config;
  std::stringstream ss(read_text_file(path));
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad(fmt::format("config line {}", number), "expected key=value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    config[key] = trim(line.substr(eq + 1));
  }
  return config;
}

std::optional<std::string> config_path_from(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Options of one subcommand, with setters for values coming from --config.
struct Bindings {
  struct Entry {
    CLI::Option* option;
    std::function<bool(const std::string&)> set;
  };
  std::map<std::string, Entry> entries;

  template <typename T>
  CLI::Option* add(CLI::App* app, const std::string& spec, const std::string& key, T& var, const std::string& help) {
    CLI::Option* opt = app->add_option(spec, var, help);
    entries[key] = Entry{opt, [&var](const std::string& v) { return CLI::detail::lexical_cast(v, var); }};
    return opt;
  }
  CLI::Option* flag(CLI::App* app, const std::string& spec, const std::string& key, bool& var, const std::string& help) {
    CLI::Option* opt = app->add_flag(spec, var, help);
    entries[key] = Entry{opt, [&var](const std::string& v) { return CLI::detail::lexical_cast(v, var); }};
    return opt;
  }

  void apply(const std::map<std::string, std::string>& config) {
    for (const auto& [key, value] : config) {
      if (key == "config") continue;
      const auto it = entries.find(key);
      if (it == entries.end()) bad("config", fmt::format("unknown key \"{}\" for this command", key));
      if (it->second.option->count() > 0) continue;  // command line wins
      if (!it->second.set(value)) bad(fmt::format("config key \"{}\"", key), fmt::format("bad value \"{}\"", value));
    }
  }
};

class Runner {
 public:
  Runner(const RunOptions& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int fidelity();
  int cost();
  int bounds();
  int entropy();
  int sweep();
  int verify();
  int scan_divergence();

 private:
  const RunOptions& o_;
  std::ostream& out_;
  std::ostream& err_;

  std::uint64_t seed() const {
    std::string text = o_.seed_text;
    if (text.empty())
      if (const char* env = std::getenv("DILUTRON_SEED")) text = env;
    if (text.empty()) bad("seed", "required for this command (--seed, config key seed, or DILUTRON_SEED)");
    try {
      std::size_t used = 0;
      if (text.front() == '-') throw std::invalid_argument("negative");
      const auto v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::logic_error&) {
      bad("seed", fmt::format("\"{}\" is not a non-negative integer", text));
    }
  }

  OptimizerConfig config() const {
    OptimizerConfig cfg;
    cfg.ensemble_size = o_.ensemble_size;
    cfg.restarts = o_.restarts;
    cfg.max_iterations = o_.max_iterations;
    cfg.seed = seed();
    cfg.execution = o_.serial ? Execution::kSerial : Execution::kParallel;
    cfg.check();
    return cfg;
  }

  DensityOperator state() const {
    if (o_.state.empty()) bad("--state", "required");
    return load_state(o_.state);
  }

  bool csv() const {
    if (o_.format != "json" && o_.format != "csv") bad("--format", "expected json or csv");
    return o_.format == "csv";
  }

  void emit(const std::string& machine, const std::string& summary) {
    if (!o_.out.empty()) {
      atomic_write(o_.out, machine);
      out_ << summary << '\n';
    } else {
      out_ << machine;
      err_ << summary << '\n';
    }
  }

  void emit_report(const DilutionReport& r, const std::string& summary) {
    if (csv()) {
      CsvTable t({"quantity", "state_digest", "M", "eps", "n", "value", "integer_value", "bound", "lower", "upper",
                  "method"});
      auto opt_num = [](const auto& v) { return v ? format_number(static_cast<double>(*v)) : std::string(); };
      t.add_row({r.quantity, r.state_digest, r.m ? std::to_string(*r.m) : "", opt_num(r.epsilon),
                 r.copies ? std::to_string(*r.copies) : "", format_number(r.value),
                 r.integer_value ? std::to_string(*r.integer_value) : "", to_string(r.bound), opt_num(r.lower),
                 opt_num(r.upper), r.provenance.method});
      emit(t.str(), summary);
    } else {
      emit(report_json(r).str() + "\n", summary);
    }
  }

  static std::string describe(const DilutionReport& r) {
    return fmt::format("{} = {} ({}, {})", r.quantity, format_number(r.value), to_string(r.bound), r.provenance.method);
  }
};

int Runner::fidelity() {
  if (o_.m_text.empty()) bad("-M", "required");
  const int m = parse_int(o_.m_text, "-M");
  const auto rho = state();
  const auto report = dilution_fidelity(rho, m, config());
  emit_report(report, describe(report));
  return kExitOk;
}

int Runner::cost() {
  const auto rho = state();
  const int n = o_.n_text.empty() ? 1 : parse_int(o_.n_text, "-n");
  const auto cfg = config();
  DilutionReport report;
  if (n == 1 && o_.eps == 0.0)
    report = exact_cost(rho, cfg);
  else if (n == 1)
    report = one_shot_cost(rho, o_.eps, cfg);
  else
    report = n_copy_cost(rho, n, o_.eps, cfg);
  emit_report(report, describe(report) + " bits");
  return kExitOk;
}

int Runner::bounds() {
  const auto rho = state();
  const auto b = cost_bounds(rho, o_.eps, config());
  const bool violation = b.lower > b.cost + kSearchNoiseTol || b.cost > b.upper + kSearchNoiseTol;
  const std::string summary = fmt::format("lower {} <= cost {} <= upper {}{}", format_number(b.lower),
                                          format_number(b.cost), format_number(b.upper), violation ? "  VIOLATED" : "");
  if (csv()) {
    CsvTable t({"state_digest", "eps", "lower", "cost", "upper", "violation"});
    t.add_row({b.cost_report.state_digest, format_number(o_.eps), format_number(b.lower), format_number(b.cost),
               format_number(b.upper), violation ? "1" : "0"});
    emit(t.str(), summary);
  } else {
    JsonObject j;
    j.add("quantity", "sandwich");
    j.add("state_digest", b.cost_report.state_digest);
    j.add("eps", o_.eps);
    j.add("lower", b.lower);
    j.add("cost", b.cost);
    j.add("upper", b.upper);
    j.add("lower_rank", b.lower_rank.rank);
    j.add("cost_rank", b.cost_rank.rank);
    j.add("upper_rank", b.upper_rank.rank);
    j.add("exact", b.exact);
    j.add("violation", violation);
    j.add("cost_report", report_json(b.cost_report));
    emit(j.str() + "\n", summary);
  }
  return violation ? kExitViolation : kExitOk;
}

int Runner::entropy() {
  const std::string& k = o_.kind;
  JsonObject j;
  j.add("quantity", k);
  std::string value_text;
  auto put_extended = [&](const ExtendedReal& x) {
    value_text = x.to_string();
    if (x.is_finite())
      j.add("value", x.value());
    else
      j.add("value", value_text);
  };
  auto put = [&](double x) {
    value_text = format_number(x);
    j.add("value", x);
  };
  auto sigma = [&]() {
    if (o_.sigma.empty()) bad("--sigma", fmt::format("required for kind {}", k));
    return load_state(o_.sigma);
  };

  if (k == "vn") {
    const auto rho = state();
    j.add("state_digest", digest(rho));
    put(von_neumann(rho.matrix()));
  } else if (k == "s0" || k == "relent") {
    const auto rho = state();
    const auto s = sigma();
    if (s.dim() != rho.dim()) bad("--sigma", "dimension differs from --state");
    j.add("state_digest", digest(rho));
    put_extended(k == "s0" ? s0_relative(rho.matrix(), s.matrix()) : relative_entropy(rho.matrix(), s.matrix()));
  } else if (k == "h0") {
    if (!o_.ensemble.empty()) {
      put(h0_cq(cq_extension(load_ensemble(o_.ensemble))));
    } else {
      const auto rho = state();
      j.add("state_digest", digest(rho));
      if (o_.sigma.empty())
        put(h0_conditional(rho));
      else
        put_extended(h0_conditional_given(rho, sigma()));
    }
  } else if (k == "h0_smoothed") {
    const auto ens = o_.ensemble.empty() ? [&] {
      const auto rho = state();
      return ensemble_from_isometry(rho, identity_isometry(state_rank(rho), state_rank(rho)));
    }()
                                         : load_ensemble(o_.ensemble);
    const auto rank = smoothed_rank(SpectralProfile::from_ensemble(ens), SmoothingBudget::make(o_.eps));
    j.add("eps", o_.eps);
    put(rank.log2_value());
    j.add("integer_value", rank.rank);
    j.add("degenerate", rank.degenerate);
  } else if (k == "eof") {
    const auto rho = state();
    const auto report = entanglement_of_formation(rho, config());
    j.add("state_digest", report.state_digest);
    put(report.value);
    j.add("bound", to_string(report.bound));
    if (rho.dims() == Dims{2, 2}) j.add("concurrence_formula", two_qubit_eof_oracle(rho));
    j.add("provenance", report_json(report));
  } else {
    bad("--kind", fmt::format("\"{}\" is not one of s0, h0, h0_smoothed, vn, relent, eof", k));
  }

  if (csv()) {
    CsvTable t({"quantity", "value"});
    t.add_row({k, value_text});
    emit(t.str(), fmt::format("{} = {}", k, value_text));
  } else {
    emit(j.str() + "\n", fmt::format("{} = {}", k, value_text));
  }
  return kExitOk;
}

int Runner::sweep() {
  const auto rho = state();
  const auto cfg = config();
  if (o_.m_text.empty() == o_.eps_grid.empty()) bad("sweep", "give exactly one of -M lo:hi or --eps-grid");
  const auto pool = build_pool(rho, cfg);
  if (!o_.m_text.empty()) {
    const auto parts = split(o_.m_text, ':');
    if (parts.size() != 2) bad("-M", "expected lo:hi");
    const int lo = parse_int(parts[0], "-M");
    const int hi = parse_int(parts[1], "-M");
    if (lo < 1 || hi < lo) bad("-M", "expected 1 <= lo <= hi");
    if (hi > rho.dims().min()) bad("-M", "hi exceeds min(dA, dB)");
    CsvTable t({"M", "fidelity", "bound"});
    for (int m = lo; m <= hi; ++m) {
      const bool exact = pool.exact || m == rho.dims().min();
      const double f = m == rho.dims().min() ? 1.0 : pool_fidelity(pool, m);
      t.add_row({std::to_string(m), format_number(f), to_string(exact ? BoundKind::kExact : BoundKind::kLowerBound)});
    }
    emit(t.str(), fmt::format("fidelity sweep M = {}..{}: {} rows", lo, hi, t.rows()));
    return kExitOk;
  }
  CsvTable t({"eps", "cost", "M_star", "lower", "upper", "bound"});
  for (double eps : parse_grid(o_.eps_grid, "--eps-grid")) {
    const auto b = cost_bounds(rho, eps, pool, cfg);
    t.add_row({format_number(eps), format_number(b.cost), std::to_string(b.cost_rank.rank), format_number(b.lower),
               format_number(b.upper), to_string(b.cost_report.bound)});
  }
  emit(t.str(), fmt::format("cost sweep: {} rows", t.rows()));
  return kExitOk;
}

int Runner::verify() {
  const std::uint64_t s = seed();
  const auto exec = o_.serial ? Execution::kSerial : Execution::kParallel;
  auto draws = [&](int fallback) {
    if (o_.draws < 0) bad("--draws", "must be non-negative");
    return o_.draws > 0 ? o_.draws : fallback;
  };
  std::size_t flagged = 0;
  std::string table;
  std::size_t rows = 0;
  const std::string& suite = o_.suite;
  if (suite == "gentle") {
    CsvTable t({"draw", "dim", "trace", "delta", "lhs", "bound", "violation"});
    for (const auto& r : gentle_suite(s, draws(1000), exec)) {
      flagged += r.violation;
      t.add_row({std::to_string(r.draw), std::to_string(r.dim), format_number(r.trace), format_number(r.delta),
                 format_number(r.lhs), format_number(r.bound), r.violation ? "1" : "0"});
    }
    table = t.str();
    rows = t.rows();
  } else if (suite == "smoothing") {
    CsvTable t({"draw", "eps", "greedy", "projector", "oracle", "violation"});
    for (const auto& r : smoothing_suite(s, draws(200), kOracleSamples, exec)) {
      flagged += r.violation;
      t.add_row({std::to_string(r.draw), format_number(r.epsilon), std::to_string(r.greedy), std::to_string(r.projector),
                 std::to_string(r.oracle), r.violation ? "1" : "0"});
    }
    table = t.str();
    rows = t.rows();
  } else if (suite == "ordering") {
    CsvTable t({"draw", "relative", "s0", "h0_cq", "h_cq", "violation"});
    for (const auto& r : ordering_suite(s, draws(200), exec)) {
      flagged += r.violation;
      t.add_row({std::to_string(r.draw), format_number(r.relative), format_number(r.s0), format_number(r.h0_cq),
                 format_number(r.h_cq), r.violation ? "1" : "0"});
    }
    table = t.str();
    rows = t.rows();
  } else if (suite == "sandwich") {
    const auto grid = o_.eps_grid.empty() ? std::vector<double>{0.01, 0.1} : parse_grid(o_.eps_grid, "--eps-grid");
    CsvTable t({"state_digest", "eps", "lower", "cost", "upper", "violation"});
    for (const auto& r : sandwich_suite(s, draws(20), grid, config())) {
      flagged += r.violation;
      t.add_row({r.state_digest, format_number(r.epsilon), format_number(r.lower), format_number(r.cost),
                 format_number(r.upper), r.violation ? "1" : "0"});
    }
    table = t.str();
    rows = t.rows();
  } else {
    bad("--suite", fmt::format("\"{}\" is not one of gentle, sandwich, smoothing, ordering", suite));
  }
  emit(table, fmt::format("verify {}: {} rows, {} violations", suite, rows, flagged));
  return flagged > 0 ? kExitViolation : kExitOk;
}

int Runner::scan_divergence() {
  if (o_.ensemble.empty()) bad("--ensemble", "required");
  const auto cq = cq_extension(load_ensemble(o_.ensemble));
  const auto sigma = o_.sigma.empty() ? register_state(cq) : load_state(o_.sigma);
  std::vector<int> ns;
  for (const auto& part : split(o_.n_text.empty() ? "1" : o_.n_text, ',')) ns.push_back(parse_int(part, "-n"));
  const double reference = relative_entropy_rate_reference(cq);
  const double lo = std::isnan(o_.gamma_min) ? reference - 2.0 : o_.gamma_min;
  const double hi = std::isnan(o_.gamma_max) ? reference + 2.0 : o_.gamma_max;
  if (o_.gamma_points < 2) bad("--gamma-points", "must be at least 2");
  if (!(lo < hi)) bad("--gamma-min", "must be below --gamma-max");
  std::vector<double> grid(static_cast<std::size_t>(o_.gamma_points));
  for (int k = 0; k < o_.gamma_points; ++k)
    grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (o_.gamma_points - 1);

  const auto scans = divergence_scan(cq, sigma, ns, grid, o_.serial ? Execution::kSerial : Execution::kParallel);
  CsvTable t({"n", "gamma", "value"});
  std::string summary = fmt::format("reference S(rho_RA || rho_R x 1_A) = {}", format_number(reference));
  for (const auto& scan : scans) {
    for (std::size_t k = 0; k < grid.size(); ++k)
      t.add_row({std::to_string(scan.n), format_number(grid[k]), format_number(scan.values[k])});
    try {
      summary += fmt::format("\nn = {}: midpoint gamma = {}", scan.n,
                             format_number(transition_midpoint(cq, sigma, scan.n, lo, hi)));
    } catch (const Error&) {
      summary += fmt::format("\nn = {}: midpoint outside the grid", scan.n);
    }
  }
  emit(t.str(), summary);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunOptions o;
  CLI::App app{"Entanglement dilution costs, bounds and checks", "dilutron"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_file;
  app.add_option("--config", config_file, "key=value file; command-line flags take precedence");

  std::map<CLI::App*, Bindings> bindings;
  auto common = [&](CLI::App* sub) {
    auto& b = bindings[sub];
    b.add(sub, "--out", "out", o.out, "Output path (written atomically)");
    b.add(sub, "--format", "format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    b.add(sub, "--seed", "seed", o.seed_text, "RNG seed (falls back to DILUTRON_SEED)");
    b.flag(sub, "--serial", "serial", o.serial, "Run restarts and draws serially");
    return sub;
  };
  auto optimizer = [&](CLI::App* sub) {
    auto& b = bindings[sub];
    b.add(sub, "--ensemble-size", "ensemble-size", o.ensemble_size, "Decomposition size N (0: clamp(r^2, r, 16))");
    b.add(sub, "--restarts", "restarts", o.restarts, "Search restarts");
    b.add(sub, "--max-iterations", "max-iterations", o.max_iterations, "Search passes per restart");
  };
  auto state_opt = [&](CLI::App* sub) { bindings[sub].add(sub, "--state", "state", o.state, "State JSON file"); };
  auto eps_opt = [&](CLI::App* sub) { bindings[sub].add(sub, "--eps", "eps", o.eps, "Smoothing parameter"); };

  auto* fid = common(app.add_subcommand("fidelity", "Optimal dilution fidelity for an M-dimensional resource"));
  state_opt(fid);
  optimizer(fid);
  bindings[fid].add(fid, "-M", "M", o.m_text, "Resource Schmidt rank");

  auto* cost = common(app.add_subcommand("cost", "One-shot entanglement cost in bits"));
  state_opt(cost);
  optimizer(cost);
  eps_opt(cost);
  bindings[cost].add(cost, "-n", "n", o.n_text, "Copies (1 or 2)");

  auto* bounds = common(app.add_subcommand("bounds", "Smoothed-entropy lower and upper bounds on the cost"));
  state_opt(bounds);
  optimizer(bounds);
  eps_opt(bounds);

  auto* entropy = common(app.add_subcommand("entropy", "Entropic quantities of a state or ensemble"));
  state_opt(entropy);
  optimizer(entropy);
  eps_opt(entropy);
  bindings[entropy].add(entropy, "--ensemble", "ensemble", o.ensemble, "Ensemble JSON file");
  bindings[entropy].add(entropy, "--sigma", "sigma", o.sigma, "Second state for s0, relent, h0");
  bindings[entropy].add(entropy, "--kind", "kind", o.kind, "s0, h0, h0_smoothed, vn, relent or eof")->required();

  auto* sweep = common(app.add_subcommand("sweep", "Fidelity over an M range or cost over an eps grid (CSV)"));
  state_opt(sweep);
  optimizer(sweep);
  bindings[sweep].add(sweep, "-M", "M", o.m_text, "M range lo:hi");
  bindings[sweep].add(sweep, "--eps-grid", "eps-grid", o.eps_grid, "Comma-separated eps values");

  auto* verify = common(app.add_subcommand("verify", "Seeded property audits (CSV); exit 2 on any violation"));
  optimizer(verify);
  bindings[verify].add(verify, "--suite", "suite", o.suite, "gentle, sandwich, smoothing or ordering")->required();
  bindings[verify].add(verify, "--draws", "draws", o.draws, "Number of draws (suite default if 0)");
  bindings[verify].add(verify, "--eps-grid", "eps-grid", o.eps_grid, "eps values for the sandwich suite");

  auto* scan = common(app.add_subcommand("scan-divergence", "Spectral divergence statistic over a gamma grid (CSV)"));
  bindings[scan].add(scan, "--ensemble", "ensemble", o.ensemble, "Ensemble JSON file");
  bindings[scan].add(scan, "--sigma", "sigma", o.sigma, "Register state (default: rho_R)");
  bindings[scan].add(scan, "-n", "n", o.n_text, "Copy counts, comma-separated");
  bindings[scan].add(scan, "--gamma-min", "gamma-min", o.gamma_min, "Grid start (default reference - 2)");
  bindings[scan].add(scan, "--gamma-max", "gamma-max", o.gamma_max, "Grid end (default reference + 2)");
  bindings[scan].add(scan, "--gamma-points", "gamma-points", o.gamma_points, "Grid size");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const bool table_command = chosen == sweep || chosen == verify || chosen == scan;
  Runner runner(o, out, err);
  try {
    if (const auto path = config_path_from(args)) bindings[const_cast<CLI::App*>(chosen)].apply(read_config(*path));
    if (table_command && o.format != "csv") {
      if (chosen->get_option("--format")->count() > 0) bad("--format", "this command writes CSV only");
      o.format = "csv";
    }
    if (chosen == fid) return runner.fidelity();
    if (chosen == cost) return runner.cost();
    if (chosen == bounds) return runner.bounds();
    if (chosen == entropy) return runner.entropy();
    if (chosen == sweep) return runner.sweep();
    if (chosen == verify) return runner.verify();
    return runner.scan_divergence();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace dilutron
