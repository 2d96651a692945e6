#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dilutron/cli.hpp"
#include "dilutron/io.hpp"
#include "dilutron/states.hpp"

using namespace dilutron;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path tmp_dir() {
  const char* base = std::getenv("DILUTRON_TEST_TMP");
  auto dir = std::filesystem::path(base ? base : std::filesystem::temp_directory_path().string()) / "cli_scratch";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& content) {
  const auto path = tmp_dir() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string mes2_file() { return write("mes2.json", state_to_json(mes_density(2, Dims{2, 2}))); }

std::string slurp(const std::string& path) { return read_text_file(path); }

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("fidelity on the two-qubit maximally entangled state") {
  const auto r = run({"fidelity", "--state", mes2_file(), "-M", "1", "--seed", "1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["quantity"] == "dilution_fidelity");
  CHECK(j["M"] == 1);
  CHECK(j["provenance"]["seed"] == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("cost of a product state is zero") {
  const auto prod = product_density(random_density(Dims{2, 1}, 2, 3), random_density(Dims{3, 1}, 2, 4));
  const auto r = run({"cost", "--state", write("prod.json", state_to_json(prod)), "--eps", "0", "--seed", "5"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == 0.0);
}

TEST_CASE("verify gentle with 1000 draws") {
  const auto path = (tmp_dir() / "gentle.csv").string();
  const auto r = run({"verify", "--suite", "gentle", "--draws", "1000", "--seed", "7", "--out", path});
  CHECK(r.code == 0);
  const std::string csv = slurp(path);
  CHECK(line_count(csv) == 1001);
  CHECK(csv.find(",1\n") == std::string::npos);
  CHECK(r.out.find("0 violation") != std::string::npos);
}

TEST_CASE("stochastic commands need a seed") {
  ::unsetenv("DILUTRON_SEED");
  const auto r = run({"fidelity", "--state", mes2_file(), "-M", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("seed") != std::string::npos);
  ::setenv("DILUTRON_SEED", "11", 1);
  const auto fallback = run({"fidelity", "--state", mes2_file(), "-M", "1"});
  CHECK(fallback.code == 0);
  CHECK(nlohmann::json::parse(fallback.out)["provenance"]["seed"] == 11);
  const auto flag = run({"fidelity", "--state", mes2_file(), "-M", "1", "--seed", "12"});
  CHECK(nlohmann::json::parse(flag.out)["provenance"]["seed"] == 12);
  ::unsetenv("DILUTRON_SEED");
}

TEST_CASE("input errors exit 1 and name the field") {
  const auto bad = write("bad.json", R"({"dims": [2, 1], "matrix": [[[1, 0], [0, 0]], [[0, 0], ["x", 0]]]})");
  auto r = run({"fidelity", "--state", bad, "-M", "1", "--seed", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("matrix[1][1]") != std::string::npos);

  r = run({"fidelity", "--state", (tmp_dir() / "absent.json").string(), "-M", "1", "--seed", "1"});
  CHECK(r.code == 1);

  r = run({"cost", "--state", mes2_file(), "--eps", "1.5", "--seed", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("eps") != std::string::npos);

  r = run({"fidelity", "--state", mes2_file(), "-M", "0", "--seed", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("M") != std::string::npos);

  r = run({"sweep", "--state", mes2_file(), "-M", "1:2", "--seed", "1", "--format", "json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--format") != std::string::npos);

  CHECK(run({"no-such-command"}).code == 1);
}

TEST_CASE("config file values yield to command-line flags") {
  const auto cfg = write("run.cfg", "# defaults\nseed = 21\nrestarts = 3\nM = 1\n");
  auto r = run({"--config", cfg, "fidelity", "--state", mes2_file()});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["provenance"]["seed"] == 21);
  CHECK(j["provenance"]["restarts"] == 3);
  CHECK(j["M"] == 1);
  r = run({"--config", cfg, "fidelity", "--state", mes2_file(), "--seed", "22", "-M", "2"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["provenance"]["seed"] == 22);
  CHECK(j["M"] == 2);
  CHECK(run({"--config", write("broken.cfg", "restarts 3\n"), "fidelity", "--state", mes2_file()}).code == 1);
  CHECK(run({"--config", write("unknown.cfg", "colour = red\n"), "fidelity", "--state", mes2_file()}).code == 1);
}

TEST_CASE("identical runs write identical files") {
  const auto mix = write("mix.json", state_to_json(random_density(Dims{2, 2}, 3, 99)));
  const auto a = (tmp_dir() / "a.json").string();
  const auto b = (tmp_dir() / "b.json").string();
  for (const auto& path : {a, b})
    REQUIRE(run({"cost", "--state", mix, "--eps", "0.05", "--seed", "4", "--restarts", "4", "--out", path}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto c = (tmp_dir() / "c.csv").string();
  const auto d = (tmp_dir() / "d.csv").string();
  for (const auto& path : {c, d})
    REQUIRE(run({"sweep", "--state", mix, "--eps-grid", "0,0.1,0.3", "--seed", "4", "--restarts", "4", "--out", path})
                .code == 0);
  CHECK(slurp(c) == slurp(d));
  CHECK(slurp(c).rfind("eps,", 0) == 0);
}

TEST_CASE("bounds, entropy, sweep and scan commands") {
  const auto mix = write("mix2.json", state_to_json(random_density(Dims{2, 2}, 2, 7)));
  auto r = run({"bounds", "--state", mix, "--eps", "0.1", "--seed", "3", "--restarts", "4"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["lower"].get<double>() <= j["cost"].get<double>());
  CHECK(j["cost"].get<double>() <= j["upper"].get<double>());
  CHECK(j["violation"] == false);

  r = run({"bounds", "--state", mix, "--eps", "0.1", "--seed", "3", "--restarts", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(line_count(r.out) == 2);

  r = run({"entropy", "--state", mes2_file(), "--kind", "vn"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(0.0).scale(1.0));

  r = run({"entropy", "--state", mes2_file(), "--kind", "eof", "--seed", "1", "--restarts", "2"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(1.0));

  r = run({"sweep", "--state", mes2_file(), "-M", "1:2", "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(line_count(r.out) == 3);

  const auto ens = write("ens.json", R"({"weights": [0.5, 0.5], "states": [
      {"dims": [2, 1], "vector": [[1, 0], [0, 0]]},
      {"dims": [2, 1], "vector": [[0.6, 0], [0.8, 0]]}]})");
  r = run({"scan-divergence", "--ensemble", ens, "-n", "1,2", "--gamma-points", "11"});
  REQUIRE(r.code == 0);
  CHECK(line_count(r.out) == 23);
  CHECK(r.err.find("reference") != std::string::npos);
}

TEST_CASE("verify exits 0 on clean suites") {
  CHECK(run({"verify", "--suite", "ordering", "--draws", "20", "--seed", "2"}).code == 0);
  CHECK(run({"verify", "--suite", "smoothing", "--draws", "5", "--seed", "2"}).code == 0);
  CHECK(run({"verify", "--suite", "sandwich", "--draws", "2", "--seed", "2", "--restarts", "3"}).code == 0);
  CHECK(run({"verify", "--suite", "nope", "--seed", "2"}).code == 1);
}
