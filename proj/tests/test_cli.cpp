#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hjlab/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(HJLAB_CLI_PATH) + " " + args;
  int rc = std::system(cmd.c_str());
  return rc < 0 ? rc : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("hj-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("list prints the sorted registries") {
  fs::path dir = fresh_dir("list");
  fs::path out = dir / "list.txt";
  CHECK(run_cli("list > " + out.string()) == 0);
  std::string text = slurp(out);
  CHECK(text.find("quadratic") != std::string::npos);
  CHECK(text.find("neg-quadratic") != std::string::npos);
  CHECK(text.find("neg-abs") != std::string::npos);
  CHECK(text.find("burgers-shock") != std::string::npos);

  fs::path out2 = dir / "list2.txt";
  CHECK(run_cli("list > " + out2.string()) == 0);
  CHECK(text == slurp(out2));  // stable across runs
}

TEST_CASE("bundled burgers-shock runs clean and emits its files") {
  fs::path dir = fresh_dir("burgers");
  CHECK(run_cli("run burgers-shock --out " + dir.string() +
                " --assert ordering") == 0);
  CHECK(fs::exists(dir / "fields_t1.csv"));
  CHECK(fs::exists(dir / "fields_t1.dat"));
  CHECK(fs::exists(dir / "ordering_report.json"));
  CHECK(fs::exists(dir / "entropy_report.json"));
  CHECK(slurp(dir / "ordering_report.json").find("\"pass\": true") !=
        std::string::npos);

  std::string header = slurp(dir / "fields_t1.csv");
  CHECK(header.rfind("x,inf-family,variational,fd-oracle", 0) == 0);
}

TEST_CASE("anti-burgers fails the entropy assertion") {
  fs::path dir = fresh_dir("anti");
  CHECK(run_cli("run anti-burgers-rarefaction --out " + dir.string() +
                " --assert entropy-pass") == 1);
  CHECK(fs::exists(dir / "entropy_report.json"));
  CHECK(slurp(dir / "entropy_report.json").find("\"pass\": false") !=
        std::string::npos);
}

TEST_CASE("bad inputs exit with code 2") {
  fs::path dir = fresh_dir("bad");
  CHECK(run_cli("run no-such-scenario-or-file") == 2);

  fs::path broken = dir / "missing_grid.json";
  std::ofstream(broken) << R"({"hamiltonian": "quadratic", "initial": "neg-abs",
                              "times": [1.0], "solvers": ["fd-oracle"]})";
  CHECK(run_cli("run " + broken.string()) == 2);

  fs::path badjson = dir / "broken.json";
  std::ofstream(badjson) << "{ not json";
  CHECK(run_cli("run " + badjson.string()) == 2);
}

TEST_CASE("identical configs produce byte-identical CSVs") {
  fs::path a = fresh_dir("det-a");
  fs::path b = fresh_dir("det-b");
  // a small config keeps the double-run cheap
  std::string config = R"({
    "name": "determinism",
    "hamiltonian": "quadratic",
    "initial": "neg-abs",
    "grid": {"axes": [{"min": -2.0, "max": 2.0, "count": 101}]},
    "times": [0.5],
    "solvers": ["variational", "fd-oracle"],
    "params": {"dt": 0.01, "sites": 41, "cfl": 0.45}
  })";
  std::ofstream(a / "config.json") << config;
  CHECK(run_cli("run " + (a / "config.json").string() + " --out " + a.string()) ==
        0);
  CHECK(run_cli("run " + (a / "config.json").string() + " --out " + b.string()) ==
        0);
  CHECK(slurp(a / "fields_t0.5.csv") == slurp(b / "fields_t0.5.csv"));
  CHECK(!slurp(a / "fields_t0.5.csv").empty());
}

TEST_CASE("scenario config exit contract mirrors run_scenario") {
  using namespace hjlab;
  CHECK_THROWS_AS(parse_scenario("{}"), ArgumentError);
  ScenarioConfig cfg = parse_scenario(builtin_scenario_json("burgers-shock"));
  CHECK(cfg.name == "burgers-shock");
  CHECK(cfg.dim == 1);
  CHECK(cfg.check_entropy);
}
