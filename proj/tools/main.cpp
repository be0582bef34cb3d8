#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hjlab/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hamilton-Jacobi scenario runner"};
  app.require_subcommand(1);

  std::string target;
  std::string assert_check;
  std::string out_dir;
  CLI::App* run = app.add_subcommand("run", "run a scenario config or bundled name");
  run->add_option("config", target, "config file path or bundled scenario name")
      ->required();
  run->add_option("--assert", assert_check, "fail (exit 1) unless the check passes")
      ->check(CLI::IsMember({"ordering", "entropy-pass"}));
  run->add_option("--out", out_dir, "output directory (overrides config)");

  CLI::App* list = app.add_subcommand("list", "list built-in models and scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    std::cout << hjlab::list_builtins();
    return 0;
  }

  std::string text = hjlab::builtin_scenario_json(target);
  if (text.empty()) {
    std::ifstream in(target);
    if (!in) {
      std::cerr << "error: no bundled scenario or readable file named '" << target
                << "'\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  hjlab::ScenarioConfig config;
  try {
    config = hjlab::parse_scenario(text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  hjlab::RunOptions opts;
  opts.assert_ordering = assert_check == "ordering";
  opts.assert_entropy_pass = assert_check == "entropy-pass";
  opts.out_dir = out_dir;

  std::string diagnostics;
  int code = hjlab::run_scenario(config, opts, diagnostics);
  if (!diagnostics.empty()) std::cerr << diagnostics << "\n";
  if (code == 0) std::cout << config.name << ": ok\n";
  return code;
}
