#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "monephase/config.hpp"
#include "monephase/error.hpp"
#include "monephase/pipeline.hpp"

namespace mp = monephase;

int main(int argc, char** argv) {
  CLI::App app{"Monetary phase-transition pipeline"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::string monetary;
  std::string cpi;
  std::vector<std::string> overrides;

  for (const auto& name : mp::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--monetary", monetary, "monetary CSV (date,MB,BN,CO,RB,MB_SA)");
    sub->add_option("--cpi", cpi, "CPI CSV (date,CPI,CPI_core)");
    sub->add_option("--set", overrides, "override a config key, key=value")->take_all();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    std::optional<std::filesystem::path> path;
    if (!config_path.empty()) path = config_path;
    if (!monetary.empty()) overrides.push_back("data.monetary=" + monetary);
    if (!cpi.empty()) overrides.push_back("data.cpi=" + cpi);
    if (!out_dir.empty()) overrides.push_back("out=" + out_dir);
    const auto cfg = mp::load_config(path, overrides);

    const auto result = mp::run_command(command, cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& m : result.messages) std::cout << m << '\n';
    for (const auto& f : result.written) std::cout << "wrote " << f.string() << '\n';
    return result.exit_code;
  } catch (const mp::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
