// hardyliou <command> --config cfg.json [--out dir]

#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"
#include "hardyliou/error.hpp"

int main(int argc, char** argv) {
  using namespace hardyliou;
  CLI::App app{"Liouville operators on the Hardy space: experiments and certificates"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  for (const std::string& name : cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "report directory (default: config output or .)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalidConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const cli::ExperimentConfig cfg = cli::load_config(config_path);
    const std::filesystem::path dir =
        !out_dir.empty() ? std::filesystem::path(out_dir) : cfg.output.value_or(".");
    return cli::run_command(command, cfg, dir, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "hardyliou " << command << ": " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
}
