// wavep: steady-wave solve / verify / field / sweep front end.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wavepressure/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Steady periodic water waves: spectral solve and pressure-extrema verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  for (const char* name : {"solve", "verify", "field", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "key = value configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : wavepressure::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::optional<std::filesystem::path> out;
  if (!out_dir.empty()) out = out_dir;
  return wavepressure::run_command(command, config_path, out, std::cout, std::cerr);
}
