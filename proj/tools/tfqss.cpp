// Command-line front end: `tfqss scan|simulate|attack [--config FILE] [--key value ...]`.
// Settings precedence: command line > config file > built-in defaults.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tfqss/commands.hpp"
#include "tfqss/config.hpp"

namespace {

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_settings(CLI::App* cmd, Invocation& inv) {
  cmd->add_option("--config", inv.config_path, "key = value settings file");
  for (std::string_view key : tfqss::kConfigKeys) {
    const std::string name(key);
    cmd->add_option_function<std::string>(
        "--" + name, [&inv, name](const std::string& v) { inv.overrides[name] = v; },
        "override '" + name + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twin-field differential-phase-shift quantum secret sharing analyzer"};
  app.require_subcommand(1);

  Invocation inv;
  CLI::App* scan = app.add_subcommand("scan", "optimized key rate vs distance (CSV)");
  CLI::App* sim = app.add_subcommand("simulate", "event-level Monte Carlo of the protocol");
  CLI::App* attack = app.add_subcommand("attack", "information leakage table (CSV)");
  for (CLI::App* cmd : {scan, sim, attack}) add_settings(cmd, inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? tfqss::kExitOk : tfqss::kExitUsage;
  }

  try {
    tfqss::Config config = tfqss::default_config();
    if (!inv.config_path.empty()) tfqss::apply_config_file(config, inv.config_path);
    for (const auto& [key, value] : inv.overrides) tfqss::set_config_value(config, key, value);

    if (scan->parsed()) return tfqss::cmd_scan(config, std::cout);
    if (sim->parsed()) return tfqss::cmd_simulate(config, std::cout);
    return tfqss::cmd_attack(config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tfqss::kExitUsage;
  }
}
