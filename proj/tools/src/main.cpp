#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "boprop/cli/config.hpp"
#include "boprop/cli/runner.hpp"
#include "boprop/errors.hpp"
#include "boprop/version.hpp"

namespace cli = boprop::cli;

int main(int argc, char** argv) {
  CLI::App app{"Benjamin-Ono pseudospectral simulator and diagnostics"};
  app.set_version_flag("--version", boprop::version);
  app.require_subcommand(1);

  std::string config = "preset:theorem1-forward";
  std::string out = "boprop-out";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  bool list_presets = false;

  using Command = int (*)(const cli::RunConfig&, const cli::CommandOptions&);
  const std::map<std::string, std::pair<Command, std::string>> commands = {
      {"simulate", {cli::cmd_simulate, "Run one simulation with windowed diagnostics"}},
      {"sweep", {cli::cmd_sweep, "Run the parameter lattice in the config"}},
      {"verify-cutoff", {cli::cmd_verify_cutoff, "Certify the cut-off families listed in the config"}},
      {"verify-inequalities", {cli::cmd_verify_inequalities, "Run the seeded inequality suite"}},
      {"convergence", {cli::cmd_convergence, "Time-step and resolution convergence ladders"}},
  };
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, cmd.second);
    sub->add_option("--config,-c", config, "Config file, or preset:NAME")->capture_default_str();
    sub->add_option("--out,-o", out, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_flag("--quiet,-q", quiet, "Suppress progress output");
  }
  auto* presets = app.add_subcommand("presets", "List bundled presets, or print one with --config preset:NAME");
  presets->add_option("--config,-c", config);
  presets->add_flag("--list", list_presets);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (presets->parsed()) {
      if (presets->count("--config") && config.rfind("preset:", 0) == 0) {
        std::cout << cli::preset_text(config.substr(7));
      } else {
        for (const auto& n : cli::preset_names()) std::cout << n << '\n';
      }
      return cli::kExitOk;
    }
    auto rc = cli::load_config(config);
    if (seed) {
      rc.seed = *seed;
      rc.inequalities.seed = *seed;
    }
    const cli::CommandOptions opts{out, quiet};
    for (const auto& [name, cmd] : commands)
      if (app.got_subcommand(name)) return cmd.first(rc, opts);
    return cli::kExitUsage;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const boprop::ContractError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const boprop::BlowUpError& e) {
    std::cerr << "blow-up at t = " << e.time() << ": " << e.what() << '\n';
    return cli::kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInternal;
  }
}
