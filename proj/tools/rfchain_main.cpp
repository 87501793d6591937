// Command-line front end: loads the shared configuration, dispatches the
// named scenarios and emits CSV data into the output directory.
//
// Exit codes: 0 success, 1 configuration/validation error, 2 simulation
// error, 3 acceptance failure, 64 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rfchain/acceptance.hpp"
#include "rfchain/config.hpp"
#include "rfchain/csv.hpp"
#include "rfchain/scenarios.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_simulation = 2;
constexpr int exit_acceptance = 3;
constexpr int exit_usage = 64;

struct Override {
  std::string key;
  std::string value;
};

// Dotted config overrides (--section.key value) are peeled off before CLI11
// sees the argument list.
std::vector<char*> extract_overrides(int argc, char** argv, std::vector<Override>& overrides) {
  std::vector<char*> rest;
  rest.push_back(argv[0]);
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.size() > 2 && arg.rfind("--", 0) == 0 && arg.find('.') != std::string::npos) {
      const auto eq = arg.find('=');
      if (eq != std::string::npos) {
        overrides.push_back({arg.substr(2, eq - 2), arg.substr(eq + 1)});
      } else if (i + 1 < argc) {
        overrides.push_back({arg.substr(2), argv[++i]});
      } else {
        std::cerr << "override " << arg << " needs a value\n";
        std::exit(exit_usage);
      }
      continue;
    }
    rest.push_back(argv[i]);
  }
  return rest;
}

void write_outputs(const rfchain::scenarios::ScenarioOutput& out, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, table] : out.tables) {
    rfchain::csv::emit_csv(table, (std::filesystem::path(dir) / name).string());
  }
  std::cout << out.summary << "\n";
  for (const auto& [name, table] : out.tables) {
    std::cout << "  wrote " << (std::filesystem::path(dir) / name).string() << " ("
              << table.rows.size() << " rows)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Override> overrides;
  std::vector<char*> args = extract_overrides(argc, argv, overrides);

  CLI::App app{"wireless sensor node energy/data chain simulation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir_flag;
  std::string mask_path;
  unsigned long long seed_flag = 0;
  bool have_seed = false;

  app.add_option("-c,--config", config_path, "configuration file (INI-style sections)");
  app.add_option("-o,--out", out_dir_flag, "output directory (overrides config and RFCHAIN_OUT)");
  app.add_option("--seed", seed_flag, "random seed for property sampling")
      ->each([&](const std::string&) { have_seed = true; });

  auto* harvest = app.add_subcommand("harvest-sweep", "rectifier PCE / output voltage grid");
  auto* dcdceff = app.add_subcommand("dcdc-eff", "converter efficiency reference and model");
  auto* mpptrun = app.add_subcommand("mppt-run", "closed-loop tracking trajectory");
  auto* lnasweep = app.add_subcommand("lna-sweep", "noise-figure interface sweep");
  auto* uwbpulse = app.add_subcommand("uwb-pulse", "pulse synthesis, PSD and mask verdict");
  uwbpulse->add_option("--mask", mask_path, "mask file (frequency_hz,limit_dbm rows)");
  auto* linkpsd = app.add_subcommand("link-psd", "received PSD over the geometry grid");
  auto* lcadcenc = app.add_subcommand("lcadc-encode", "level-crossing event and pulse streams");
  auto* selftest = app.add_subcommand("selftest", "run the full acceptance suite");

  // global options may appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  rfchain::config::ScenarioConfig sc;
  try {
    rfchain::config::Config raw;
    if (!config_path.empty()) raw = rfchain::config::Config::parse_file(config_path);
    for (const auto& ov : overrides) raw.set(ov.key, ov.value);
    sc = rfchain::config::load_scenario(raw);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }
  if (!mask_path.empty()) sc.uwb_mask_file = mask_path;
  if (have_seed) sc.seed = seed_flag;

  std::string out_dir = sc.output_dir;
  if (const char* env = std::getenv("RFCHAIN_OUT"); env != nullptr && *env != '\0') out_dir = env;
  if (!out_dir_flag.empty()) out_dir = out_dir_flag;

  try {
    if (*harvest) {
      write_outputs(rfchain::scenarios::run_harvest_sweep(sc), out_dir);
    } else if (*dcdceff) {
      write_outputs(rfchain::scenarios::run_dcdc_eff(sc), out_dir);
    } else if (*mpptrun) {
      write_outputs(rfchain::scenarios::run_mppt(sc), out_dir);
    } else if (*lnasweep) {
      write_outputs(rfchain::scenarios::run_lna_sweep(sc), out_dir);
    } else if (*uwbpulse) {
      const auto out = rfchain::scenarios::run_uwb_pulse(sc);
      write_outputs(out, out_dir);
    } else if (*linkpsd) {
      write_outputs(rfchain::scenarios::run_link_psd(sc), out_dir);
    } else if (*lcadcenc) {
      write_outputs(rfchain::scenarios::run_lcadc_encode(sc), out_dir);
    } else if (*selftest) {
      const auto results = rfchain::acceptance::run_acceptance(sc, sc.seed);
      for (const auto& r : results) {
        std::printf("[%s] %2d %-45s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
      }
      if (!rfchain::acceptance::all_passed(results)) return exit_acceptance;
    }
  } catch (const rfchain::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return exit_simulation;
  }
  return exit_ok;
}
