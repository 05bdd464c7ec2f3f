// hu-shadow: analyze | shadow | instability | reproduce a scenario file.
//
// Exit codes: 0 pass, 1 failed check or violated hypothesis, 2 usage or
// configuration error. Output directory: --out, then $HU_SHADOW_OUT, then
// output.directory in the scenario.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hu_shadow/runner.hpp"

namespace rn = hu_shadow::runner;

int main(int argc, char** argv) {
  CLI::App app{"Shadowing and Hyers-Ulam stability experiments for nonautonomous maps"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::size_t> horizon;
  std::optional<double> epsilon;
  std::optional<std::string> out;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config, "scenario JSON file");
    if (config_required) opt->required();
    sub->add_option("--horizon", horizon, "override the scenario horizon");
    sub->add_option("--epsilon", epsilon, "override the scenario epsilon");
    sub->add_option("--out", out, "output directory");
  };
  auto* analyze = app.add_subcommand("analyze", "growth profile and classification");
  auto* shadow = app.add_subcommand("shadow", "construct a shadowing orbit and check its bound");
  auto* instability = app.add_subcommand("instability", "divergence witness for periodic rates");
  auto* reproduce = app.add_subcommand("reproduce", "run the built-in reproduction checks");
  add_common(analyze, true);
  add_common(shadow, true);
  add_common(instability, true);
  add_common(reproduce, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rn::kExitUsage;
  }

  rn::Command cmd = rn::Command::Analyze;
  if (*shadow) cmd = rn::Command::Shadow;
  if (*instability) cmd = rn::Command::Instability;
  if (*reproduce) cmd = rn::Command::Reproduce;

  try {
    rn::Scenario s;
    if (!config.empty()) s = rn::load_scenario(config);
    if (horizon) {
      if (cmd == rn::Command::Analyze) {
        if (*horizon < 4 * s.analysis.window)
          throw hu_shadow::ConfigError("--horizon: must be at least 4 * analysis.window");
        s.analysis.horizon = *horizon;
      } else {
        if (*horizon < 2) throw hu_shadow::ConfigError("--horizon: must be >= 2");
        s.horizon = *horizon;
      }
    }
    if (epsilon) {
      if (!(*epsilon >= 0.0)) throw hu_shadow::ConfigError("--epsilon: must be nonnegative");
      s.epsilon = *epsilon;
    }
    if (out) {
      s.output.directory = *out;
    } else if (const char* env = std::getenv("HU_SHADOW_OUT"); env && *env) {
      s.output.directory = env;
    }
    return rn::run(s, cmd, std::cout);
  } catch (const hu_shadow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return rn::kExitUsage;
  } catch (const hu_shadow::HypothesisError& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return rn::kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rn::kExitFailure;
  }
}
