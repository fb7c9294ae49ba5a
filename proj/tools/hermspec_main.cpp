#include <CLI11.hpp>
#include <iostream>

#include "hermspec/config.hpp"

namespace {

hermspec::RunConfig build_config(const std::string& config_path, const std::string& scenario,
                                 const std::string& out_dir, int threads,
                                 const std::vector<std::string>& overrides) {
  hermspec::RunConfig config;
  if (!config_path.empty())
    config = hermspec::load_config(config_path);
  else
    config = hermspec::default_config(scenario.empty() ? "bkw" : scenario);
  if (!scenario.empty() && config_path.empty()) config.scenario = scenario;
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (threads > 0) config.threads = threads;
  for (const std::string& o : overrides) hermspec::apply_override(config, o);
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive Fourier-Hermite solver for the Boltzmann equation"};
  app.require_subcommand(1);

  std::string config_path, scenario, out_dir;
  int threads = 0;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--scenario", scenario, "scenario name (when no config file is given)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--threads", threads, "worker thread count");
    cmd->add_option("--override", overrides, "dot-path override key=value (repeatable)");
  };

  CLI::App* precompute = app.add_subcommand("precompute", "assemble or verify the tensor cache");
  add_common(precompute);
  CLI::App* run = app.add_subcommand("run", "execute a configured run");
  add_common(run);

  CLI::App* compare = app.add_subcommand("compare", "compare two report CSVs on a shared time grid");
  std::string report_a, report_b;
  compare->add_option("report_a", report_a, "first report.csv")->required();
  compare->add_option("report_b", report_b, "second report.csv")->required();

  CLI::App* defaults = app.add_subcommand("print-defaults", "print the default configuration");
  std::string defaults_scenario;
  defaults->add_option("--scenario", defaults_scenario, "scenario name (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (precompute->parsed()) {
      hermspec::cmd_precompute(build_config(config_path, scenario, out_dir, threads, overrides),
                               std::cout);
    } else if (run->parsed()) {
      hermspec::cmd_run(build_config(config_path, scenario, out_dir, threads, overrides), std::cout);
    } else if (compare->parsed()) {
      hermspec::cmd_compare(report_a, report_b, std::cout);
    } else if (defaults->parsed()) {
      if (!defaults_scenario.empty()) {
        std::cout << hermspec::serialize_config(hermspec::default_config(defaults_scenario)) << '\n';
      } else {
        for (const std::string& name : hermspec::scenario_names()) {
          std::cout << "// " << name << '\n'
                    << hermspec::serialize_config(hermspec::default_config(name)) << '\n';
        }
      }
    }
  } catch (const hermspec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const hermspec::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const hermspec::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
