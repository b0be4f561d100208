// phase-lab: batch front door for the toolkit. Scenario configs in, JSON/CSV
// reports out. Exit codes: 0 success (scientific verdicts are data, not
// errors), 2 config/schema errors, 3 numerical precondition failures.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "phaselab/errors.hpp"
#include "phaselab/json_io.hpp"
#include "phaselab/scenario.hpp"
#include "phaselab/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw phaselab::ConfigError("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw phaselab::ConfigError("cannot open output file: " + out_path);
  }
  out << text;
}

phaselab::OutputFormat resolve_format(const std::string& flag,
                                      phaselab::OutputFormat from_config) {
  if (flag.empty()) return from_config;
  if (flag == "json") return phaselab::OutputFormat::Json;
  if (flag == "csv") return phaselab::OutputFormat::Csv;
  throw phaselab::ConfigError("--format: expected json or csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-lab: phases, transport and cloning audits for evolving "
               "pure quantum states"};
  app.set_version_flag("--version", PHASE_LAB_VERSION);
  app.require_subcommand(1);

  std::string config_path, out_path, format_flag, spec_path;
  int count = 1;
  std::int64_t seed_override = -1;

  CLI::App* cmd_run = app.add_subcommand("run", "evaluate one scenario config");
  cmd_run->add_option("--config", config_path, "scenario config file")->required();
  cmd_run->add_option("--out", out_path, "report file (default: stdout)");
  cmd_run->add_option("--format", format_flag, "json or csv");

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "evaluate seeded random instances");
  cmd_sweep->add_option("--config", config_path, "scenario config file")->required();
  cmd_sweep->add_option("--count", count, "number of instances")->required();
  cmd_sweep->add_option("--seed", seed_override, "override the config seed");
  cmd_sweep->add_option("--out", out_path, "report file (default: stdout)");
  cmd_sweep->add_option("--format", format_flag, "json or csv");

  CLI::App* cmd_audit = app.add_subcommand(
      "audit-cloning", "audit a cloning spec file for unitary feasibility");
  cmd_audit->add_option("--spec", spec_path, "cloning spec file")->required();
  cmd_audit->add_option("--out", out_path, "report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_audit->parsed()) {
      phaselab::CloningSpec spec =
          phaselab::decode_cloning_spec(read_file(spec_path));
      write_output(
          phaselab::encode_cloning_report(phaselab::clonability_check(spec)),
          out_path);
      return 0;
    }

    phaselab::ScenarioConfig config =
        phaselab::ScenarioConfig::parse(read_file(config_path));
    if (cmd_sweep->parsed() && seed_override >= 0) {
      config.seed = static_cast<std::uint64_t>(seed_override);
    }
    phaselab::OutputFormat format =
        resolve_format(format_flag, config.output_format);
    phaselab::RunReport report = cmd_sweep->parsed()
                                     ? phaselab::sweep(config, count)
                                     : phaselab::run(config);
    write_output(report.text(format), out_path);
    return 0;
  } catch (const phaselab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const phaselab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
