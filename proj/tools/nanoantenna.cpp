// nanoantenna: radiation patterns of two laser-driven emitters.
//
//   nanoantenna pattern  <scenario.json> [--out-dir DIR] [--format csv|json|svg|all]
//   nanoantenna sweep    <scenario.json> [--out-dir DIR] [--format ...]
//   nanoantenna beam-map <scenario.json> [--out-dir DIR] [--format ...]
//   nanoantenna verify   [--quick] [--seed N]

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "nanoantenna/cli/commands.hpp"
#include "nanoantenna/errors.hpp"

namespace cli = nanoantenna::cli;

int main(int argc, char** argv) {
  CLI::App app{"Far-field radiation patterns of two laser-driven two-level emitters"};
  app.set_version_flag("--version", std::string(NANOANTENNA_VERSION));
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::string format;

  const auto add_io = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
    sub->add_option("--format", format, "csv, json, svg or all (comma separated)");
  };
  auto* pattern = app.add_subcommand("pattern", "Steady-state radiation pattern per case");
  add_io(pattern);
  auto* sweep = app.add_subcommand("sweep", "Directivity over a parameter grid");
  add_io(sweep);
  auto* beam_map = app.add_subcommand("beam-map", "Transverse Rabi-frequency map of a beam");
  add_io(beam_map);

  bool quick = false;
  std::uint64_t seed = nanoantenna::verify::kDefaultSeed;
  long fault = -1;
  auto* verify = app.add_subcommand("verify", "Cross-check solvers against independent references");
  verify->add_flag("--quick", quick, "10 random points instead of 50");
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_option("--inject-fault", fault, "Corrupt one coefficient-table term")
      ->group("");  // hidden: test fixture

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kValidation;
  }

  try {
    if (verify->parsed()) {
      nanoantenna::verify::VerifyOptions opt;
      opt.quick = quick;
      opt.seed = seed;
      if (fault >= 0)
        opt.generator.fault = nanoantenna::liouvillian::CoefficientFault{
            static_cast<std::size_t>(fault), {-1.0, 0.0}};
      return cli::run_verify(opt, std::cout);
    }

    cli::RunOptions opt;
    opt.out_dir = out_dir;
    if (!format.empty()) opt.formats = cli::parse_formats(format);
    const auto scenario = cli::load_scenario(scenario_path);
    std::vector<std::filesystem::path> files;
    if (pattern->parsed())
      files = cli::run_pattern(scenario, opt, std::cout);
    else if (sweep->parsed())
      files = cli::run_sweep(scenario, opt, std::cout);
    else
      files = cli::run_beam_map(scenario, opt, std::cout);
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    return cli::kOk;
  } catch (const nanoantenna::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kValidation;
  } catch (const nanoantenna::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return cli::kSolver;
  } catch (const nanoantenna::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return cli::kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return cli::kIo;
  }
}
