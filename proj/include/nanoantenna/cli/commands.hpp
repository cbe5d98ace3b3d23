#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nanoantenna/cli/scenario.hpp"
#include "nanoantenna/verify.hpp"

namespace nanoantenna::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kSolver = 2,
  kIo = 3,
  kVerification = 4,
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::vector<Format> formats;  ///< empty = scenario choice, else the command default
  unsigned threads = 0;         ///< 0 = worker_count()
};

/// NANOANT_THREADS if set (must be a positive integer), else available parallelism.
unsigned worker_count();

struct CaseResult {
  Case config;
  collective::DriveParams drive;
  collective::CollectiveCoupling coupling;
  liouvillian::CollectiveState state;
  pattern::RadiationPattern pattern;
  pattern::DirectivityReport report;
};

CaseResult evaluate_case(const Case& c);

/// Each command returns the files it wrote, in write order.
std::vector<std::filesystem::path> run_pattern(const Scenario& s, const RunOptions& opt,
                                               std::ostream& log);
std::vector<std::filesystem::path> run_sweep(const Scenario& s, const RunOptions& opt,
                                             std::ostream& log);
std::vector<std::filesystem::path> run_beam_map(const Scenario& s, const RunOptions& opt,
                                                std::ostream& log);

/// Prints one line per check; returns kOk or kVerification.
int run_verify(const verify::VerifyOptions& opt, std::ostream& log);

}  // namespace nanoantenna::cli
