#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nanoantenna/collective.hpp"
#include "nanoantenna/liouvillian.hpp"

namespace nanoantenna::verify {

inline constexpr std::uint64_t kDefaultSeed = 20241015;

struct ParameterPoint {
  collective::PairGeometry geometry;
  collective::DriveParams drive;
};

/// r12 in [0.1, 2] wavelengths, |Omega_i| <= gamma, phi_d in [-pi/2, pi/2],
/// detuning in [-2, 2] gamma, random global phase. Deterministic in the seed.
std::vector<ParameterPoint> random_points(std::size_t count, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;  ///< 10 random points instead of 50
  std::uint64_t seed = kDefaultSeed;
  liouvillian::GeneratorOptions generator{};
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::size_t points = 0;
  std::uint64_t seed = 0;

  bool all_passed() const;
};

VerificationReport run_verification(const VerifyOptions& options = {});

}  // namespace nanoantenna::verify
