#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nanoantenna/beam.hpp"
#include "nanoantenna/collective.hpp"
#include "nanoantenna/liouvillian.hpp"
#include "nanoantenna/pattern.hpp"

namespace nanoantenna::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class DriveKind { explicit_pair, pairwise, beam };

/// Where the two Rabi frequencies come from. Beam drives place emitter 1 at
/// (0, -r12/2) and emitter 2 at (0, +r12/2) in the transverse plane.
struct DriveConfig {
  DriveKind kind = DriveKind::pairwise;
  beam::ComplexRabi omega1{};
  beam::ComplexRabi omega2{};
  double omega0 = 0.0;
  double omega_d = 0.0;
  double phi_d = 0.0;  ///< radians
  beam::BeamSpec beam{};
  double detuning = 0.0;

  collective::DriveParams resolve(const collective::PairGeometry& geometry) const;
};

struct SolverConfig {
  int n_theta = pattern::kDefaultThetaSamples;
  liouvillian::EquationForm form = liouvillian::EquationForm::derived;
};

/// One fully resolved pattern computation.
struct Case {
  std::string label;
  collective::PairGeometry geometry;
  DriveConfig drive;
  SolverConfig solver;
  pattern::DirectivityOptions directivity;
};

struct SweepAxis {
  std::string name;  ///< phi_d_over_pi | r12 | omega_d | detuning
  double from = 0.0;
  double to = 0.0;
  int steps = 1;

  double value(int i) const;
};

/// Applies a sweep value to a case. Throws ValidationError when the drive
/// kind cannot carry the parameter.
void apply_sweep_value(Case& c, const std::string& axis, double value);

enum class MapKind { radial, azimuthal, grid };

struct BeamMapConfig {
  beam::BeamSpec beam;
  MapKind kind = MapKind::radial;
  double r_max_w0 = 3.0;       ///< radial cut length
  double phi = 0.0;            ///< radial cut direction, radians
  double radius_w0 = 1.0;      ///< azimuthal circle radius
  double half_width_w0 = 3.0;  ///< grid half width
  int samples = 2001;
  double z = 0.0;
  bool ferris = false;
  double delta_omega = 0.0;
  double t = 0.0;
};

enum class Format { csv, json, svg };

struct Scenario {
  std::string name;
  std::vector<Case> cases;
  std::vector<SweepAxis> sweep;
  std::optional<BeamMapConfig> beam_map;
  std::vector<Format> formats;  ///< empty = command default
};

/// Parses a scenario document. Unknown keys and wrong types are ValidationErrors
/// naming the offending field.
Scenario parse_scenario(const json& doc, const std::string& fallback_name = "scenario");

/// Reads and parses a file; IoError if unreadable, ValidationError if malformed.
Scenario load_scenario(const std::filesystem::path& path);

/// Re-runnable single-case scenario document with every default filled in.
json case_to_json(const std::string& scenario_name, const Case& c);

std::vector<Format> parse_formats(const std::string& spec);
std::string_view name(Format f);

}  // namespace nanoantenna::cli
