#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "nanoantenna/liouvillian.hpp"
#include "nanoantenna/pattern.hpp"

namespace nanoantenna::cli {

/// Printed with 17 significant digits.
std::string format_number(double v);

/// Header `theta_rad,intensity`, one row per sample, '\n' line endings.
std::string pattern_csv(const pattern::RadiationPattern& pat);

nlohmann::json directivity_json(const pattern::DirectivityReport& report);
nlohmann::json state_json(const liouvillian::CollectiveState& state);

/// Polar plot normalized to unit maximum with the interatomic axis horizontal,
/// emitter 1 on the left and emitter 2 on the right.
std::string pattern_svg(const pattern::RadiationPattern& pat, const std::string& title);

/// Lowercase [a-z0-9_-] version of a label for use in file names.
std::string file_stem(const std::string& scenario, const std::string& label);

/// Creates missing parent directories; IoError on any failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace nanoantenna::cli
