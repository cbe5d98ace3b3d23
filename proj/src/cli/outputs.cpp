#include "nanoantenna/cli/outputs.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>

#include "nanoantenna/errors.hpp"

namespace nanoantenna::cli {

using json = nlohmann::json;

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string pattern_csv(const pattern::RadiationPattern& pat) {
  std::string out = "theta_rad,intensity\n";
  out.reserve(out.size() + pat.thetas.size() * 48);
  for (std::size_t i = 0; i < pat.thetas.size(); ++i)
    out += fmt::format("{:.17g},{:.17g}\n", pat.thetas[i], pat.intensities[i]);
  return out;
}

json directivity_json(const pattern::DirectivityReport& report) {
  json lobes = json::array();
  for (const auto& l : report.lobes)
    lobes.push_back({{"direction_rad", l.direction}, {"peak", l.peak}, {"fwhm_rad", l.fwhm}});
  json j = {{"lobe_count", report.lobe_count()},
            {"lobes", lobes},
            {"asymmetry", report.asymmetry},
            {"classification", std::string(pattern::name(report.classification))}};
  // JSON has no infinity: a single lobe reports null dominance.
  j["dominance"] = std::isfinite(report.dominance) ? json(report.dominance) : json(nullptr);
  return j;
}

json state_json(const liouvillian::CollectiveState& state) {
  json y = json::array();
  for (std::size_t k = 0; k < liouvillian::kStateSize; ++k) {
    const auto e = static_cast<liouvillian::Element>(k);
    y.push_back({{"element", std::string(liouvillian::name(e))},
                 {"re", state.y[k].real()},
                 {"im", state.y[k].imag()}});
  }
  return {{"y", y}, {"rho_gg", state.rho_gg()}};
}

std::string pattern_svg(const pattern::RadiationPattern& pat, const std::string& title) {
  constexpr double size = 420.0;
  constexpr double cx = size / 2.0;
  constexpr double cy = size / 2.0 + 10.0;
  constexpr double radius = 170.0;
  const double peak = pat.max_intensity();

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      size, size + 20.0);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::string escaped;
  for (char ch : title) {
    if (ch == '<') escaped += "&lt;";
    else if (ch == '>') escaped += "&gt;";
    else if (ch == '&') escaped += "&amp;";
    else escaped += ch;
  }
  s += fmt::format("<text x=\"{}\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "font-size=\"14\">{}</text>\n",
                   cx, escaped);
  for (double r : {0.25, 0.5, 0.75, 1.0})
    s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"none\" "
                     "stroke=\"#bbbbbb\" stroke-width=\"0.8\"/>\n",
                     cx, cy, r * radius);
  s += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" "
                   "stroke=\"#888888\" stroke-width=\"0.8\"/>\n",
                   cx - radius, cy, cx + radius, cy);
  s += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" "
                   "stroke=\"#888888\" stroke-width=\"0.8\"/>\n",
                   cx, cy - radius, cx, cy + radius);

  if (peak > 0.0) {
    s += "<polygon fill=\"#1f77b4\" fill-opacity=\"0.25\" stroke=\"#1f77b4\" "
         "stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pat.thetas.size(); ++i) {
      const double r = radius * pat.intensities[i] / peak;
      s += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", cx + r * std::cos(pat.thetas[i]),
                       cy - r * std::sin(pat.thetas[i]));
    }
    s += "\"/>\n";
  }

  // Emitters sit on the horizontal axis: 1 at -r12/2, 2 at +r12/2.
  constexpr double marker = 14.0;
  for (int k = 0; k < 2; ++k) {
    const double x = cx + (k == 0 ? -marker : marker);
    s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"4\" fill=\"#d62728\"/>\n", x, cy);
    s += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\" "
                     "font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                     x, cy + 16.0, k + 1);
  }
  s += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-family=\"sans-serif\" "
                   "font-size=\"11\">theta = 0</text>\n",
                   cx + radius - 40.0, cy - 6.0);
  s += "</svg>\n";
  return s;
}

std::string file_stem(const std::string& scenario, const std::string& label) {
  std::string raw = label.empty() ? scenario : scenario + "_" + label;
  std::string out;
  for (unsigned char ch : raw) {
    if (std::isalnum(ch))
      out += static_cast<char>(std::tolower(ch));
    else if (ch == '-' || ch == '_')
      out += static_cast<char>(ch);
    else if (ch == '.')
      out += 'p';
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "output" : out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
      throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                    ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace nanoantenna::cli
