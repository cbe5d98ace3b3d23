#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nanoantenna/cli/commands.hpp"
#include "nanoantenna/errors.hpp"

using namespace nanoantenna;
using namespace nanoantenna::cli;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

/// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("nanoantenna_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string& header) {
  std::ifstream in(p);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

json pairwise_doc(double r12, double phi_d_over_pi, double omega0 = 0.2) {
  return {{"schema", 1},
          {"name", "t"},
          {"geometry", {{"r12", r12}}},
          {"drive", {{"kind", "pairwise"}, {"omega0", omega0}, {"phi_d_over_pi", phi_d_over_pi}}}};
}

std::string validation_message(const json& doc) {
  try {
    (void)parse_scenario(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string("\"") + NANOANTENNA_TOOL + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path figure(const std::string& name) { return fs::path(NANOANTENNA_FIGURES) / name; }
fs::path scenario_file(const std::string& name) {
  return fs::path(NANOANTENNA_SCENARIOS) / name;
}

}  // namespace

TEST_CASE("scenario parsing rejects malformed documents") {
  SUBCASE("missing schema") {
    auto doc = pairwise_doc(0.25, 0.0);
    doc.erase("schema");
    CHECK(validation_message(doc).find("schema") != std::string::npos);
  }
  SUBCASE("wrong schema version") {
    auto doc = pairwise_doc(0.25, 0.0);
    doc["schema"] = 2;
    CHECK(validation_message(doc).find("schema") != std::string::npos);
  }
  SUBCASE("unknown key is named") {
    auto doc = pairwise_doc(0.25, 0.0);
    doc["geometry"]["r21"] = 0.3;
    CHECK(validation_message(doc).find("r21") != std::string::npos);
  }
  SUBCASE("wrong type") {
    auto doc = pairwise_doc(0.25, 0.0);
    doc["geometry"]["r12"] = "quarter";
    CHECK(validation_message(doc).find("r12") != std::string::npos);
  }
  SUBCASE("pairwise drive needs omega0") {
    auto doc = pairwise_doc(0.25, 0.0);
    doc["drive"].erase("omega0");
    CHECK(validation_message(doc).find("omega0") != std::string::npos);
  }
  SUBCASE("duplicate case labels") {
    auto doc = pairwise_doc(0.25, 0.0);
    doc["cases"] = json::array({{{"label", "a"}}, {{"label", "a"}}});
    CHECK_FALSE(validation_message(doc).empty());
  }
  SUBCASE("non-positive separation") {
    CHECK_FALSE(validation_message(pairwise_doc(0.0, 0.0)).empty());
  }
  SUBCASE("unknown sweep parameter") {
    auto doc = pairwise_doc(0.25, 0.0);
    doc["sweep"] = {{"parameters", json::array({{{"name", "mu"}, {"from", 0}, {"to", 1}, {"steps", 3}}})}};
    CHECK(validation_message(doc).find("mu") != std::string::npos);
  }
}

TEST_CASE("scenario loading distinguishes I/O from validation") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/nowhere.json"), IoError);
  TempDir dir("load");
  std::ofstream(dir.path / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_scenario(dir.path / "bad.json"), ValidationError);
}

TEST_CASE("case overrides merge into the base drive") {
  auto doc = pairwise_doc(0.25, 0.0);
  doc["cases"] = json::array({{{"label", "base"}},
                              {{"label", "tilted"}, {"drive", {{"phi_d_over_pi", 0.25}}}},
                              {{"label", "far"}, {"geometry", {{"r12", 1.0}}}}});
  const auto s = parse_scenario(doc);
  REQUIRE(s.cases.size() == 3);
  CHECK(s.cases[0].drive.phi_d == 0.0);
  CHECK(s.cases[1].drive.phi_d == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(s.cases[1].drive.omega0 == 0.2);
  CHECK(s.cases[2].geometry.r12 == 1.0);
  CHECK(s.cases[2].drive.omega0 == 0.2);
}

TEST_CASE("pattern command writes the expected files") {
  TempDir dir("pattern");
  auto doc = pairwise_doc(0.25, 0.25);
  doc["solver"] = {{"n_theta", 720}};
  RunOptions opt;
  opt.out_dir = dir.path;
  opt.formats = {Format::csv, Format::json, Format::svg};
  std::ostringstream log;
  const auto written = run_pattern(parse_scenario(doc), opt, log);
  REQUIRE(written.size() == 3);
  for (const auto& p : written) CHECK(fs::exists(p));

  std::string header;
  const auto rows = read_csv(dir.path / "t.csv", header);
  CHECK(header == "theta_rad,intensity");
  REQUIRE(rows.size() == 720);
  CHECK(rows.front()[0] == 0.0);
  CHECK(rows[1][0] == doctest::Approx(2.0 * kPi / 720).epsilon(1e-14));
  for (const auto& r : rows) CHECK(r[1] >= 0.0);

  const auto j = read_json(dir.path / "t.json");
  CHECK(j["pattern"]["n_theta"] == 720);
  // Emission favours the cos(theta) < 0 half at phi_d = +pi/4.
  CHECK(j["directivity"]["asymmetry"].get<double>() < -0.1);
  CHECK(slurp(dir.path / "t.svg").find("<svg") != std::string::npos);
}

TEST_CASE("embedded scenario reproduces the run") {
  TempDir dir("rerun");
  RunOptions opt;
  opt.out_dir = dir.path;
  opt.formats = {Format::json};
  std::ostringstream log;
  run_pattern(parse_scenario(pairwise_doc(0.5, 0.25)), opt, log);
  const auto first = read_json(dir.path / "t.json");

  TempDir again("rerun2");
  opt.out_dir = again.path;
  run_pattern(parse_scenario(first["scenario"]), opt, log);
  const auto second = read_json(again.path / "t.json");
  CHECK(first["directivity"] == second["directivity"]);
  CHECK(first["steady_state"] == second["steady_state"]);
}

TEST_CASE("outputs are byte-identical across runs") {
  TempDir a("det_a"), b("det_b");
  const auto s = load_scenario(figure("fig9.json"));
  RunOptions opt;
  opt.formats = {Format::csv, Format::json};
  std::ostringstream log;
  opt.out_dir = a.path;
  const auto first = run_pattern(s, opt, log);
  opt.out_dir = b.path;
  const auto second = run_pattern(s, opt, log);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].filename() == second[i].filename());
    CHECK(slurp(first[i]) == slurp(second[i]));
  }
}

TEST_CASE("an undriven pair gives a dark, isotropic-null pattern") {
  TempDir dir("dark");
  RunOptions opt;
  opt.out_dir = dir.path;
  opt.formats = {Format::csv, Format::json};
  std::ostringstream log;
  run_pattern(load_scenario(scenario_file("empty_drive.json")), opt, log);
  std::string header;
  for (const auto& r : read_csv(dir.path / "empty_drive.csv", header)) CHECK(r[1] == 0.0);
  const auto j = read_json(dir.path / "empty_drive.json");
  CHECK(j["directivity"]["classification"] == "isotropic-null");
  CHECK(j["directivity"]["lobe_count"] == 0);
}

TEST_CASE("sweep output is independent of the worker count") {
  auto doc = pairwise_doc(0.25, 0.0);
  doc["solver"] = {{"n_theta", 360}};
  doc["sweep"] = {{"parameters", json::array({{{"name", "phi_d_over_pi"}, {"from", -0.5}, {"to", 0.5}, {"steps", 7}},
                                              {{"name", "r12"}, {"from", 0.25}, {"to", 1.0}, {"steps", 4}}})}};
  const auto s = parse_scenario(doc);
  std::ostringstream log;
  std::vector<std::string> csv;
  for (unsigned threads : {1u, 3u, 8u}) {
    TempDir dir("sweep_" + std::to_string(threads));
    RunOptions opt;
    opt.out_dir = dir.path;
    opt.threads = threads;
    opt.formats = {Format::csv, Format::json};
    run_sweep(s, opt, log);
    csv.push_back(slurp(dir.path / "t_sweep.csv"));
  }
  CHECK(csv[0] == csv[1]);
  CHECK(csv[0] == csv[2]);

  // Row-major: the first axis varies slowest.
  std::istringstream in(csv[0]);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  for (; std::getline(in, line); ++rows) {
    if (rows == 0) CHECK(line.find(",-0.5,0.25,") != std::string::npos);
    if (rows == 1) CHECK(line.find(",-0.5,0.5,") != std::string::npos);
  }
  CHECK(rows == 28);
}

TEST_CASE("sweep rows agree with single pattern runs") {
  auto doc = pairwise_doc(0.75, 0.25);
  doc["sweep"] = {{"parameters", json::array({{{"name", "phi_d_over_pi"}, {"from", 0.25}, {"to", 0.25}, {"steps", 1}}})}};
  TempDir dir("sweep_one");
  RunOptions opt;
  opt.out_dir = dir.path;
  opt.formats = {Format::json};
  std::ostringstream log;
  run_sweep(parse_scenario(doc), opt, log);
  doc.erase("sweep");
  run_pattern(parse_scenario(doc), opt, log);
  const auto sweep = read_json(dir.path / "t_sweep.json");
  const auto single = read_json(dir.path / "t.json");
  REQUIRE(sweep["rows"].size() == 1);
  CHECK(sweep["rows"][0]["directivity"] == single["directivity"]);
}

TEST_CASE("worker count honours NANOANT_THREADS") {
  ::setenv("NANOANT_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  ::setenv("NANOANT_THREADS", "zero", 1);
  CHECK_THROWS_AS(worker_count(), ValidationError);
  ::unsetenv("NANOANT_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("beam maps resolve the ring structure") {
  std::ostringstream log;
  SUBCASE("p = 20 has 21 radial maxima") {
    TempDir dir("fig2");
    RunOptions opt;
    opt.out_dir = dir.path;
    run_beam_map(load_scenario(figure("fig2.json")), opt, log);
    CHECK(read_json(dir.path / "fig2_beam_radial.json")["summary"]["maxima_count"] == 21);
  }
  SUBCASE("Ferris wheel of l = 15 has 30 petals") {
    TempDir dir("fig3");
    RunOptions opt;
    opt.out_dir = dir.path;
    run_beam_map(load_scenario(figure("fig3.json")), opt, log);
    CHECK(read_json(dir.path / "fig3_beam_azimuthal.json")["summary"]["maxima_count"] == 30);
  }
  SUBCASE("fundamental Gaussian decreases monotonically") {
    TempDir dir("gauss");
    RunOptions opt;
    opt.out_dir = dir.path;
    opt.formats = {Format::csv};
    run_beam_map(load_scenario(scenario_file("gaussian_profile.json")), opt, log);
    std::string header;
    const auto rows = read_csv(dir.path / "gaussian_profile_beam_radial.csv", header);
    REQUIRE(rows.size() > 2);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] < rows[i - 1][1]);
  }
}

TEST_CASE("every shipped scenario parses") {
  for (const char* dir : {NANOANTENNA_FIGURES, NANOANTENNA_SCENARIOS}) {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() != ".json") continue;
      INFO(entry.path().string());
      CHECK_NOTHROW((void)load_scenario(entry.path()));
      ++count;
    }
    CHECK(count > 0);
  }
}

TEST_CASE("tool exit codes") {
  TempDir dir("tool");
  const std::string out = " --out-dir \"" + dir.path.string() + "\"";
  CHECK(run_tool("verify --quick") == kOk);
  CHECK(run_tool("verify --quick --inject-fault 5") == kVerification);
  CHECK(run_tool("pattern /nonexistent/scenario.json" + out) == kIo);

  std::ofstream(dir.path / "invalid.json") << R"({"schema": 1, "geometry": {"r12": -1}})";
  CHECK(run_tool("pattern \"" + (dir.path / "invalid.json").string() + "\"" + out) == kValidation);
  CHECK(run_tool("pattern \"" + figure("fig6.json").string() + "\" --format bogus" + out) ==
        kValidation);
  CHECK(run_tool("frobnicate") == kValidation);

  CHECK(run_tool("pattern \"" + figure("fig6.json").string() + "\" --format csv" + out) == kOk);
  CHECK(fs::exists(dir.path / "fig6_phi0.csv"));
  CHECK_FALSE(fs::exists(dir.path / "fig6_phi0.svg"));
}
