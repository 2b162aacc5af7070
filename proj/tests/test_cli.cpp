#include <cstdio>
#include <stdexcept>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "doctest.h"

using namespace smallsphere;
using cli::InputDocument;
using cli::Options;

namespace {

const char* kElectricDoc = R"({
  "weyl_em": {
    "D": [[2, 0, 0], [0, -1, 0], [0, 0, -1]],
    "E": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
  }
})";

const char* kNullDoc = R"({
  "weyl_em": {
    "D": [[0, 0, 0], [0, 1, 0], [0, 0, -1]],
    "E": [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
  }
})";

std::string write_temp(const std::string& text, const char* name) {
  std::string path = std::string("/tmp/smallsphere_test_") + name + ".json";
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("parse_input_text: weyl_em document") {
  const InputDocument doc = cli::parse_input_text(kElectricDoc);
  CHECK(doc.source == InputDocument::Source::WeylEM);
  CHECK(doc.curvature.is_vacuum);
  CHECK(doc.curvature(0, 1, 0, 1) == 2.0);
  CHECK(doc.grid_degree == 12);
  CHECK(doc.digest == cli::fnv1a_hex(kElectricDoc));
}

TEST_CASE("parse_input_text: sparse riemann with symmetry completion") {
  // the Weyl tensor of D = diag(2,-1,-1): spatial block W_ijij = D_ii + D_jj
  const char* text = R"({"riemann": {"R_0101": 2.0, "R_0202": -1.0, "R_0303": -1.0,
                                     "R_1212": 1.0, "R_1313": 1.0, "R_2323": -2.0}})";
  const InputDocument doc = cli::parse_input_text(text);
  CHECK(doc.source == InputDocument::Source::Riemann);
  CHECK(doc.curvature.is_vacuum);
  CHECK(doc.curvature(1, 0, 1, 0) == 2.0);   // completed pair-symmetry image
  CHECK(doc.curvature(0, 1, 1, 0) == -2.0);  // antisymmetry image
}

TEST_CASE("parse_input_text: symmetry-inconsistent duplicate is named") {
  const char* text = R"({"riemann": {"R_0101": 1.0, "R_1001": 1.0}})";
  CHECK_THROWS_WITH_AS(cli::parse_input_text(text), doctest::Contains("R_1001"),
                       std::invalid_argument);
}

TEST_CASE("parse_input_text: conflicting sources") {
  const char* text = R"({"riemann": {"R_0101": 1.0},
                         "weyl_em": {"D": [[0,0,0],[0,0,0],[0,0,0]],
                                     "E": [[0,0,0],[0,0,0],[0,0,0]]}})";
  CHECK_THROWS_WITH_AS(cli::parse_input_text(text), doctest::Contains("exactly one"),
                       std::invalid_argument);
}

TEST_CASE("parse_input_text: malformed syntax reports a line") {
  const char* text = "{\n  \"weyl_em\": {\n";
  CHECK_THROWS_WITH_AS(cli::parse_input_text(text), doctest::Contains("line"),
                       std::runtime_error);
}

TEST_CASE("parse_input_text: non-finite entries rejected") {
  const char* text = R"({"stress": [[1,0,0,0],[0,"x",0,0],[0,0,0,0],[0,0,0,0]]})";
  CHECK_THROWS_AS(cli::parse_input_text(text), std::invalid_argument);
}

TEST_CASE("parse_input_text: dweyl sparse entries and projection report") {
  const char* text = R"({
    "weyl_em": {"D": [[2,0,0],[0,-1,0],[0,0,-1]], "E": [[0,0,0],[0,0,0],[0,0,0]]},
    "dweyl": {"dW_00101": 0.5, "dW_10203": -0.25}
  })";
  const InputDocument doc = cli::parse_input_text(text);
  CHECK(doc.has_dweyl);
  CHECK(doc.dweyl_raw.at(0, 0, 1, 0, 1) == 0.5);
  Options opt;
  opt.command = "decompose";
  const cli::RunResult r = cli::run_command(opt, doc);
  CHECK(r.report["results"]["dweyl_projection_moved"].get<double>() > 0.0);

  CHECK_THROWS_AS(cli::parse_input_text(R"({"weyl_em": {"D": [[0,0,0],[0,0,0],[0,0,0]],
    "E": [[0,0,0],[0,0,0],[0,0,0]]}, "dweyl": {"dW_0101": 1.0}})"),
                  std::invalid_argument);
}

TEST_CASE("options: grid_degree and tolerance_scale") {
  const char* text = R"({
    "weyl_em": {"D": [[2,0,0],[0,-1,0],[0,0,-1]], "E": [[0,0,0],[0,0,0],[0,0,0]]},
    "options": {"grid_degree": 16, "tolerance_scale": 10.0}
  })";
  const InputDocument doc = cli::parse_input_text(text);
  CHECK(doc.grid_degree == 16);
  CHECK(doc.tolerance_scale == 10.0);
  Options opt;
  opt.command = "energy";
  const cli::RunResult r = cli::run_command(opt, doc);
  CHECK(r.report["grid_degree"].get<int>() == 16);
  CHECK(r.report["checks"][0]["tolerance"].get<double>() == doctest::Approx(1e-11));
  CHECK_THROWS_AS(cli::parse_input_text(R"({"stress": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],
    "options": {"grid_degree": 1}})"),
                  std::invalid_argument);
}

TEST_CASE("run_command minimize on the purely electric document") {
  Options opt;
  opt.command = "minimize";
  const cli::RunResult r = cli::run_command(opt, cli::parse_input_text(kElectricDoc));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["status"] == "unique-minimum");
  CHECK(std::abs(r.report["results"]["e5_min"].get<double>() - 0.1) <= 1e-12);
  const auto abar = r.report["results"]["a_bar"];
  for (int i = 0; i < 3; i++) CHECK(std::abs(abar[i].get<double>()) <= 1e-10);
}

TEST_CASE("run_command decompose classifies the null-condition input") {
  Options opt;
  opt.command = "decompose";
  const cli::RunResult r = cli::run_command(opt, cli::parse_input_text(kNullDoc));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["causal_class"] == "null-future");
  CHECK(r.report["results"]["V"][0].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("run_command energy emits both representations and the pieces") {
  Options opt;
  opt.command = "energy";
  opt.observer = Vec3{0.3, -0.2, 0.5};
  const cli::RunResult r = cli::run_command(opt, cli::parse_input_text(kElectricDoc));
  CHECK(r.exit_code == 0);
  const double e5 = r.report["results"]["e5"].get<double>();
  const double e5a = r.report["results"]["e5_from_coefficients"].get<double>();
  const double e5p = r.report["results"]["e5_from_pieces"].get<double>();
  CHECK(std::abs(e5 - e5a) <= 1e-12 * std::abs(e5));
  CHECK(std::abs(e5 - e5p) <= 1e-8 * std::abs(e5));
  for (const auto& c : r.report["checks"]) CHECK(c["pass"].get<bool>());
}

TEST_CASE("run_command nonvacuum on a stress document") {
  Options opt;
  opt.command = "nonvacuum";
  const char* text = R"({"stress": [[2,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]})";
  const cli::RunResult r = cli::run_command(opt, cli::parse_input_text(text));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["dominant_energy_sampled"].get<bool>());
  CHECK(r.report["results"]["limit_energy"].get<double>() ==
        doctest::Approx(4.0 * 3.14159265358979 / 3.0 * 2.0).epsilon(1e-6));
  CHECK(r.report["results"]["min_energy"]["value"].get<double>() > 0.0);
}

TEST_CASE("vacuum-only command on non-vacuum input throws (exit 2 at the driver)") {
  Options opt;
  opt.command = "energy";
  const char* text = R"({"stress": [[2,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]})";
  CHECK_THROWS_WITH_AS(cli::run_command(opt, cli::parse_input_text(text)),
                       doctest::Contains("vacuum"), std::invalid_argument);
}

TEST_CASE("reports are byte-stable for fixed input and seed") {
  Options opt;
  opt.command = "energy";
  opt.observer = Vec3{0.1, 0.2, 0.3};
  const InputDocument doc = cli::parse_input_text(kElectricDoc);
  const std::string r1 = cli::render_report(cli::run_command(opt, doc).report, "json");
  const std::string r2 = cli::render_report(cli::run_command(opt, doc).report, "json");
  CHECK(r1 == r2);
  const std::string c1 = cli::render_report(cli::run_command(opt, doc).report, "csv");
  const std::string c2 = cli::render_report(cli::run_command(opt, doc).report, "csv");
  CHECK(c1 == c2);
}

TEST_CASE("report numbers round-trip through the JSON format") {
  Options opt;
  opt.command = "energy";
  opt.observer = Vec3{0.37, -0.91, 0.123456789};
  const cli::RunResult r = cli::run_command(opt, cli::parse_input_text(kElectricDoc));
  const std::string text = cli::render_report(r.report, "json");
  const auto parsed = nlohmann::json::parse(text);
  CHECK(parsed["results"]["e5"].get<double>() == r.report["results"]["e5"].get<double>());
  CHECK(parsed["results"]["A0"].get<double>() == r.report["results"]["A0"].get<double>());
}

TEST_CASE("report numbers round-trip through the 17-digit text format") {
  Options opt;
  opt.command = "energy";
  opt.observer = Vec3{0.37, -0.91, 0.123456789};
  const cli::RunResult r = cli::run_command(opt, cli::parse_input_text(kElectricDoc));
  const std::string text = cli::render_report(r.report, "csv");
  // find the e5 row and parse it back
  std::istringstream is(text);
  std::string line;
  bool found = false;
  while (std::getline(is, line)) {
    if (line.rfind("result,e5,", 0) == 0) {
      const double v = std::strtod(line.c_str() + 10, nullptr);
      CHECK(v == r.report["results"]["e5"].get<double>());
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("render_report formats") {
  Options opt;
  opt.command = "decompose";
  const cli::RunResult r = cli::run_command(opt, cli::parse_input_text(kNullDoc));
  CHECK(cli::render_report(r.report, "json").find("input_digest") != std::string::npos);
  CHECK(cli::render_report(r.report, "text").find("null-future") != std::string::npos);
  CHECK(cli::render_report(r.report, "csv").rfind("kind,key,value", 0) == 0);
  CHECK_THROWS_AS(cli::render_report(r.report, "yaml"), std::invalid_argument);
}

#ifdef SMALLSPHERE_CLI_PATH
TEST_CASE("end-to-end binary: exit codes") {
  const std::string exe = SMALLSPHERE_CLI_PATH;
  const std::string in = write_temp(kElectricDoc, "electric");
  const std::string innull = write_temp(kNullDoc, "null");

  CHECK(std::system((exe + " minimize --input " + in + " --output /tmp/smallsphere_out1.json").c_str()) == 0);
  CHECK(std::system((exe + " decompose --input " + innull + " --format text --output /tmp/smallsphere_out2.txt").c_str()) == 0);
  // vacuum-only command on non-vacuum input: exit code 2
  const std::string stress = write_temp(
      R"({"stress": [[2,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]})", "stress");
  const int rc = std::system((exe + " energy --input " + stress + " 2>/dev/null >/dev/null").c_str());
  CHECK(WEXITSTATUS(rc) == 2);
  // missing input file: exit code 2
  const int rc2 = std::system((exe + " energy --input /nonexistent.json 2>/dev/null >/dev/null").c_str());
  CHECK(WEXITSTATUS(rc2) == 2);
  // verify suite runs clean
  const int rc3 = std::system((exe + " verify --suite integrals --seed 7 >/dev/null").c_str());
  CHECK(rc3 == 0);
}

TEST_CASE("end-to-end binary: byte-identical reruns") {
  const std::string exe = SMALLSPHERE_CLI_PATH;
  const std::string in = write_temp(kElectricDoc, "electric2");
  REQUIRE(std::system((exe + " energy --input " + in + " --observer 0.2,0.1,-0.4 --output /tmp/ss_a.json").c_str()) == 0);
  REQUIRE(std::system((exe + " energy --input " + in + " --observer 0.2,0.1,-0.4 --output /tmp/ss_b.json").c_str()) == 0);
  std::ifstream a("/tmp/ss_a.json"), b("/tmp/ss_b.json");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
}
#endif
