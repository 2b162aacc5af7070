#ifndef SMALLSPHERE_CLI_HPP
#define SMALLSPHERE_CLI_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "smallsphere/curvature.hpp"
#include "smallsphere/expansion.hpp"

// command-line front end: curvature ingestion, dispatch, machine-readable reports
namespace smallsphere::cli {

using json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string input_path;
  Vec3 observer{0.0, 0.0, 0.0};
  int grid_degree = 0;  // 0 = take from input document (default 12)
  std::string suite;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string output_path;
};

struct InputDocument {
  enum class Source { Riemann, WeylEM, Stress };
  Source source = Source::WeylEM;
  CurvatureAtPoint curvature;
  bool has_stress = false;
  Mat4 stress{};
  bool has_dweyl = false;
  Rank5 dweyl_raw;
  int grid_degree = 12;
  double tolerance_scale = 1.0;  // multiplies the per-command check tolerances
  std::string digest;
};

/// Parse the documented JSON input (see README). Throws std::runtime_error
/// with a line number on malformed syntax, std::invalid_argument on semantic
/// errors (conflicting sources, symmetry-inconsistent duplicates, ...).
InputDocument parse_input(const std::string& path);
InputDocument parse_input_text(const std::string& text);

struct RunResult {
  int exit_code = 0;
  json report;
};

/// Execute one of {decompose, energy, minimize, nonvacuum, verify}.
/// Vacuum-only commands on non-vacuum input throw std::invalid_argument
/// (mapped to exit code 2 by the driver).
RunResult run_command(const Options& opt, const InputDocument& doc);

std::string render_report(const json& report, const std::string& format);

std::string fnv1a_hex(const std::string& bytes);

/// Full driver: parse args, run, write the report. Returns the process exit code.
int run_main(int argc, char** argv);

}  // namespace smallsphere::cli

#endif
