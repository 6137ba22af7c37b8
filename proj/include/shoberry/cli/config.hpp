#pragma once

// Run configuration shared by all subcommands. A configuration comes from a
// JSON document, command-line flags, or both (flags win).
//
// {
//   "representation": {"M": 1, "w": 1, "C": 2, "beta": "pi/3", "hbar": 1},
//   "n": [0, 1, 2],
//   "duration": "half-period" | "full-period" | "<k>-periods",
//   "force": {"omega_f": 0.5,
//             "coefficients": [{"n": 1, "re": 0.5, "im": 0.0}],
//             "D": {"re": 0.3, "im": 0.1}},
//   "sweep": [{"parameter": "C", "range": [0.5, 4], "steps": 36}],
//   "output": {"format": "csv" | "json", "path": "out.csv"},
//   "options": {"oracle": true, "samples": 257, "threads": 0}
// }
//
// Angles (beta, and sweep ranges over beta) are radians given as numbers or
// as rational multiples of pi in string form: "pi/3", "-2pi/3", "0.25*pi".

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shoberry/driven.hpp"
#include "shoberry/representation.hpp"

namespace shoberry::cli {

/// Parses a number or a rational multiple of pi. Throws ValidationError.
double parse_angle(std::string_view text);

/// Evolution length selector for undriven phases.
struct Duration {
  enum class Kind { HalfPeriod, FullPeriod, Periods };
  Kind kind = Kind::HalfPeriod;
  int periods = 1;  // used by Kind::Periods

  int half_periods() const;
  std::string label() const;
};

/// "half-period", "full-period" or "<k>-periods" with k >= 1.
Duration parse_duration(std::string_view text);

struct ForceSection {
  double omega_f = 1.0;
  std::vector<FourierCoefficient> coefficients;
  std::complex<double> homogeneous{};  // D

  DrivingForce force() const;
};

inline const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names{"C", "beta", "n", "D_re", "D_im", "omega_f"};
  return names;
}

/// One sweep axis: `steps` equally spaced values from start to stop inclusive.
struct SweepAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

/// "param:start:stop:steps", e.g. "beta:-pi/3:pi/3:21".
SweepAxis parse_sweep_axis(std::string_view text);

enum class OutputFormat { Csv, Json };

struct OutputSection {
  OutputFormat format = OutputFormat::Csv;
  std::string path;  // empty: standard output
};

struct RunConfig {
  double mass = 1.0;
  double omega = 1.0;
  double amplitude = 1.0;
  double phase_offset = 0.0;
  double hbar = 1.0;
  bool representation_given = false;

  std::vector<int> quantum_numbers{0};
  Duration duration;
  std::optional<ForceSection> force;
  std::vector<SweepAxis> sweep;
  OutputSection output;

  bool oracle = true;
  std::size_t samples = 257;
  unsigned threads = 0;  // 0: hardware concurrency

  Representation representation() const { return {mass, omega, amplitude, phase_offset}; }
  PhysicalConfig physical() const { return {hbar}; }
};

/// Builds a configuration from a parsed JSON document. Unknown keys and
/// malformed values throw ValidationError naming the offending field.
RunConfig parse_config(const nlohmann::json& document);

/// Reads and parses a JSON configuration file.
RunConfig load_config(const std::filesystem::path& path);

/// "n:re:im" for a force coefficient.
FourierCoefficient parse_force_coefficient(std::string_view text);
/// "re:im" for a complex amplitude.
std::complex<double> parse_complex(std::string_view text);
/// Comma-separated nonnegative integers.
std::vector<int> parse_quantum_numbers(std::string_view text);

}  // namespace shoberry::cli
