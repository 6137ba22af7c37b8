#include "shoberry/cli/app.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shoberry/cli/commands.hpp"
#include "shoberry/cli/config.hpp"
#include "shoberry/cli/report.hpp"
#include "shoberry/cli/validate.hpp"
#include "shoberry/errors.hpp"

namespace shoberry::cli {

namespace {

struct Flags {
  std::string config_path;
  std::optional<double> mass, omega, amplitude, hbar, omega_f;
  std::optional<std::string> beta, duration, homogeneous, out, format;
  std::vector<std::string> quantum_numbers, force_coefficients, sweep;
  std::optional<int> samples, threads;
  bool no_oracle = false;
  double perturb_dynamical = 0.0;
};

void add_common_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config_path, "JSON configuration file");
  cmd.add_option("--M", f.mass, "mass M > 0");
  cmd.add_option("--w", f.omega, "angular frequency w > 0");
  cmd.add_option("--C", f.amplitude, "amplitude C of the second classical solution");
  cmd.add_option("--beta", f.beta, "phase offset beta, radians or e.g. pi/3");
  cmd.add_option("--hbar", f.hbar, "reduced Planck constant");
  cmd.add_option("--out", f.out, "output path (default: standard output)");
  cmd.add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_phase_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--n", f.quantum_numbers, "quantum numbers, comma-separated or repeated");
  cmd.add_option("--duration", f.duration, "half-period, full-period or <k>-periods");
  cmd.add_flag("--no-oracle", f.no_oracle, "skip the numerical oracle columns");
}

void add_force_options(CLI::App& cmd, Flags& f) {
  cmd.add_option("--omega-f", f.omega_f, "forcing frequency w_f");
  cmd.add_option("--force-coeff", f.force_coefficients, "force Fourier coefficient n:re:im (repeatable)");
  cmd.add_option("--D", f.homogeneous, "homogeneous amplitude D as re:im");
}

RunConfig resolve(const Flags& f) {
  RunConfig config = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
  auto mark = [&config] { config.representation_given = true; };
  if (f.mass) config.mass = *f.mass, mark();
  if (f.omega) config.omega = *f.omega, mark();
  if (f.amplitude) config.amplitude = *f.amplitude, mark();
  if (f.beta) config.phase_offset = parse_angle(*f.beta), mark();
  if (f.hbar) config.hbar = *f.hbar, mark();
  if (!f.quantum_numbers.empty()) {
    config.quantum_numbers.clear();
    for (const auto& item : f.quantum_numbers) {
      for (int n : parse_quantum_numbers(item)) config.quantum_numbers.push_back(n);
    }
  }
  if (f.duration) config.duration = parse_duration(*f.duration);
  if (f.omega_f || !f.force_coefficients.empty() || f.homogeneous) {
    if (!config.force) {
      if (!f.omega_f) throw ValidationError("force options need --omega-f (or a force section in the config)");
      config.force = ForceSection{};
    }
    if (f.omega_f) config.force->omega_f = *f.omega_f;
    if (!f.force_coefficients.empty()) {
      config.force->coefficients.clear();
      for (const auto& c : f.force_coefficients) config.force->coefficients.push_back(parse_force_coefficient(c));
    }
    if (f.homogeneous) config.force->homogeneous = parse_complex(*f.homogeneous);
  }
  if (!f.sweep.empty()) {
    config.sweep.clear();
    for (const auto& axis : f.sweep) config.sweep.push_back(parse_sweep_axis(axis));
  }
  if (f.out) config.output.path = *f.out;
  if (f.format) config.output.format = *f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (f.samples) {
    if (*f.samples < 2) throw ValidationError("--samples must be at least 2");
    config.samples = static_cast<std::size_t>(*f.samples);
  }
  if (f.threads) {
    if (*f.threads < 0) throw ValidationError("--threads must be nonnegative");
    config.threads = static_cast<unsigned>(*f.threads);
  }
  if (f.no_oracle) config.oracle = false;
  return config;
}

void emit(const Table& table, const OutputSection& output, std::ostream& out) {
  std::ostringstream buffer;
  if (output.format == OutputFormat::Json) {
    write_json(table, buffer);
  } else {
    write_csv(table, buffer);
  }
  if (output.path.empty()) {
    out << buffer.str();
    out.flush();
    return;
  }
  std::ofstream file(output.path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("cannot open output file '" + output.path + "'");
  file << buffer.str();
  if (!file.flush()) throw ValidationError("failed writing output file '" + output.path + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Berry phases of the simple harmonic oscillator in general representations"};
  app.name("shoberry");
  app.require_subcommand(1);
  Flags flags;

  auto* berry = app.add_subcommand("berry", "undriven chi, delta and gamma per quantum number");
  add_common_options(*berry, flags);
  add_phase_options(*berry, flags);

  auto* driven = app.add_subcommand("driven", "Berry phase of the periodically driven oscillator");
  add_common_options(*driven, flags);
  driven->add_option("--n", flags.quantum_numbers, "quantum numbers, comma-separated or repeated");
  add_force_options(*driven, flags);

  auto* sweep = app.add_subcommand("sweep", "parameter grid of berry or driven rows");
  add_common_options(*sweep, flags);
  add_phase_options(*sweep, flags);
  add_force_options(*sweep, flags);
  sweep->add_option("--sweep", flags.sweep, "axis param:start:stop:steps (repeatable; first is outermost)");
  sweep->add_option("--threads", flags.threads, "worker threads (0: all cores)");

  auto* traj = app.add_subcommand("trajectory", "classical (u, v) curve and rho over one period");
  add_common_options(*traj, flags);
  traj->add_option("--samples", flags.samples, "number of points (>= 2)");

  auto* validate = app.add_subcommand("validate", "run the invariant battery");
  add_common_options(*validate, flags);
  validate->add_option("--perturb-dynamical", flags.perturb_dynamical,
                       "test hook: scale the dynamical-phase oracle by 1 + value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, error;
    const int code = app.exit(e, help, error);
    out << help.str();
    err << error.str();
    return code == 0 ? kExitSuccess : kExitValidation;
  }

  try {
    const RunConfig config = resolve(flags);
    if (*berry) {
      emit(cmd_berry(config), config.output, out);
    } else if (*driven) {
      emit(cmd_driven(config), config.output, out);
    } else if (*sweep) {
      emit(cmd_sweep(config), config.output, out);
    } else if (*traj) {
      emit(cmd_trajectory(config), config.output, out);
    } else if (*validate) {
      const auto results = run_validation_battery(config, {flags.perturb_dynamical});
      emit(validation_table(results), config.output, out);
      std::size_t failed = 0;
      for (const auto& r : results) failed += r.passed ? 0 : 1;
      err << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed\n"
                          : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed\n");
      return failed == 0 ? kExitSuccess : kExitCheckFailed;
    }
    return kExitSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace shoberry::cli
