#include "shoberry/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "shoberry/driven.hpp"
#include "shoberry/errors.hpp"
#include "shoberry/phase.hpp"
#include "shoberry/representation.hpp"

namespace shoberry::cli {

namespace {

const std::vector<std::string> kBerryColumns{"n", "chi", "delta", "gamma", "gamma_canonical", "oracle_gamma",
                                             "abs_diff"};
const std::vector<std::string> kDrivenColumns{"n", "gamma_undriven_part", "drive_part_closed",
                                              "drive_part_quadrature", "gamma_total", "p", "N"};

std::vector<Cell> berry_row(const RunConfig& config, int n) {
  const auto rep = config.representation();
  config.physical().validate();
  require_valid(rep, config.oracle ? ValidationMode::Full : ValidationMode::FormulaOnly);
  const int halves = config.duration.half_periods();
  const auto closed = berry_phase(rep, n, halves);
  std::vector<Cell> row{std::int64_t{n}, closed.chi, closed.delta, closed.gamma, closed.gamma_canonical};
  if (config.oracle) {
    const auto oracle = berry_phase_oracle(QuantumState(rep, n, config.physical()), halves);
    row.emplace_back(oracle.gamma);
    row.emplace_back(std::abs(closed.gamma - oracle.gamma));
  } else {
    row.emplace_back(std::monostate{});
    row.emplace_back(std::monostate{});
  }
  return row;
}

bool is_special_representation(const Representation& rep, std::complex<double> homogeneous) {
  return rep.amplitude == 1.0 && rep.phase_offset == 0.0 && homogeneous == std::complex<double>{};
}

std::vector<Cell> driven_row(const RunConfig& config, int n) {
  if (!config.force) throw ValidationError("driven computation needs a force section");
  const auto rep = config.representation();
  const auto physical = config.physical();
  physical.validate();
  require_valid(rep, ValidationMode::FormulaOnly);
  if (n < 0) throw ValidationError("n must be nonnegative");
  const auto force = config.force->force();
  const auto homogeneous = config.force->homogeneous;

  if (is_special_representation(rep, homogeneous)) {
    // Stationary representation: the state is cyclic over one forcing period,
    // whether or not tau0 and tau_f are commensurate.
    const auto xp = make_particular_solution(force, rep, homogeneous);
    const double closed = berry_phase_special_rep(force, rep.mass, rep.omega, physical);
    const double quadrature = drive_phase_quadrature(xp, rep.mass, force.period(), physical);
    return {std::int64_t{n}, 0.0, closed, quadrature, closed, std::monostate{}, std::monostate{}};
  }
  Commensurability comm;
  try {
    comm = commensurability(rep.period(), force.period());
  } catch (const UndefinedPhaseError& e) {
    throw UndefinedPhaseError(std::string(e.what()) +
                              ". Without integers p, N with tau0/tau_f = p/N the driven Berry phase exists only "
                              "in the representation C = 1, beta = 0 with D = 0");
  }
  const auto r = berry_phase_driven(rep, n, force, homogeneous, comm, physical);
  return {std::int64_t{n}, r.undriven_part, r.drive_closed, r.drive_quadrature, r.total, r.p, r.n_periods};
}

std::string describe_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Validation: return std::string("validation: ") + e.what();
    case ErrorKind::Undefined: return std::string("undefined: ") + e.what();
    case ErrorKind::Convergence: return std::string("convergence: ") + e.what();
  }
  return e.what();
}

void apply_axis(RunConfig& config, const std::string& parameter, double value) {
  if (parameter == "C") {
    config.amplitude = value;
  } else if (parameter == "beta") {
    config.phase_offset = value;
  } else if (parameter == "n") {
    if (value != std::floor(value) || value < 0.0 || value > kMaxQuantumNumber) {
      throw ValidationError("swept n must be an integer in [0, " + std::to_string(kMaxQuantumNumber) + "]");
    }
    config.quantum_numbers = {static_cast<int>(value)};
  } else if (parameter == "D_re") {
    config.force->homogeneous.real(value);
  } else if (parameter == "D_im") {
    config.force->homogeneous.imag(value);
  } else if (parameter == "omega_f") {
    config.force->omega_f = value;
  }
}

}  // namespace

Table cmd_berry(const RunConfig& config) {
  if (config.force) throw ValidationError("berry takes no force section; use the driven command");
  if (!config.sweep.empty()) throw ValidationError("berry takes no sweep section; use the sweep command");
  Table table{"berry", kBerryColumns, {}};
  for (int n : config.quantum_numbers) table.rows.push_back(berry_row(config, n));
  return table;
}

Table cmd_driven(const RunConfig& config) {
  if (!config.force) throw ValidationError("driven requires a force section (omega_f, coefficients, D)");
  if (!config.sweep.empty()) throw ValidationError("driven takes no sweep section; use the sweep command");
  Table table{"driven", kDrivenColumns, {}};
  for (int n : config.quantum_numbers) table.rows.push_back(driven_row(config, n));
  return table;
}

Table cmd_sweep(const RunConfig& config) {
  if (config.sweep.empty()) throw ValidationError("sweep requires a sweep section");
  const bool driven = config.force.has_value();
  bool sweeps_n = false;
  for (const auto& axis : config.sweep) {
    if (!driven && (axis.parameter == "D_re" || axis.parameter == "D_im" || axis.parameter == "omega_f")) {
      throw ValidationError("sweep parameter '" + axis.parameter + "' requires a force section");
    }
    sweeps_n = sweeps_n || axis.parameter == "n";
    for (const auto& other : config.sweep) {
      if (&other != &axis && other.parameter == axis.parameter) {
        throw ValidationError("sweep parameter '" + axis.parameter + "' appears twice");
      }
    }
  }

  std::vector<std::vector<double>> axis_values;
  std::size_t points = 1;
  for (const auto& axis : config.sweep) {
    axis_values.push_back(axis.values());
    points *= axis_values.back().size();
  }

  Table table{"sweep", {}, {}};
  for (const auto& axis : config.sweep) {
    if (axis.parameter != "n") table.columns.push_back(axis.parameter);
  }
  const auto& body = driven ? kDrivenColumns : kBerryColumns;
  table.columns.insert(table.columns.end(), body.begin(), body.end());
  table.columns.emplace_back("error");

  auto evaluate = [&](std::size_t index) {
    // Row-major decomposition: the last axis varies fastest.
    std::vector<double> values(config.sweep.size());
    for (std::size_t a = config.sweep.size(); a-- > 0;) {
      values[a] = axis_values[a][index % axis_values[a].size()];
      index /= axis_values[a].size();
    }
    std::vector<Cell> prefix;
    for (std::size_t a = 0; a < config.sweep.size(); ++a) {
      if (config.sweep[a].parameter != "n") prefix.emplace_back(values[a]);
    }

    std::vector<std::vector<Cell>> rows;
    auto error_row = [&](Cell n, const std::string& message) {
      auto row = prefix;
      row.push_back(std::move(n));
      row.resize(prefix.size() + body.size());
      row.emplace_back(message);
      rows.push_back(std::move(row));
    };

    RunConfig point = config;
    point.sweep.clear();
    try {
      for (std::size_t a = 0; a < config.sweep.size(); ++a) apply_axis(point, config.sweep[a].parameter, values[a]);
    } catch (const Error& e) {
      const std::size_t n_axis = static_cast<std::size_t>(
          std::find_if(config.sweep.begin(), config.sweep.end(), [](const auto& ax) { return ax.parameter == "n"; }) -
          config.sweep.begin());
      error_row(sweeps_n ? Cell{values[n_axis]} : Cell{}, describe_error(e));
      return rows;
    }
    for (int n : point.quantum_numbers) {
      try {
        auto row = prefix;
        auto cells = driven ? driven_row(point, n) : berry_row(point, n);
        row.insert(row.end(), cells.begin(), cells.end());
        row.emplace_back(std::string{});
        rows.push_back(std::move(row));
      } catch (const Error& e) {
        error_row(std::int64_t{n}, describe_error(e));
      }
    }
    return rows;
  };

  std::vector<std::vector<std::vector<Cell>>> results(points);
  unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, points));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < points && !failed; i = next++) {
      try {
        results[i] = evaluate(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& chunk : results) {
    for (auto& row : chunk) table.rows.push_back(std::move(row));
  }
  return table;
}

Table cmd_trajectory(const RunConfig& config) {
  if (config.force) throw ValidationError("trajectory takes no force section");
  if (!config.sweep.empty()) throw ValidationError("trajectory takes no sweep section");
  const auto rep = config.representation();
  require_valid(rep, ValidationMode::FormulaOnly);
  Table table{"trajectory", {"t", "u", "v", "rho"}, {}};
  for (const auto& p : trajectory(rep, config.samples)) table.rows.push_back({p.t, p.u, p.v, p.rho});
  return table;
}

}  // namespace shoberry::cli
