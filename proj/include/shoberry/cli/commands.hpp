#pragma once

#include <string>
#include <vector>

#include "shoberry/cli/config.hpp"
#include "shoberry/cli/report.hpp"

namespace shoberry::cli {

/// Undriven phases per quantum number: n, chi, delta, gamma, gamma_canonical,
/// oracle_gamma, abs_diff. The oracle columns are empty when options.oracle
/// is false; the representation then only needs formula-only validity.
Table cmd_berry(const RunConfig& config);

/// Driven phases per quantum number: n, gamma_undriven_part,
/// drive_part_closed, drive_part_quadrature, gamma_total, p, N.
/// Incommensurate periods are accepted only in the representation C = 1,
/// beta = 0 with D = 0, where the phase is taken over one forcing period and
/// p, N are left empty.
Table cmd_driven(const RunConfig& config);

/// Cartesian grid over the sweep axes (first axis outermost). Rows carry the
/// swept values, the berry or driven columns (driven when a force section is
/// present) and an error column; a failing grid point fills only its own
/// error cell. Points run on `threads` workers and are emitted in grid order.
Table cmd_sweep(const RunConfig& config);

/// t, u, v, rho over one classical period, options.samples points inclusive.
Table cmd_trajectory(const RunConfig& config);

}  // namespace shoberry::cli
