#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "shoberry/numerics/quadrature.hpp"
#include "shoberry/representation.hpp"
#include "shoberry/wavefunction.hpp"

namespace shoberry {

/// Phases accumulated over a cyclic evolution of length `duration`.
/// All angles are unwrapped on the branch that is principal at t = 0;
/// gamma == chi - delta holds exactly.
struct PhaseResult {
  double chi = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double gamma_canonical = 0.0;  // gamma reduced to [0, 2 pi)
  double duration = 0.0;
};

/// Builds a PhaseResult from chi and delta, deriving gamma and its canonical form.
PhaseResult make_phase_result(double chi, double delta, double duration);

// ---------------------------------------------------------------------------
// Closed forms. `half_periods` counts evolutions of tau0/2 (1 = half period, 2 = full period).

/// chi_n(k tau0/2) = -k (n + 1/2) pi.
double overall_phase_closed(int n, int half_periods);

/// delta_n(k tau0/2) = -k (n + 1/2) pi (1 + C^2) / (2 C cos beta). Independent of M, w and hbar.
double dynamical_phase_closed(const Representation& rep, int n, int half_periods);

/// gamma = chi - delta with both closed forms; requires formula-only validity.
PhaseResult berry_phase(const Representation& rep, int n, int half_periods);

// ---------------------------------------------------------------------------
// Numerical oracles.

/// Fidelity |<psi(0)|psi(tau)>| above which an evolution counts as cyclic.
inline constexpr double kCyclicFidelity = 1.0 - 1e-8;

/// Maximum phase increment between successive samples of the tracked phase.
inline constexpr double kTrackingStep = std::numbers::pi / 4.0;

struct OverallPhaseEstimate {
  double phase = 0.0;          // unwrapped chi
  double fidelity = 0.0;       // |<psi(0)|psi(tau)>|
  double tracked_phase = 0.0;  // continuation estimate used to select the branch
  std::size_t time_samples = 0;
};

/// Overall phase from spatial overlaps.
///
/// The principal value and fidelity come from <psi(0)|psi(tau)>. The branch
/// comes from following arg <f_t|psi(t)> along a refined time grid, where f_t
/// is the unwound reference state with the instantaneous width and chirp of
/// psi (see frame_function). Tracking against psi(0) instead is unreliable:
/// for strongly squeezed states with n >= 2 that overlap encircles the
/// origin mid-cycle and slips by 2 pi. A real, unchirped frame fails the same
/// way for larger n.
///
/// Throws UndefinedPhaseError when the fidelity is below kCyclicFidelity.
OverallPhaseEstimate overall_phase_oracle(const QuantumState& state, double duration);

/// delta = -(1/hbar) * integral of energy_expectation over [0, duration], adaptively.
double dynamical_phase_oracle(const QuantumState& state, double duration,
                              const numerics::QuadratureSpec& spec = {});

/// chi_oracle - delta_oracle over `half_periods` half periods.
PhaseResult berry_phase_oracle(const QuantumState& state, int half_periods);

/// -(i/2) * integral over one period of alpha'/(alpha + alpha*), by adaptive quadrature.
/// The real part equals gamma_0(tau0); the imaginary part vanishes.
std::complex<double> ge_child_integral(const Representation& rep, const PhysicalConfig& config = {},
                                       const numerics::QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Equivalence classes.

struct EquivalentAmplitude {
  int m;             // class index: (1 + C^2)/(2 C cos beta) - 1 = 4m (target 0) or 4m + 2 (target pi)
  double amplitude;  // C
};

/// Amplitudes C whose half-period Berry phase is congruent to `target` (mod 2 pi)
/// for every n simultaneously, for class indices m in [-max_index, max_index].
/// Only targets congruent to 0 or pi are representable for all n; any other
/// target throws ValidationError. Both roots C = a +- sqrt(a^2 - 1) are
/// returned (once if they coincide); indices without real roots are skipped.
std::vector<EquivalentAmplitude> equivalence_class_amplitudes(double beta, double target, int max_index);

}  // namespace shoberry
