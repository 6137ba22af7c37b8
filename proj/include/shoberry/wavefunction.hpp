#pragma once

// Exact number-state wavefunctions of the simple harmonic oscillator in a
// general representation:
//
//   psi_n(x,t) = (Omega/pi hbar)^{1/4} / sqrt(2^n n! rho)
//                * [(u - i v)/rho]^{n+1/2}
//                * exp[(x^2 / 2 hbar)(-Omega/rho^2 + i M rho'/rho)]
//                * H_n(sqrt(Omega/hbar) x / rho)
//
// The half-integer power follows the continuous branch of arg(u - i v) that
// is principal at t = 0 (see winding_angle).

#include <complex>
#include <functional>

#include "shoberry/numerics/quadrature.hpp"
#include "shoberry/representation.hpp"

namespace shoberry {

/// Upper bound on the quantum number; beyond this the recurrence overflows for modest arguments.
inline constexpr int kMaxQuantumNumber = 64;

/// Tolerance used for spatial integrals (successive panel doublings).
inline constexpr double kSpatialTolerance = 1e-10;

using Amplitude = std::complex<double>;

class QuantumState {
 public:
  /// Requires n in [0, 64], hbar > 0 and a fully valid representation (Omega > 0).
  QuantumState(Representation rep, int n, PhysicalConfig config = {});

  const Representation& representation() const { return rep_; }
  int n() const { return n_; }
  double hbar() const { return config_.hbar; }
  const PhysicalConfig& config() const { return config_; }

 private:
  Representation rep_;
  int n_;
  PhysicalConfig config_;
};

/// Physicists' Hermite polynomial by upward recurrence. Throws
/// ConvergenceError if the value overflows.
double hermite(int n, double x);

/// All time-dependent factors of psi_n at one instant, so that evaluating
/// many x at fixed t costs one Hermite recurrence and one exponential each.
class WavefunctionSnapshot {
 public:
  WavefunctionSnapshot(const QuantumState& state, double t);

  Amplitude operator()(double x) const;
  /// d psi / dx, analytic.
  Amplitude gradient(double x) const;

  double time() const { return t_; }
  double rho() const { return rho_; }

 private:
  int n_;
  double t_;
  double rho_;
  double scale_;        // sqrt(Omega/hbar) / rho
  Amplitude quadratic_;  // (-Omega/rho^2 + i M rho'/rho) / (2 hbar)
  Amplitude prefactor_;  // normalization times winding factor
};

Amplitude psi(const QuantumState& state, double x, double t);

/// Unwound reference state with the instantaneous width and chirp of psi_n:
/// (Omega/pi hbar)^{1/4}/sqrt(2^n n! rho) exp[x^2 (-Omega/rho^2 + i M rho'/rho) / 2 hbar] H_n(...).
/// Built directly from rho and rho', without the winding factor. Used as a
/// gauge reference when tracking the phase of psi.
Amplitude frame_function(const QuantumState& state, double x, double t);

/// Half-width L of the spatial quadrature domain [-L, L]:
/// rho_max sqrt(hbar/Omega) (sqrt(2n+1) + 10).
double spatial_half_width(const QuantumState& state);

/// Integrates f over the spatial domain of `state` with composite
/// Gauss-Legendre panels doubled until converged to kSpatialTolerance.
template <class F>
auto integrate_space(const QuantumState& state, F&& f) {
  const double L = spatial_half_width(state);
  return numerics::integrate_panels(std::forward<F>(f), -L, L, kSpatialTolerance, 16);
}

/// alpha(t) = (1/2hbar)(Omega/rho^2 - i M rho'/rho).
std::complex<double> alpha(const Representation& rep, const PhysicalConfig& config, double t);
/// Analytic time derivative of alpha.
std::complex<double> alpha_dot(const Representation& rep, const PhysicalConfig& config, double t);

/// <psi_n|H|psi_n>(t) in closed form:
/// (hbar/2)(n + 1/2)[Omega/(M rho^2) + M rho'^2/Omega + M w^2 rho^2/Omega].
double energy_expectation(const QuantumState& state, double t);

/// <psi_n|H|psi_n>(t) by spatial quadrature of hbar^2/2M |psi'|^2 + M w^2 x^2/2 |psi|^2.
double energy_expectation_quadrature(const QuantumState& state, double t);

}  // namespace shoberry
