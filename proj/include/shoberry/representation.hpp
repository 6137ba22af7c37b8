#pragma once

// Representations of the simple harmonic oscillator built from the classical
// solution pair u(t) = cos(w t), v(t) = C sin(w t + beta).
//
// A representation selects one family of exact wavefunctions of the same
// Hamiltonian H = p^2/2M + M w^2 x^2/2. The classical quantities defined here
// (u, v, rho, the Wronskian invariant) parameterize those wavefunctions.

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace shoberry {

/// Degeneracy guard on |cos(beta)|: beta may not be an odd multiple of pi/2.
inline constexpr double kCosBetaEpsilon = 1e-9;

struct PhysicalConfig {
  double hbar = 1.0;

  void validate() const;
};

struct Representation {
  double mass = 1.0;
  double omega = 1.0;
  double amplitude = 1.0;     // C
  double phase_offset = 0.0;  // beta, radians

  /// Classical period 2 pi / w. Always derived, never stored.
  double period() const { return 2.0 * std::numbers::pi / omega; }
  double half_period() const { return std::numbers::pi / omega; }

  static Representation stationary(double mass = 1.0, double omega = 1.0) { return {mass, omega, 1.0, 0.0}; }
};

enum class ValidationMode {
  FormulaOnly,  // closed-form phase formulas: C != 0, cos(beta) != 0
  Full,         // normalizable wavefunctions: additionally C cos(beta) > 0
};

struct ValidationReport {
  bool ok = true;
  std::string violated;  // empty when ok

  explicit operator bool() const { return ok; }
};

ValidationReport validate(const Representation& rep, ValidationMode mode);

/// Throws ValidationError naming the violated constraint.
void require_valid(const Representation& rep, ValidationMode mode);

struct ClassicalPair {
  double u;
  double v;
  double u_dot;
  double v_dot;
};

ClassicalPair classical_pair(const Representation& rep, double t);

/// rho = sqrt(u^2 + v^2). Throws ConvergenceError if it underflows to zero.
double rho(const Representation& rep, double t);
double rho_dot(const Representation& rep, double t);
double rho_ddot(const Representation& rep, double t);

/// Extremes of rho over a period, from the eigenvalues of the quadratic form u^2 + v^2.
double rho_max(const Representation& rep);
double rho_min(const Representation& rep);

/// Omega = M C w cos(beta).
double omega_invariant(const Representation& rep);

/// M (u v' - v u') evaluated directly at time t.
double wronskian(const Representation& rep, double t);

/// Continuous argument of u(t) - i v(t), principal at t = 0.
///
/// Over each half period the argument changes by exactly -pi sign(Omega) and
/// is strictly monotone inside it, so the continuation along [0, t] reduces to
/// a half-period count plus one principal-value difference.
double winding_angle(const Representation& rep, double t);

struct TrajectoryPoint {
  double t;
  double u;
  double v;
  double rho;
};

/// `samples` points (samples >= 2) of (u, v) on [0, tau0]; the curve is closed.
std::vector<TrajectoryPoint> trajectory(const Representation& rep, std::size_t samples);

}  // namespace shoberry
