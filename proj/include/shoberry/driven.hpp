#pragma once

// Periodically driven oscillator, M(x'' + w^2 x) = F(t).
//
// The force is held as a finite Fourier table F(t) = sum_n f_n e^{i n w_f t}.
// Driven wavefunctions are the undriven ones recentred on a periodic
// particular solution x_p(t), times exp[(i/hbar)(M x_p' x + S(t))], where
// S(t) = (M/2) * integral from 0 to t of (w^2 x_p^2 - x_p'^2).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "shoberry/numerics/quadrature.hpp"
#include "shoberry/phase.hpp"
#include "shoberry/representation.hpp"
#include "shoberry/wavefunction.hpp"

namespace shoberry {

/// Relative threshold on |w^2 - n^2 w_f^2| / w^2 below which a mode counts as resonant.
inline constexpr double kResonanceThreshold = 1e-9;
/// Relative size below which a resonant coefficient counts as vanishing: |f_N| < 1e-12 ||f||.
inline constexpr double kVanishingCoefficient = 1e-12;
/// Default admissible tail power fraction for fourier_decompose.
inline constexpr double kTailTolerance = 1e-8;

struct FourierCoefficient {
  int n;
  std::complex<double> value;
};

class DrivingForce {
 public:
  /// The zero force at base frequency 1.
  DrivingForce() = default;

  /// Builds a real force from a coefficient table. Missing negative modes are
  /// filled with conjugates; supplied pairs must satisfy f_{-n} = conj(f_n)
  /// and f_0 must be real (to 1e-12 relative), otherwise ValidationError.
  static DrivingForce from_coefficients(double omega_f, std::span<const FourierCoefficient> table);

  double omega_f() const { return omega_f_; }
  double period() const;
  /// Coefficients keyed by mode index, both signs present.
  const std::map<int, std::complex<double>>& coefficients() const { return coefficients_; }
  std::complex<double> coefficient(int n) const;
  /// Largest |n| with a stored coefficient.
  int max_mode() const;
  /// sqrt(sum |f_n|^2)
  double norm() const;
  bool is_zero() const { return norm() == 0.0; }

  double operator()(double t) const;

 private:
  double omega_f_ = 1.0;
  std::map<int, std::complex<double>> coefficients_;
};

/// Square wave of the given amplitude (F = +amplitude on the first half period,
/// -amplitude on the second) truncated to odd modes |n| <= max_mode:
/// f_n = 2 amplitude / (i pi n).
DrivingForce odd_square_wave(double omega_f, double amplitude, int max_mode);

struct FourierDecomposition {
  DrivingForce force;
  double mean_power = 0.0;     // (1/tau_f) * integral of F^2
  double tail_fraction = 0.0;  // share of mean_power outside |n| <= max_mode
};

/// f_n = (1/tau_f) * integral over one period of F(t) e^{-i n w_f t} for |n| <= max_mode.
/// Throws ValidationError when the discarded tail exceeds tail_tolerance of the power.
FourierDecomposition fourier_decompose(const std::function<double(double)>& force, double omega_f, int max_mode,
                                       double tail_tolerance = kTailTolerance,
                                       const numerics::QuadratureSpec& spec = {});

/// Coprime (p, N) with tau0 / tau_f = p / N, so that N tau0 = p tau_f is a joint period.
struct Commensurability {
  std::int64_t p = 1;
  std::int64_t n = 1;
};

inline constexpr double kCommensurabilityTolerance = 1e-12;

/// Continued-fraction search with denominators capped at 10^6. Throws
/// UndefinedPhaseError when tau0/tau_f has no such rational approximation.
Commensurability commensurability(double tau0, double tau_f, double tolerance = kCommensurabilityTolerance);

/// Periodic solution of x'' + w^2 x = F/M:
/// x_p = sum_n f_n e^{i n w_f t} / (M (w^2 - n^2 w_f^2)) + D e^{i w t} + conj(D) e^{-i w t}.
class ParticularSolution {
 public:
  ParticularSolution() = default;
  ParticularSolution(double omega_f, double omega, std::map<int, std::complex<double>> modes,
                     std::complex<double> homogeneous)
      : omega_f_(omega_f), omega_(omega), modes_(std::move(modes)), homogeneous_(homogeneous) {}

  double position(double t) const;
  double velocity(double t) const;
  double acceleration(double t) const;

  /// Mode amplitudes a_n = f_n / (M (w^2 - n^2 w_f^2)), both signs present.
  const std::map<int, std::complex<double>>& modes() const { return modes_; }
  std::complex<double> homogeneous_amplitude() const { return homogeneous_; }
  double omega_f() const { return omega_f_; }
  double omega() const { return omega_; }

  /// Frequencies and complex amplitudes of every exponential component, homogeneous part included.
  std::vector<std::pair<double, std::complex<double>>> components() const;

 private:
  double omega_f_ = 1.0;
  double omega_ = 1.0;
  std::map<int, std::complex<double>> modes_;
  std::complex<double> homogeneous_{};
};

/// Builds x_p for a commensurate pair. For p = 1 the force's N-th coefficient
/// must vanish; otherwise x_p is unbounded and UndefinedPhaseError is thrown.
ParticularSolution particular_solution(const DrivingForce& force, const Representation& rep,
                                       const Commensurability& comm, std::complex<double> homogeneous);

/// Builds x_p without a commensurability assumption, refusing only resonant modes.
ParticularSolution make_particular_solution(const DrivingForce& force, const Representation& rep,
                                            std::complex<double> homogeneous);

/// S(t) - S(t0) = (M/2) * integral from t0 to t of (w^2 x_p^2 - x_p'^2), integrated mode by mode.
double action_phase(const Representation& rep, const ParticularSolution& xp, double t0, double t);

/// Same integral by adaptive quadrature.
double action_phase_quadrature(const Representation& rep, const ParticularSolution& xp, double t0, double t,
                               const numerics::QuadratureSpec& spec = {});

/// Driven number state: representation, quantum number, force and particular solution.
class DrivenState {
 public:
  DrivenState(QuantumState base, DrivingForce force, ParticularSolution xp);

  const QuantumState& base() const { return base_; }
  const DrivingForce& force() const { return force_; }
  const ParticularSolution& particular() const { return xp_; }

 private:
  QuantumState base_;
  DrivingForce force_;
  ParticularSolution xp_;
};

class DrivenSnapshot {
 public:
  DrivenSnapshot(const DrivenState& state, double t);
  Amplitude operator()(double x) const;
  Amplitude gradient(double x) const;

  double center() const { return center_; }
  double momentum() const { return momentum_; }

 private:
  WavefunctionSnapshot base_;
  double center_;     // x_p(t)
  double momentum_;   // M x_p'(t)
  double action_;     // S(t), t0 = 0
  double hbar_;
};

Amplitude psi_driven(const DrivenState& state, double x, double t);

/// <H(t)> for the driven state in closed form:
/// undriven energy_expectation + M x_p'^2/2 + M w^2 x_p^2/2 - F x_p.
double driven_energy_expectation(const DrivenState& state, double t);
/// Same by spatial quadrature with H = p^2/2M + M w^2 x^2/2 - F(t) x.
double driven_energy_expectation_quadrature(const DrivenState& state, double t);

struct DrivenPhaseResult {
  double undriven_part = 0.0;     // N gamma_n(tau0)
  double drive_closed = 0.0;      // mode-sum closed form of (1/hbar) * integral of M x_p'^2
  double drive_quadrature = 0.0;  // same integral by quadrature
  double total = 0.0;             // undriven_part + drive_closed
  std::int64_t p = 1;
  std::int64_t n_periods = 1;
  double duration = 0.0;          // N tau0 = p tau_f
};

/// Drive contribution over N tau0 in closed form:
/// 2 pi N^3 p^2 / (hbar M w^3) sum_n n^2 |f_n|^2 / (p^2 n^2 - N^2)^2 + 4 pi M N w |D|^2 / hbar.
double drive_phase_closed(const DrivingForce& force, const Representation& rep, const Commensurability& comm,
                          std::complex<double> homogeneous, const PhysicalConfig& config = {});

/// (1/hbar) * integral over [0, duration] of M x_p'^2, by adaptive quadrature
/// on `pieces` equal subintervals (one per oscillator period keeps long cycles tractable).
double drive_phase_quadrature(const ParticularSolution& xp, double mass, double duration,
                              const PhysicalConfig& config = {}, const numerics::QuadratureSpec& spec = {},
                              std::size_t pieces = 1);

/// Berry phase of the driven state over N tau0.
DrivenPhaseResult berry_phase_driven(const Representation& rep, int n, const DrivingForce& force,
                                     std::complex<double> homogeneous, const Commensurability& comm,
                                     const PhysicalConfig& config = {});

/// Berry phase over one forcing period in the representation C = 1, beta = 0, D = 0:
/// (2 pi w_f / hbar M) sum_n n^2 |f_n|^2 / (n^2 w_f^2 - w^2)^2. Needs no commensurability.
double berry_phase_special_rep(const DrivingForce& force, double mass, double omega, const PhysicalConfig& config = {});

/// chi - delta for the driven state over `duration`, computed from the
/// wavefunction itself: chi from spatial overlaps tracked against a frame
/// recentred on x_p and boosted by M x_p', delta from time quadrature of
/// driven_energy_expectation. Throws UndefinedPhaseError if not cyclic.
PhaseResult berry_phase_driven_oracle(const DrivenState& state, double duration);

}  // namespace shoberry
