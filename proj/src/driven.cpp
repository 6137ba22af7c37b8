#include "shoberry/driven.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shoberry/errors.hpp"
#include "shoberry/numerics/rational.hpp"
#include "shoberry/numerics/unwrap.hpp"

namespace shoberry {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

// e^{i x} - 1 without cancellation for small x.
std::complex<double> expm1_i(double x) {
  const double s = std::sin(0.5 * x);
  return {-2.0 * s * s, std::sin(x)};
}

// Sum over n > 0 of 2 Re(c_n e^{i n w t}) + c_0, ascending n.
template <class Weight>
double real_series(const std::map<int, std::complex<double>>& table, double omega_f, double t, Weight weight) {
  double sum = 0.0;
  for (auto it = table.lower_bound(0); it != table.end(); ++it) {
    const int n = it->first;
    const std::complex<double> term = weight(n) * it->second * std::polar(1.0, n * omega_f * t);
    sum += n == 0 ? term.real() : 2.0 * term.real();
  }
  return sum;
}

bool is_resonant(int n, double omega_f, double omega) {
  const double w2 = omega * omega;
  return std::abs(w2 - n * n * omega_f * omega_f) < kResonanceThreshold * w2;
}

}  // namespace

// ---------------------------------------------------------------------------
// DrivingForce

DrivingForce DrivingForce::from_coefficients(double omega_f, std::span<const FourierCoefficient> table) {
  if (!(omega_f > 0.0) || !std::isfinite(omega_f)) throw ValidationError("forcing frequency w_f must be positive");
  DrivingForce force;
  force.omega_f_ = omega_f;
  double scale = 0.0;
  for (const auto& c : table) {
    if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag())) {
      throw ValidationError("force coefficient f_" + std::to_string(c.n) + " is not finite");
    }
    if (force.coefficients_.contains(c.n)) {
      throw ValidationError("force coefficient f_" + std::to_string(c.n) + " given twice");
    }
    force.coefficients_[c.n] = c.value;
    scale = std::max(scale, std::abs(c.value));
  }
  const double tol = 1e-12 * std::max(scale, 1e-300);
  for (auto& [n, f] : force.coefficients_) {
    if (n == 0) {
      if (std::abs(f.imag()) > tol) throw ValidationError("f_0 must be real for a real force");
      f = {f.real(), 0.0};
    }
  }
  // Fill or check conjugate partners.
  std::vector<FourierCoefficient> missing;
  for (const auto& [n, f] : force.coefficients_) {
    if (n == 0) continue;
    auto partner = force.coefficients_.find(-n);
    if (partner == force.coefficients_.end()) {
      missing.push_back({-n, std::conj(f)});
    } else if (std::abs(partner->second - std::conj(f)) > tol) {
      throw ValidationError("force coefficients violate f_{-n} = conj(f_n) at n=" + std::to_string(n));
    }
  }
  for (const auto& c : missing) force.coefficients_[c.n] = c.value;
  // Exact conjugate symmetry from here on.
  for (auto& [n, f] : force.coefficients_) {
    if (n < 0) f = std::conj(force.coefficients_.at(-n));
  }
  return force;
}

double DrivingForce::period() const { return 2.0 * kPi / omega_f_; }

std::complex<double> DrivingForce::coefficient(int n) const {
  auto it = coefficients_.find(n);
  return it == coefficients_.end() ? std::complex<double>{} : it->second;
}

int DrivingForce::max_mode() const {
  int m = 0;
  for (const auto& [n, f] : coefficients_) m = std::max(m, std::abs(n));
  return m;
}

double DrivingForce::norm() const {
  double sum = 0.0;
  for (int k = 0; k <= max_mode(); ++k) {
    sum += std::norm(coefficient(k));
    if (k > 0) sum += std::norm(coefficient(-k));
  }
  return std::sqrt(sum);
}

double DrivingForce::operator()(double t) const {
  return real_series(coefficients_, omega_f_, t, [](int) { return 1.0; });
}

DrivingForce odd_square_wave(double omega_f, double amplitude, int max_mode) {
  std::vector<FourierCoefficient> table;
  for (int n = 1; n <= max_mode; n += 2) {
    table.push_back({n, 2.0 * amplitude / (kI * (kPi * n))});
  }
  return DrivingForce::from_coefficients(omega_f, table);
}

FourierDecomposition fourier_decompose(const std::function<double(double)>& force, double omega_f, int max_mode,
                                       double tail_tolerance, const numerics::QuadratureSpec& spec) {
  if (!(omega_f > 0.0)) throw ValidationError("forcing frequency w_f must be positive");
  if (max_mode < 0) throw ValidationError("truncation order must be nonnegative");
  const double tau = 2.0 * kPi / omega_f;

  std::vector<FourierCoefficient> table;
  double retained = 0.0;
  for (int n = 0; n <= max_mode; ++n) {
    auto integrand = [&](double t) { return force(t) * std::polar(1.0, -n * omega_f * t); };
    const std::complex<double> f = numerics::integrate_1d(integrand, 0.0, tau, spec).value / tau;
    table.push_back({n, n == 0 ? std::complex<double>(f.real(), 0.0) : f});
    retained += n == 0 ? std::norm(f) : 2.0 * std::norm(f);
  }
  const double power = numerics::integrate_1d([&](double t) { return force(t) * force(t); }, 0.0, tau, spec).value / tau;
  const double tail = power > 0.0 ? std::max(0.0, power - retained) / power : 0.0;
  if (tail > tail_tolerance) {
    throw ValidationError("Fourier series truncated at |n| <= " + std::to_string(max_mode) + " leaves a tail of " +
                          std::to_string(tail) + " of the force power (limit " + std::to_string(tail_tolerance) +
                          ")");
  }
  return {DrivingForce::from_coefficients(omega_f, table), power, tail};
}

// ---------------------------------------------------------------------------
// Commensurability

Commensurability commensurability(double tau0, double tau_f, double tolerance) {
  if (!(tau0 > 0.0) || !(tau_f > 0.0)) throw ValidationError("periods must be positive");
  const auto ratio = numerics::rationalize(tau0 / tau_f, tolerance);
  if (!ratio) {
    throw UndefinedPhaseError(
        "tau0/tau_f = " + std::to_string(tau0 / tau_f) +
        " has no rational form p/N with N <= 10^6 within tolerance; no joint period exists and the Berry phase is "
        "undefined in this representation");
  }
  return {ratio->numerator, ratio->denominator};
}

// ---------------------------------------------------------------------------
// Particular solution

double ParticularSolution::position(double t) const {
  const double modes = real_series(modes_, omega_f_, t, [](int) { return 1.0; });
  return modes + 2.0 * (homogeneous_ * std::polar(1.0, omega_ * t)).real();
}

double ParticularSolution::velocity(double t) const {
  const double wf = omega_f_;
  const double modes = real_series(modes_, wf, t, [wf](int n) { return kI * (n * wf); });
  return modes + 2.0 * (kI * omega_ * homogeneous_ * std::polar(1.0, omega_ * t)).real();
}

double ParticularSolution::acceleration(double t) const {
  const double wf = omega_f_;
  const double modes = real_series(modes_, wf, t, [wf](int n) { return -(n * wf) * (n * wf); });
  return modes - 2.0 * omega_ * omega_ * (homogeneous_ * std::polar(1.0, omega_ * t)).real();
}

std::vector<std::pair<double, std::complex<double>>> ParticularSolution::components() const {
  std::vector<std::pair<double, std::complex<double>>> out;
  for (const auto& [n, a] : modes_) out.emplace_back(n * omega_f_, a);
  if (homogeneous_ != std::complex<double>{}) {
    out.emplace_back(omega_, homogeneous_);
    out.emplace_back(-omega_, std::conj(homogeneous_));
  }
  return out;
}

namespace {

// |n| w_f = w means tau0/tau_f = 1/|n|, i.e. p = 1 and N = |n|.
std::string resonance_message(int n) {
  const int N = std::abs(n);
  return "resonance: force mode n = " + std::to_string(N) + " has n w_f = w (within 1e-9 w^2), so p = 1 and N = " +
         std::to_string(N) + ", which requires f_N = 0; the particular solution would be unbounded";
}

}  // namespace

ParticularSolution make_particular_solution(const DrivingForce& force, const Representation& rep,
                                            std::complex<double> homogeneous) {
  require_valid(rep, ValidationMode::FormulaOnly);
  if (!std::isfinite(homogeneous.real()) || !std::isfinite(homogeneous.imag())) {
    throw ValidationError("homogeneous amplitude D must be finite");
  }
  const double w2 = rep.omega * rep.omega;
  const double negligible = kVanishingCoefficient * force.norm();
  std::map<int, std::complex<double>> modes;
  for (const auto& [n, f] : force.coefficients()) {
    const double denominator = w2 - static_cast<double>(n) * n * force.omega_f() * force.omega_f();
    if (is_resonant(n, force.omega_f(), rep.omega)) {
      if (std::abs(f) <= negligible) continue;
      throw UndefinedPhaseError(resonance_message(n));
    }
    modes[n] = f / (rep.mass * denominator);
  }
  return ParticularSolution(force.omega_f(), rep.omega, std::move(modes), homogeneous);
}

ParticularSolution particular_solution(const DrivingForce& force, const Representation& rep,
                                       const Commensurability& comm, std::complex<double> homogeneous) {
  if (comm.p < 1 || comm.n < 1) throw ValidationError("commensurability integers must be positive");
  if (comm.p == 1 && comm.n <= force.max_mode()) {
    const auto resonant = force.coefficient(static_cast<int>(comm.n));
    if (std::abs(resonant) > kVanishingCoefficient * force.norm()) {
      throw UndefinedPhaseError("resonance: p = 1 requires f_N = 0 for N = " + std::to_string(comm.n) +
                                " (|f_N| = " + std::to_string(std::abs(resonant)) +
                                "); the particular solution would be unbounded");
    }
  }
  return make_particular_solution(force, rep, homogeneous);
}

double action_phase(const Representation& rep, const ParticularSolution& xp, double t0, double t) {
  // Integrand (M/2) sum_{j,k} c_j c_k (w^2 + nu_j nu_k) e^{i (nu_j + nu_k) z}; the double sum is real overall.
  const auto comps = xp.components();
  const double w2 = rep.omega * rep.omega;
  const double span = t - t0;
  const double frequency_floor = 1e-12 * rep.omega;
  std::complex<double> sum{};
  for (const auto& [nu_j, c_j] : comps) {
    for (const auto& [nu_k, c_k] : comps) {
      const double sigma = nu_j + nu_k;
      const std::complex<double> weight = c_j * c_k * (w2 + nu_j * nu_k);
      if (std::abs(sigma) < frequency_floor) {
        sum += weight * span;
      } else {
        sum += weight * std::polar(1.0, sigma * t0) * expm1_i(sigma * span) / (kI * sigma);
      }
    }
  }
  return 0.5 * rep.mass * sum.real();
}

double action_phase_quadrature(const Representation& rep, const ParticularSolution& xp, double t0, double t,
                               const numerics::QuadratureSpec& spec) {
  const double w2 = rep.omega * rep.omega;
  auto integrand = [&](double z) {
    const double x = xp.position(z);
    const double v = xp.velocity(z);
    return w2 * x * x - v * v;
  };
  return 0.5 * rep.mass * numerics::integrate_1d(integrand, t0, t, spec).value;
}

// ---------------------------------------------------------------------------
// Driven wavefunctions

DrivenState::DrivenState(QuantumState base, DrivingForce force, ParticularSolution xp)
    : base_(std::move(base)), force_(std::move(force)), xp_(std::move(xp)) {}

DrivenSnapshot::DrivenSnapshot(const DrivenState& state, double t)
    : base_(state.base(), t),
      center_(state.particular().position(t)),
      momentum_(state.base().representation().mass * state.particular().velocity(t)),
      action_(action_phase(state.base().representation(), state.particular(), 0.0, t)),
      hbar_(state.base().hbar()) {}

Amplitude DrivenSnapshot::operator()(double x) const {
  return std::polar(1.0, (momentum_ * x + action_) / hbar_) * base_(x - center_);
}

Amplitude DrivenSnapshot::gradient(double x) const {
  const auto phase = std::polar(1.0, (momentum_ * x + action_) / hbar_);
  return phase * (kI * (momentum_ / hbar_) * base_(x - center_) + base_.gradient(x - center_));
}

Amplitude psi_driven(const DrivenState& state, double x, double t) { return DrivenSnapshot(state, t)(x); }

namespace {

template <class F>
auto integrate_around(const DrivenState& state, double center, F&& f) {
  const double L = spatial_half_width(state.base());
  return numerics::integrate_panels(std::forward<F>(f), center - L, center + L, kSpatialTolerance, 16);
}

}  // namespace

double driven_energy_expectation(const DrivenState& state, double t) {
  const auto& rep = state.base().representation();
  const double x = state.particular().position(t);
  const double v = state.particular().velocity(t);
  return energy_expectation(state.base(), t) + 0.5 * rep.mass * v * v +
         0.5 * rep.mass * rep.omega * rep.omega * x * x - state.force()(t) * x;
}

double driven_energy_expectation_quadrature(const DrivenState& state, double t) {
  const DrivenSnapshot snap(state, t);
  const auto& rep = state.base().representation();
  const double kinetic = state.base().hbar() * state.base().hbar() / (2.0 * rep.mass);
  const double spring = 0.5 * rep.mass * rep.omega * rep.omega;
  const double f = state.force()(t);
  auto density = [&](double x) {
    return kinetic * std::norm(snap.gradient(x)) + (spring * x * x - f * x) * std::norm(snap(x));
  };
  return integrate_around(state, snap.center(), density).value;
}

// ---------------------------------------------------------------------------
// Driven Berry phases

double drive_phase_closed(const DrivingForce& force, const Representation& rep, const Commensurability& comm,
                          std::complex<double> homogeneous, const PhysicalConfig& config) {
  require_valid(rep, ValidationMode::FormulaOnly);
  config.validate();
  const double p = static_cast<double>(comm.p);
  const double big_n = static_cast<double>(comm.n);
  const double w = rep.omega;
  const double m = rep.mass;
  double series = 0.0;
  for (int k = 1; k <= force.max_mode(); ++k) {
    for (int n : {k, -k}) {
      const double f2 = std::norm(force.coefficient(n));
      if (f2 == 0.0) continue;
      const double gap = p * p * n * n - big_n * big_n;
      if (gap == 0.0) {
        throw UndefinedPhaseError("resonance: mode n=" + std::to_string(n) + " satisfies p n = N with f_n != 0");
      }
      series += static_cast<double>(n) * n * f2 / (gap * gap);
    }
  }
  const double forced = 2.0 * kPi * big_n * big_n * big_n * p * p / (config.hbar * m * w * w * w) * series;
  // Both homogeneous components D e^{iwt} and conj(D) e^{-iwt} contribute w^2 |D|^2 to the mean of x_p'^2.
  const double free = 4.0 * kPi * m * big_n * w * std::norm(homogeneous) / config.hbar;
  return forced + free;
}

double drive_phase_quadrature(const ParticularSolution& xp, double mass, double duration,
                              const PhysicalConfig& config, const numerics::QuadratureSpec& spec,
                              std::size_t pieces) {
  config.validate();
  if (pieces == 0) throw ValidationError("drive_phase_quadrature: pieces must be positive");
  auto integrand = [&](double t) {
    const double v = xp.velocity(t);
    return mass * v * v;
  };
  const double width = duration / static_cast<double>(pieces);
  double total = 0.0;
  for (std::size_t i = 0; i < pieces; ++i) {
    const double a = width * static_cast<double>(i);
    const double b = i + 1 == pieces ? duration : width * static_cast<double>(i + 1);
    total += numerics::integrate_1d(integrand, a, b, spec).value;
  }
  return total / config.hbar;
}

DrivenPhaseResult berry_phase_driven(const Representation& rep, int n, const DrivingForce& force,
                                     std::complex<double> homogeneous, const Commensurability& comm,
                                     const PhysicalConfig& config) {
  const auto xp = particular_solution(force, rep, comm, homogeneous);
  DrivenPhaseResult r;
  r.p = comm.p;
  r.n_periods = comm.n;
  r.duration = static_cast<double>(comm.n) * rep.period();
  r.undriven_part = static_cast<double>(comm.n) * berry_phase(rep, n, 2).gamma;
  r.drive_closed = drive_phase_closed(force, rep, comm, homogeneous, config);
  r.drive_quadrature = drive_phase_quadrature(xp, rep.mass, r.duration, config, {}, static_cast<std::size_t>(comm.n));
  r.total = r.undriven_part + r.drive_closed;
  return r;
}

double berry_phase_special_rep(const DrivingForce& force, double mass, double omega, const PhysicalConfig& config) {
  if (!(mass > 0.0) || !(omega > 0.0)) throw ValidationError("mass and frequency must be positive");
  config.validate();
  const double wf = force.omega_f();
  double series = 0.0;
  for (int k = 1; k <= force.max_mode(); ++k) {
    for (int n : {k, -k}) {
      const double f2 = std::norm(force.coefficient(n));
      if (f2 == 0.0) continue;
      if (is_resonant(n, wf, omega)) {
        throw UndefinedPhaseError(resonance_message(n));
      }
      const double gap = n * n * wf * wf - omega * omega;
      series += static_cast<double>(n) * n * f2 / (gap * gap);
    }
  }
  return 2.0 * kPi * wf / (config.hbar * mass) * series;
}

PhaseResult berry_phase_driven_oracle(const DrivenState& state, double duration) {
  if (!(duration > 0.0)) throw ValidationError("evolution time must be positive");
  const auto& base = state.base();
  const auto& rep = base.representation();
  const double hbar = base.hbar();

  // Frame: unwound reference state centred on x_p and boosted by M x_p'.
  auto frame_overlap = [&](double t) {
    const DrivenSnapshot snap(state, t);
    return integrate_around(state, snap.center(), [&](double x) {
             const auto boost = std::polar(1.0, -snap.momentum() * x / hbar);
             return std::conj(frame_function(base, x - snap.center(), t)) * boost * snap(x);
           })
        .value;
  };

  const double halves = std::max(1.0, std::ceil(duration / rep.half_period() - 1e-9));
  auto samples = static_cast<std::size_t>(16.0 * halves);
  const auto max_samples = static_cast<std::size_t>(halves) << 14;
  std::vector<std::complex<double>> overlaps;
  for (;;) {
    overlaps.resize(samples + 1);
    for (std::size_t k = 0; k <= samples; ++k) {
      overlaps[k] = frame_overlap(duration * static_cast<double>(k) / static_cast<double>(samples));
    }
    double largest = 0.0;
    for (std::size_t k = 1; k <= samples; ++k) {
      largest = std::max(largest, std::abs(std::arg(overlaps[k] / overlaps[k - 1])));
    }
    if (largest < kTrackingStep) break;
    if (samples * 2 > max_samples) throw ConvergenceError("driven phase tracking did not resolve the evolution");
    samples *= 2;
  }
  const auto tracked = numerics::unwrap_phase(overlaps);
  const double tracked_phase = tracked.back() - tracked.front();

  const DrivenSnapshot initial(state, 0.0);
  const DrivenSnapshot final_state(state, duration);
  const auto overlap =
      integrate_around(state, initial.center(), [&](double x) { return std::conj(initial(x)) * final_state(x); })
          .value;
  if (std::abs(overlap) < kCyclicFidelity) {
    throw UndefinedPhaseError("driven evolution over t=" + std::to_string(duration) + " is not cyclic (fidelity " +
                              std::to_string(std::abs(overlap)) + ")");
  }
  const double chi = numerics::nearest_branch(std::arg(overlap), tracked_phase);
  if (std::abs(chi - tracked_phase) > 1e-6) {
    throw ConvergenceError("tracked driven phase and endpoint overlap disagree");
  }

  const double energy =
      numerics::integrate_1d([&](double t) { return driven_energy_expectation(state, t); }, 0.0, duration).value;
  return make_phase_result(chi, -energy / hbar, duration);
}

}  // namespace shoberry
