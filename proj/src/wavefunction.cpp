#include "shoberry/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "shoberry/errors.hpp"

namespace shoberry {

namespace {

constexpr double kPi = std::numbers::pi;

// log[(Omega/pi hbar)^{1/4} / sqrt(2^n n! rho)]
double log_normalization(double omega_inv, double hbar, int n, double r) {
  const double dn = static_cast<double>(n);
  return 0.25 * std::log(omega_inv / (kPi * hbar)) -
         0.5 * (dn * std::numbers::ln2 + std::lgamma(dn + 1.0) + std::log(r));
}

// H_n(y) and H_{n-1}(y) together; the second is 0 for n = 0.
std::pair<double, double> hermite_pair(int n, double y) {
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * y * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur)) {
    throw ConvergenceError("Hermite recurrence overflowed for n=" + std::to_string(n) + ", x=" + std::to_string(y));
  }
  return {cur, prev};
}

}  // namespace

QuantumState::QuantumState(Representation rep, int n, PhysicalConfig config)
    : rep_(rep), n_(n), config_(config) {
  if (n < 0 || n > kMaxQuantumNumber) {
    throw ValidationError("quantum number n must lie in [0, " + std::to_string(kMaxQuantumNumber) + "], got " +
                          std::to_string(n));
  }
  config_.validate();
  require_valid(rep_, ValidationMode::Full);
}

double hermite(int n, double x) {
  if (n < 0) throw ValidationError("hermite: n must be nonnegative");
  return hermite_pair(n, x).first;
}

WavefunctionSnapshot::WavefunctionSnapshot(const QuantumState& state, double t) : n_(state.n()), t_(t) {
  const auto& rep = state.representation();
  const double hbar = state.hbar();
  const double om = omega_invariant(rep);
  rho_ = shoberry::rho(rep, t);
  const double rd = rho_dot(rep, t);
  scale_ = std::sqrt(om / hbar) / rho_;
  quadratic_ = Amplitude(-om / (rho_ * rho_), rep.mass * rd / rho_) / (2.0 * hbar);
  const double winding = (static_cast<double>(n_) + 0.5) * winding_angle(rep, t);
  prefactor_ = std::polar(std::exp(log_normalization(om, hbar, n_, rho_)), winding);
}

Amplitude WavefunctionSnapshot::operator()(double x) const {
  const double h = hermite_pair(n_, scale_ * x).first;
  return prefactor_ * std::exp(quadratic_ * (x * x)) * h;
}

Amplitude WavefunctionSnapshot::gradient(double x) const {
  // d/dx [e^{q x^2} H_n(s x)] = e^{q x^2} [2 q x H_n(s x) + 2 n s H_{n-1}(s x)]
  const auto [h, h_prev] = hermite_pair(n_, scale_ * x);
  const Amplitude g = std::exp(quadratic_ * (x * x));
  return prefactor_ * g * (2.0 * quadratic_ * x * h + 2.0 * static_cast<double>(n_) * scale_ * h_prev);
}

Amplitude psi(const QuantumState& state, double x, double t) { return WavefunctionSnapshot(state, t)(x); }

Amplitude frame_function(const QuantumState& state, double x, double t) {
  const auto& rep = state.representation();
  const double om = omega_invariant(rep);
  const double r = rho(rep, t);
  const double y = std::sqrt(om / state.hbar()) * x / r;
  const double chirp = rep.mass * rho_dot(rep, t) * x * x / (2.0 * state.hbar() * r);
  return std::polar(std::exp(log_normalization(om, state.hbar(), state.n(), r) - 0.5 * y * y), chirp) *
         hermite_pair(state.n(), y).first;
}

double spatial_half_width(const QuantumState& state) {
  const auto& rep = state.representation();
  return rho_max(rep) * std::sqrt(state.hbar() / omega_invariant(rep)) *
         (std::sqrt(2.0 * state.n() + 1.0) + 10.0);
}

std::complex<double> alpha(const Representation& rep, const PhysicalConfig& config, double t) {
  const double r = rho(rep, t);
  return std::complex<double>(omega_invariant(rep) / (r * r), -rep.mass * rho_dot(rep, t) / r) / (2.0 * config.hbar);
}

std::complex<double> alpha_dot(const Representation& rep, const PhysicalConfig& config, double t) {
  const double r = rho(rep, t);
  const double rd = rho_dot(rep, t);
  const double rdd = rho_ddot(rep, t);
  const double re = -2.0 * omega_invariant(rep) * rd / (r * r * r);
  const double im = -rep.mass * (rdd * r - rd * rd) / (r * r);
  return std::complex<double>(re, im) / (2.0 * config.hbar);
}

double energy_expectation(const QuantumState& state, double t) {
  const auto& rep = state.representation();
  const double om = omega_invariant(rep);
  const double r = rho(rep, t);
  const double rd = rho_dot(rep, t);
  const double m = rep.mass;
  const double w2 = rep.omega * rep.omega;
  return 0.5 * state.hbar() * (state.n() + 0.5) * (om / (m * r * r) + m * rd * rd / om + r * r * m * w2 / om);
}

double energy_expectation_quadrature(const QuantumState& state, double t) {
  const WavefunctionSnapshot snap(state, t);
  const auto& rep = state.representation();
  const double kinetic = state.hbar() * state.hbar() / (2.0 * rep.mass);
  const double spring = 0.5 * rep.mass * rep.omega * rep.omega;
  auto density = [&](double x) { return kinetic * std::norm(snap.gradient(x)) + spring * x * x * std::norm(snap(x)); };
  return integrate_space(state, density).value;
}

}  // namespace shoberry
