#include "shoberry/numerics/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "shoberry/errors.hpp"

namespace shoberry::numerics {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(std::vector<std::complex<double>>& data, int sign) {
    std::lock_guard lock(planner_mutex());
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    // FFTW_ESTIMATE never times candidate algorithms, so the chosen plan (and the rounding) is reproducible.
    plan_ = fftw_plan_dft_1d(static_cast<int>(data.size()), buffer, buffer, sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw ConvergenceError("FFTW failed to create a plan");
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<double> wavenumbers(std::size_t n, double dx) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const auto signed_j = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    k[j] = dk * signed_j;
  }
  return k;
}

double edge_ratio(const std::vector<std::complex<double>>& values, std::size_t lo, std::size_t hi) {
  double peak = 0.0;
  for (const auto& z : values) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 1.0;
  return std::max(std::abs(values[lo]), std::abs(values[hi])) / peak;
}

}  // namespace

GridState GridState::sample(const std::function<std::complex<double>(double)>& f, double x_min, double x_max,
                            std::size_t points, double t) {
  GridState state{x_min, x_max, std::vector<std::complex<double>>(points), t};
  for (std::size_t j = 0; j < points; ++j) state.values[j] = f(state.position(j));
  return state;
}

double norm_squared(const GridState& state) {
  double sum = 0.0;
  for (const auto& z : state.values) sum += std::norm(z);
  return sum * state.dx();
}

std::complex<double> inner_product(const GridState& a, const GridState& b) {
  if (a.points() != b.points() || a.x_min != b.x_min || a.x_max != b.x_max) {
    throw ValidationError("inner_product: grids differ");
  }
  std::complex<double> sum{};
  for (std::size_t j = 0; j < a.points(); ++j) sum += std::conj(a.values[j]) * b.values[j];
  return sum * a.dx();
}

void check_resolution(const GridState& state) {
  const std::size_t n = state.points();
  if (n < 64 || !is_power_of_two(n)) {
    throw ValidationError("propagator grid must have a power-of-two point count >= 64 (got " + std::to_string(n) +
                          ")");
  }
  const double norm = norm_squared(state);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("propagator state has zero or non-finite norm");

  double mean = 0.0, second = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = std::norm(state.values[j]) * state.dx() / norm;
    const double x = state.position(j);
    mean += w * x;
    second += w * x * x;
  }
  const double width = std::sqrt(std::max(0.0, second - mean * mean));
  if (width < 8.0 * state.dx()) {
    throw ValidationError("propagator grid under-resolves the state: width " + std::to_string(width) +
                          " spans fewer than 8 nodes");
  }
  if (edge_ratio(state.values, 0, n - 1) > 1e-10) {
    throw ValidationError("propagator domain truncates the state: edge amplitude exceeds 1e-10 of peak");
  }

  auto spectrum = state.values;
  FftPlan forward(spectrum, FFTW_FORWARD);
  forward.execute();
  // Highest |k| sits at index n/2; its neighbours bracket the Nyquist edge.
  if (edge_ratio(spectrum, n / 2 - 1, n / 2) > 1e-10) {
    throw ValidationError("propagator grid aliases the state: momentum tail exceeds 1e-10 of peak");
  }
}

GridState propagate_schrodinger(GridState state, const SchrodingerHamiltonian& h, double t_final,
                                std::size_t steps) {
  if (steps == 0) throw ValidationError("propagate_schrodinger: steps must be positive");
  if (!(h.mass > 0.0) || !(h.hbar > 0.0)) throw ValidationError("propagate_schrodinger: mass and hbar must be positive");
  check_resolution(state);

  const std::size_t n = state.points();
  const double dt = (t_final - state.t) / static_cast<double>(steps);
  const double dx = state.dx();
  const auto k = wavenumbers(n, dx);

  std::vector<std::complex<double>> kinetic(n);
  for (std::size_t j = 0; j < n; ++j) {
    kinetic[j] = std::polar(1.0 / static_cast<double>(n), -h.hbar * k[j] * k[j] * dt / (2.0 * h.mass));
  }

  std::vector<double> x(n);
  std::vector<double> harmonic(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = state.position(j);
    harmonic[j] = 0.5 * h.mass * h.omega * h.omega * x[j] * x[j];
  }

  FftPlan forward(state.values, FFTW_FORWARD);
  FftPlan backward(state.values, FFTW_BACKWARD);
  std::vector<std::complex<double>> half_kick(n);
  const double t0 = state.t;

  auto fill_half_kick = [&](double t_mid) {
    const double f = h.force ? h.force(t_mid) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = harmonic[j] - f * x[j];
      half_kick[j] = std::polar(1.0, -v * dt / (2.0 * h.hbar));
    }
  };
  if (!h.force) fill_half_kick(0.0);

  for (std::size_t s = 0; s < steps; ++s) {
    if (h.force) fill_half_kick(t0 + (static_cast<double>(s) + 0.5) * dt);
    for (std::size_t j = 0; j < n; ++j) state.values[j] *= half_kick[j];
    forward.execute();
    for (std::size_t j = 0; j < n; ++j) state.values[j] *= kinetic[j];
    backward.execute();
    for (std::size_t j = 0; j < n; ++j) state.values[j] *= half_kick[j];
  }
  state.t = t_final;
  return state;
}

double schrodinger_residual(const std::function<std::complex<double>(double, double)>& psi,
                            const SchrodingerHamiltonian& hamiltonian, double t, double x_min, double x_max,
                            std::size_t points, double dt, double dx) {
  if (points < 2 || !(x_max > x_min)) throw ValidationError("residual grid needs two or more points on a nonempty interval");
  if (!(dt > 0.0) || !(dx > 0.0)) throw ValidationError("finite-difference steps must be positive");
  const auto& h = hamiltonian;
  const double force = h.force ? h.force(t) : 0.0;
  const std::complex<double> i_hbar(0.0, h.hbar);
  double residual = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    const double x = x_min + (x_max - x_min) * static_cast<double>(j) / static_cast<double>(points - 1);
    const auto d_t = (-psi(x, t + 2.0 * dt) + 8.0 * psi(x, t + dt) - 8.0 * psi(x, t - dt) + psi(x, t - 2.0 * dt)) /
                     (12.0 * dt);
    const auto center = psi(x, t);
    const auto d_xx = (-psi(x + 2.0 * dx, t) + 16.0 * psi(x + dx, t) - 30.0 * center + 16.0 * psi(x - dx, t) -
                       psi(x - 2.0 * dx, t)) /
                      (12.0 * dx * dx);
    const double potential = 0.5 * h.mass * h.omega * h.omega * x * x - force * x;
    const auto h_psi = -h.hbar * h.hbar / (2.0 * h.mass) * d_xx + potential * center;
    residual += std::norm(i_hbar * d_t - h_psi);
    scale += std::norm(h_psi);
  }
  if (scale == 0.0) throw ValidationError("H psi vanishes on the residual grid");
  return std::sqrt(residual / scale);
}

}  // namespace shoberry::numerics
