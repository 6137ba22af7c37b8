#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace shoberry::numerics {

/// Wavefunction sampled on a periodic uniform grid x_j = x_min + j*dx,
/// j = 0..points-1, dx = (x_max - x_min)/points.
struct GridState {
  double x_min = 0.0;
  double x_max = 0.0;
  std::vector<std::complex<double>> values;
  double t = 0.0;

  std::size_t points() const { return values.size(); }
  double dx() const { return (x_max - x_min) / static_cast<double>(values.size()); }
  double position(std::size_t j) const { return x_min + dx() * static_cast<double>(j); }

  /// Samples `f(x)` on a grid of `points` nodes at time t.
  static GridState sample(const std::function<std::complex<double>(double)>& f, double x_min, double x_max,
                          std::size_t points, double t);
};

/// H = p^2/2M + M w^2 x^2/2 - F(t) x. An empty `force` means F = 0.
struct SchrodingerHamiltonian {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  std::function<double(double)> force;
};

/// Discrete L2 norm squared, sum |psi_j|^2 dx.
double norm_squared(const GridState& state);

/// Discrete inner product <a|b> = sum conj(a_j) b_j dx. Grids must match.
std::complex<double> inner_product(const GridState& a, const GridState& b);

/// Throws ValidationError unless the grid resolves the state: points is a
/// power of two >= 64, the spatial RMS width spans at least 8 nodes, and both
/// the position-space and momentum-space amplitudes at the grid edges are
/// below 1e-10 of their peaks.
void check_resolution(const GridState& state);

/// Second-order (Strang) split-operator evolution from state.t to t_final in
/// `steps` equal steps. The potential is evaluated at each step's midpoint.
GridState propagate_schrodinger(GridState initial, const SchrodingerHamiltonian& hamiltonian, double t_final,
                                std::size_t steps);

/// Relative residual ||i hbar d_t psi - H psi|| / ||H psi|| of a closed-form
/// wavefunction psi(x, t) on `points` equally spaced nodes of [x_min, x_max]
/// at time t. Both derivatives use fourth-order central differences with
/// steps dt and dx.
double schrodinger_residual(const std::function<std::complex<double>(double, double)>& psi,
                            const SchrodingerHamiltonian& hamiltonian, double t, double x_min, double x_max,
                            std::size_t points, double dt, double dx);

}  // namespace shoberry::numerics
