#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "shoberry/numerics/ode.hpp"
#include "shoberry/numerics/propagator.hpp"
#include "shoberry/numerics/quadrature.hpp"
#include "shoberry/numerics/rational.hpp"
#include "shoberry/numerics/unwrap.hpp"
#include "shoberry/wavefunction.hpp"

using namespace shoberry;
using namespace shoberry::numerics;
using std::numbers::pi;
using cplx = std::complex<double>;

TEST_CASE("integrate_1d: elementary integrals") {
  CHECK(std::abs(integrate_1d([](double t) { return std::sin(t) * std::sin(t); }, 0.0, 2 * pi).value - pi) < 1e-12);
  CHECK(std::abs(integrate_1d([](double t) { return std::exp(t); }, 0.0, 1.0).value - (std::numbers::e - 1)) <
        1e-12);
  CHECK(integrate_1d([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("integrate_1d: dynamical-phase integrand for C = 2, beta = 0 over one period") {
  // E_0(t) = (1/4)[2/rho^2 + rho'^2/2 + rho^2/2] with rho^2 = cos^2 + 4 sin^2; the period integral is 5 pi / 4.
  auto energy = [](double t) {
    const double c = std::cos(t), s = std::sin(t);
    const double r2 = c * c + 4 * s * s;
    const double rdot = 3 * s * c / std::sqrt(r2);
    return 0.25 * (2 / r2 + 0.5 * rdot * rdot + 0.5 * r2);
  };
  CHECK(std::abs(integrate_1d(energy, 0.0, 2 * pi).value - 5 * pi / 4) < 1e-11);
}

TEST_CASE("integrate_1d: error estimate bounds the true error on an analytic battery") {
  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
  };
  const std::vector<Case> cases{
      {[](double x) { return x * x; }, 0, 1, 1.0 / 3},
      {[](double x) { return std::pow(x, 7); }, -1, 2, (256.0 - 1.0) / 8},
      {[](double x) { return std::exp(-x); }, 0, 10, 1 - std::exp(-10.0)},
      {[](double x) { return std::cos(x); }, 0, pi / 2, 1.0},
      {[](double x) { return std::sin(3 * x) * std::sin(3 * x); }, 0, pi, pi / 2},
      {[](double x) { return 1 / (1 + x * x); }, -1, 1, pi / 2},
      {[](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0)},
      {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3},
      {[](double x) { return std::log(x); }, 1, std::numbers::e, 1.0},
      {[](double x) { return std::exp(-x * x); }, -6, 6, std::sqrt(pi) * std::erf(6.0)},
      {[](double x) { return x * std::exp(x); }, 0, 1, 1.0},
      {[](double x) { return 1 / x; }, 1, 100, std::log(100.0)},
      {[](double x) { return std::cos(20 * x); }, 0, 1, std::sin(20.0) / 20},
      {[](double x) { return std::abs(x - 0.3); }, 0, 1, 0.5 * (0.09 + 0.49)},
      {[](double x) { return std::tanh(x); }, -2, 3, std::log(std::cosh(3.0) / std::cosh(2.0))},
      {[](double x) { return 1 / (2 + std::cos(x)); }, 0, 2 * pi, 2 * pi / std::sqrt(3.0)},
      {[](double x) { return std::exp(std::cos(x)); }, 0, 2 * pi, 2 * pi * std::cyl_bessel_i(0.0, 1.0)},
      {[](double x) { return x * std::sin(x); }, 0, pi, pi},
      {[](double x) { return std::pow(x, -0.5); }, 1, 4, 2.0},
      {[](double x) { return 1 / std::cosh(x) / std::cosh(x); }, -10, 10, 2 * std::tanh(10.0)},
      {[](double x) { return std::sin(x) / x; }, 1, 2, 0.6593299064355118},
      {[](double x) { return std::atan(x); }, 0, 1, pi / 4 - 0.5 * std::log(2.0)},
  };
  REQUIRE(cases.size() >= 20);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    const auto r = integrate_1d(cases[i].f, cases[i].a, cases[i].b);
    const double actual = std::abs(r.value - cases[i].exact);
    CHECK(actual <= std::max(r.error, 1e-15 * std::abs(cases[i].exact)) + 4e-16 * std::abs(cases[i].exact));
    CHECK(actual < std::max(1e-11, 1e-10 * std::abs(cases[i].exact)));
  }
}

TEST_CASE("integrate_1d: complex integrand and failure modes") {
  const auto r = integrate_1d([](double t) { return std::exp(cplx(0, t)); }, 0.0, pi / 2);
  CHECK(std::abs(r.value - cplx(1, 1)) < 1e-13);

  QuadratureSpec tight;
  tight.max_refinements = 2;
  CHECK_THROWS_AS(integrate_1d([](double x) { return std::sin(200 * x); }, 0.0, 10.0, tight), ConvergenceError);
  CHECK_THROWS_AS(integrate_1d([](double x) { return 1 / x; }, 0.0, 1.0), ConvergenceError);
  QuadratureSpec bad;
  bad.abs_tol = 0;
  CHECK_THROWS_AS(integrate_1d([](double x) { return x; }, 0.0, 1.0, bad), ValidationError);
}

TEST_CASE("integrate_panels converges on a localized Gaussian") {
  const auto r = integrate_panels([](double x) { return std::exp(-50 * x * x); }, -5.0, 5.0);
  CHECK(std::abs(r.value - std::sqrt(pi / 50)) < 1e-12);
}

TEST_CASE("unwrap_phase: examples") {
  std::vector<cplx> quarter;
  for (int k = 0; k <= 4; ++k) quarter.push_back(std::polar(1.0, k * pi / 2));
  const auto q = unwrap_phase(quarter, 0.01);
  for (int k = 0; k <= 4; ++k) CHECK(q[k] == doctest::Approx(k * pi / 2).epsilon(1e-14));

  const std::vector<cplx> constant(7, cplx(-2, 1));
  for (double v : unwrap_phase(constant)) CHECK(v == std::arg(cplx(-2, 1)));

  std::vector<cplx> down;
  for (int k = 0; k <= 64; ++k) down.push_back(std::polar(1.0, -4 * pi * k / 64));
  const auto d = unwrap_phase(down);
  for (std::size_t k = 1; k < d.size(); ++k) CHECK(d[k] < d[k - 1]);
  CHECK(std::abs(d.back() + 4 * pi) < 1e-12);
}

TEST_CASE("unwrap_phase: global phase equivariance and jump rejection") {
  std::vector<cplx> s, rotated;
  const double phi = 2.5;
  for (int k = 0; k <= 40; ++k) {
    const double theta = 0.3 * k + 0.2 * std::sin(k);
    s.push_back(std::polar(1.0 + 0.1 * k, theta));
    rotated.push_back(s.back() * std::polar(1.0, phi));
  }
  const auto a = unwrap_phase(s);
  const auto b = unwrap_phase(rotated);
  // b starts on the principal branch of arg(s0) + phi, which may differ from a[0] + phi by 2 pi.
  const double shift = b[0] - a[0];
  CHECK(std::abs(std::remainder(shift - phi, 2 * pi)) < 1e-12);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(b[k] - a[k] - shift) < 1e-12);

  const std::vector<cplx> jump{cplx(1, 0), cplx(-1, 1e-3)};
  CHECK_THROWS_AS(unwrap_phase(jump), PhaseJumpError);
}

TEST_CASE("canonical_angle and nearest_branch") {
  CHECK(canonical_angle(-pi / 2) == doctest::Approx(3 * pi / 2));
  CHECK(canonical_angle(2 * pi) == 0.0);
  CHECK(nearest_branch(0.1, 4 * pi) == doctest::Approx(4 * pi + 0.1));
}

TEST_CASE("rationalize: examples") {
  const auto two_thirds = rationalize(2.0 / 3.0, 1e-12);
  REQUIRE(two_thirds);
  CHECK(*two_thirds == Ratio{2, 3});
  const auto half = rationalize(0.5 + 1e-14, 1e-10);
  REQUIRE(half);
  CHECK(*half == Ratio{1, 2});
  CHECK_FALSE(rationalize(std::sqrt(2.0), 1e-12, 1'000'000));
  const auto big = rationalize(355.0 / 113.0, 1e-14);
  REQUIRE(big);
  CHECK(*big == Ratio{355, 113});
}

TEST_CASE("rk_integrate: harmonic period and driven solution") {
  const auto path = rk_integrate([](double x, double) { return -x; }, 1.0, 0.0, 0.0, 2 * pi, 8);
  REQUIRE(path.size() == 9);
  CHECK(std::abs(path.back().x - 1.0) < 1e-9);
  CHECK(std::abs(path.back().v) < 1e-9);
  for (const auto& s : path) CHECK(std::abs(s.x - std::cos(s.t)) < 1e-9);

  // x'' + 4x = cos t has the periodic solution cos(t)/3.
  const auto driven = rk_integrate([](double x, double t) { return std::cos(t) - 4 * x; }, 1.0 / 3, 0.0, 0.0,
                                   6 * pi, 30);
  for (const auto& s : driven) CHECK(std::abs(s.x - std::cos(s.t) / 3) < 1e-9);
}

namespace {

GridState stationary_grid(int n, std::size_t points) {
  const QuantumState state(Representation::stationary(), n);
  const double L = spatial_half_width(state);
  return GridState::sample([&](double x) { return psi(state, x, 0.0); }, -L, L, points, 0.0);
}

}  // namespace

TEST_CASE("propagate_schrodinger: stationary states pick up exp(-i E tau / hbar)") {
  const SchrodingerHamiltonian h{1.0, 1.0, 1.0, {}};
  for (int n : {0, 1}) {
    CAPTURE(n);
    const auto initial = stationary_grid(n, 512);
    check_resolution(initial);
    const double t_final = n == 0 ? 2 * pi : pi;
    const auto final_state = propagate_schrodinger(initial, h, t_final, 4000);
    const cplx overlap = inner_product(initial, final_state);
    CHECK(std::abs(overlap) > 1 - 1e-6);
    const double expected = n == 0 ? -pi : -1.5 * pi;
    CHECK(std::abs(std::remainder(std::arg(overlap) - expected, 2 * pi)) < 1e-6);
    CHECK(std::abs(norm_squared(final_state) - 1) < 1e-10);
  }
}

TEST_CASE("check_resolution rejects coarse and truncated grids") {
  CHECK_THROWS_AS(check_resolution(stationary_grid(0, 100)), ValidationError);
  CHECK_THROWS_AS(check_resolution(stationary_grid(0, 16)), ValidationError);
  const QuantumState state(Representation::stationary(), 0);
  const auto narrow = GridState::sample([&](double x) { return psi(state, x, 0.0); }, -2, 2, 256, 0.0);
  CHECK_THROWS_AS(check_resolution(narrow), ValidationError);
}

TEST_CASE("schrodinger_residual is small for an exact state and large for a wrong one") {
  const QuantumState state({1.0, 1.0, 2.0, 0.4}, 1);
  const SchrodingerHamiltonian h{1.0, 1.0, 1.0, {}};
  const double L = spatial_half_width(state);
  auto exact = [&](double x, double t) { return psi(state, x, t); };
  CHECK(schrodinger_residual(exact, h, 0.7, -L, L, 801, 1e-3, 1e-3) < 1e-6);
  auto wrong = [&](double x, double t) { return psi(state, x, 1.1 * t); };
  CHECK(schrodinger_residual(wrong, h, 0.7, -L, L, 801, 1e-3, 1e-3) > 1e-3);
}
