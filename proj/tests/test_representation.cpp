#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "shoberry/errors.hpp"
#include "shoberry/representation.hpp"

using namespace shoberry;
using std::numbers::pi;

namespace {

const std::vector<Representation> kGrid{
    {1.0, 1.0, 1.0, 0.0}, {1.0, 1.0, 2.0, 0.0}, {1.0, 1.0, 0.5, pi / 6}, {0.5, 2.0, 4.0, -pi / 3},
    {3.0, 0.5, 1.5, pi / 3}, {1.0, 1.0, -0.382, pi / 3}, {2.0, 3.0, 0.25, 2.5},
};

}  // namespace

TEST_CASE("validate: modes and violated constraints") {
  CHECK(validate({1, 1, 1, 0}, ValidationMode::Full));
  for (auto mode : {ValidationMode::FormulaOnly, ValidationMode::Full}) {
    const auto r = validate({1, 1, 1, pi / 2}, mode);
    CHECK_FALSE(r);
    CHECK(r.violated.find("cos") != std::string::npos);
  }
  CHECK(validate({1, 1, -0.382, pi / 3}, ValidationMode::FormulaOnly));
  CHECK_FALSE(validate({1, 1, -0.382, pi / 3}, ValidationMode::Full));
  CHECK_FALSE(validate({1, 1, 0.0, 0.0}, ValidationMode::FormulaOnly));
  CHECK_FALSE(validate({-1, 1, 1, 0}, ValidationMode::FormulaOnly));
  CHECK_FALSE(validate({1, 0, 1, 0}, ValidationMode::FormulaOnly));
  CHECK_THROWS_AS(require_valid({1, 1, 1, pi / 2}, ValidationMode::FormulaOnly), ValidationError);
  CHECK_NOTHROW(require_valid({1, 1, 2, 0.3}, ValidationMode::Full));
}

TEST_CASE("classical_pair: direct values and periodicity") {
  const auto a = classical_pair({1, 1, 1, 0}, 0.0);
  CHECK(a.u == 1.0);
  CHECK(a.v == 0.0);
  CHECK(a.u_dot == 0.0);
  CHECK(a.v_dot == doctest::Approx(1.0));

  const auto b = classical_pair({1, 2, 2, pi / 3}, 0.0);
  CHECK(b.u == doctest::Approx(1.0));
  CHECK(b.v == doctest::Approx(std::sqrt(3.0)));
  CHECK(std::abs(b.u_dot) < 1e-15);
  CHECK(b.v_dot == doctest::Approx(2.0));

  for (const auto& rep : kGrid) {
    for (double t : {0.0, 0.37, 1.9}) {
      const auto p = classical_pair(rep, t);
      const auto q = classical_pair(rep, t + rep.period());
      CHECK(std::abs(p.u - q.u) < 1e-12);
      CHECK(std::abs(p.v - q.v) < 1e-12);
      CHECK(std::abs(p.u_dot - q.u_dot) < 1e-11);
      CHECK(std::abs(p.v_dot - q.v_dot) < 1e-11);
    }
  }
}

TEST_CASE("rho: stationary circle, direct value and finite differences") {
  for (double t : {0.0, 0.5, 2.0, 7.0}) {
    CHECK(rho({1, 1, 1, 0}, t) == doctest::Approx(1.0));
    CHECK(std::abs(rho_dot({1, 1, 1, 0}, t)) < 1e-15);
  }
  CHECK(rho({1, 1, 2, 0}, pi / 4) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));

  const double h = 1e-4;
  for (const auto& rep : kGrid) {
    for (double t : {0.1, 0.8, 2.3}) {
      const double fd = (rho(rep, t + h) - rho(rep, t - h)) / (2 * h);
      CHECK(std::abs(rho_dot(rep, t) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
      const double fdd = (rho_dot(rep, t + h) - rho_dot(rep, t - h)) / (2 * h);
      CHECK(std::abs(rho_ddot(rep, t) - fdd) < 1e-6 * std::max(1.0, std::abs(fdd)));
    }
  }
}

TEST_CASE("rho: half-period symmetry, extremes and the Ermakov equation") {
  for (const auto& rep : kGrid) {
    const double omega = omega_invariant(rep) / rep.mass;
    for (int k = 0; k < 50; ++k) {
      const double t = rep.period() * k / 50.0;
      const double r = rho(rep, t);
      CHECK(std::abs(rho(rep, t + rep.half_period()) - r) < 1e-12);
      CHECK(r <= rho_max(rep) * (1 + 1e-12));
      CHECK(r >= rho_min(rep) * (1 - 1e-12));
      // rho'' + w^2 rho = (Omega/M)^2 / rho^3
      const double lhs = rho_ddot(rep, t) + rep.omega * rep.omega * r;
      CHECK(std::abs(lhs - omega * omega / (r * r * r)) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("omega_invariant matches the Wronskian at all times") {
  CHECK(omega_invariant({1, 1, 1, 0}) == 1.0);
  CHECK(omega_invariant({3, 2, 2, pi / 3}) == doctest::Approx(6.0).epsilon(1e-15));
  for (const auto& rep : kGrid) {
    for (double t : {0.0, 1.234, 5.0}) {
      CHECK(std::abs(wronskian(rep, t) - omega_invariant(rep)) < 1e-12 * std::max(1.0, std::abs(omega_invariant(rep))));
    }
  }
}

TEST_CASE("winding_angle: continuous, monotone and -pi sign(Omega) per half period") {
  for (const auto& rep : kGrid) {
    const double sign = omega_invariant(rep) > 0 ? 1.0 : -1.0;
    CHECK(winding_angle(rep, 0.0) == doctest::Approx(std::atan2(-rep.amplitude * std::sin(rep.phase_offset), 1.0)));
    for (int k = 1; k <= 4; ++k) {
      CHECK(std::abs(winding_angle(rep, k * rep.half_period()) - winding_angle(rep, 0.0) + k * pi * sign) < 1e-12);
    }
    double prev = winding_angle(rep, 0.0);
    for (int k = 1; k <= 400; ++k) {
      const double t = 2 * rep.period() * k / 400.0;
      const double now = winding_angle(rep, t);
      CHECK(sign * (now - prev) < 0.0);
      CHECK(std::abs(now - prev) < 0.5);
      prev = now;
    }
  }
}

TEST_CASE("trajectory: closed curves of the expected shape") {
  const auto circle = trajectory({1, 1, 1, 0}, 65);
  REQUIRE(circle.size() == 65);
  for (const auto& p : circle) CHECK(std::abs(p.u * p.u + p.v * p.v - 1) < 1e-14);

  const auto ellipse = trajectory({1, 1, 2, 0}, 101);
  for (const auto& p : ellipse) CHECK(std::abs(p.u * p.u + p.v * p.v / 4 - 1) < 1e-14);

  for (const auto& rep : kGrid) {
    const auto pts = trajectory(rep, 33);
    CHECK(pts.front().t == 0.0);
    CHECK(pts.back().t == doctest::Approx(rep.period()));
    CHECK(std::abs(pts.front().u - pts.back().u) < 1e-12);
    CHECK(std::abs(pts.front().v - pts.back().v) < 1e-12);
  }
  CHECK_THROWS_AS(trajectory({1, 1, 1, 0}, 1), ValidationError);
}
