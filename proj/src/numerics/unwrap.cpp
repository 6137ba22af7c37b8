#include "shoberry/numerics/unwrap.hpp"

#include <cmath>
#include <string>

namespace shoberry::numerics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Principal representative of an increment in [-pi, pi).
double wrap_increment(double d) { return d - kTwoPi * std::floor((d + kPi) / kTwoPi); }

}  // namespace

PhaseJumpError::PhaseJumpError(std::size_t index, double jump)
    : ConvergenceError("phase jump of " + std::to_string(jump) + " rad at sample " + std::to_string(index) +
                       " is too large to unwrap; refine the sampling"),
      index_(index),
      jump_(jump) {}

std::vector<double> unwrap_angles(std::span<const double> angles, double margin) {
  std::vector<double> out;
  out.reserve(angles.size());
  if (angles.empty()) return out;
  out.push_back(angles.front());
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double step = wrap_increment(angles[i] - angles[i - 1]);
    if (std::abs(step) >= kPi - margin) throw PhaseJumpError(i, step);
    out.push_back(out.back() + step);
  }
  return out;
}

std::vector<double> unwrap_phase(std::span<const std::complex<double>> samples, double margin) {
  std::vector<double> angles;
  angles.reserve(samples.size());
  for (const auto& z : samples) angles.push_back(std::arg(z));
  return unwrap_angles(angles, margin);
}

double canonical_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double nearest_branch(double angle, double reference) {
  return reference + wrap_increment(angle - reference);
}

}  // namespace shoberry::numerics
