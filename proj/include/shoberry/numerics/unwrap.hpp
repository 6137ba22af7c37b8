#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "shoberry/errors.hpp"

namespace shoberry::numerics {

/// Raised when two consecutive samples are too far apart in phase for the
/// continuation to be unambiguous. Callers refine their sampling and retry.
class PhaseJumpError : public ConvergenceError {
 public:
  PhaseJumpError(std::size_t index, double jump);
  std::size_t index() const noexcept { return index_; }
  double jump() const noexcept { return jump_; }

 private:
  std::size_t index_;
  double jump_;
};

/// Default guard band below pi for accepted consecutive jumps.
inline constexpr double kUnwrapMargin = 0.1;

/// Continuous phase of a complex sequence, starting from the principal value
/// of the first sample. Every consecutive increment lies in (-pi, pi);
/// increments with magnitude >= pi - margin throw PhaseJumpError.
std::vector<double> unwrap_phase(std::span<const std::complex<double>> samples, double margin = kUnwrapMargin);

/// Same continuation applied to raw angles (any branch).
std::vector<double> unwrap_angles(std::span<const double> angles, double margin = kUnwrapMargin);

/// Maps an angle to the canonical interval [0, 2pi).
double canonical_angle(double angle);

/// The representative of `angle` (mod 2pi) closest to `reference`.
double nearest_branch(double angle, double reference);

}  // namespace shoberry::numerics
