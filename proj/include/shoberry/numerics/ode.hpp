#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace shoberry::numerics {

struct OdeSample {
  double t;
  double x;
  double v;
};

/// Acceleration of a one-dimensional second-order system, x'' = g(x, t).
using Acceleration = std::function<double(double x, double t)>;

inline constexpr double kOdeTolerance = 1e-11;

/// Adaptive Dormand-Prince 5(4) integration from (x0, v0) at times.front(),
/// reporting the state at every requested time (ascending). Steps are
/// controlled to land exactly on the requested times.
std::vector<OdeSample> rk_integrate(const Acceleration& g, double x0, double v0, std::span<const double> times,
                                    double tolerance = kOdeTolerance);

/// Convenience overload sampling `samples` + 1 equally spaced times on [t0, t1].
std::vector<OdeSample> rk_integrate(const Acceleration& g, double x0, double v0, double t0, double t1,
                                    std::size_t samples, double tolerance = kOdeTolerance);

}  // namespace shoberry::numerics
