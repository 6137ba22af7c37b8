#include "shoberry/numerics/ode.hpp"

#include <array>
#include <exception>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "shoberry/errors.hpp"

namespace shoberry::numerics {

namespace odeint = boost::numeric::odeint;

std::vector<OdeSample> rk_integrate(const Acceleration& g, double x0, double v0, std::span<const double> times,
                                    double tolerance) {
  using State = std::array<double, 2>;
  std::vector<OdeSample> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ValidationError("rk_integrate: sample times must be strictly ascending");
  }
  if (times.size() == 1) {
    out.push_back({times.front(), x0, v0});
    return out;
  }

  auto system = [&g](const State& s, State& ds, double t) {
    ds[0] = s[1];
    ds[1] = g(s[0], t);
  };
  auto observer = [&out](const State& s, double t) { out.push_back({t, s[0], s[1]}); };

  State state{x0, v0};
  auto stepper = odeint::make_controlled(tolerance, tolerance, odeint::runge_kutta_dopri5<State>());
  const double dt0 = (times[1] - times[0]) * 1e-2;
  try {
    odeint::integrate_times(stepper, system, state, times.begin(), times.end(), dt0, observer,
                            odeint::max_step_checker(1'000'000));
  } catch (const odeint::odeint_error& e) {
    throw ConvergenceError(std::string("rk_integrate: step control failed: ") + e.what());
  }
  return out;
}

std::vector<OdeSample> rk_integrate(const Acceleration& g, double x0, double v0, double t0, double t1,
                                    std::size_t samples, double tolerance) {
  if (samples < 1) throw ValidationError("rk_integrate: need at least one interval");
  std::vector<double> times(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i) {
    times[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples);
  }
  times.back() = t1;
  return rk_integrate(g, x0, v0, times, tolerance);
}

}  // namespace shoberry::numerics
