#include "shoberry/representation.hpp"

#include <cmath>
#include <sstream>

#include "shoberry/errors.hpp"

namespace shoberry {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(const Representation& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "(M=" << rep.mass << ", w=" << rep.omega << ", C=" << rep.amplitude << ", beta=" << rep.phase_offset << ")";
  return os.str();
}

}  // namespace

void PhysicalConfig::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ValidationError("hbar must be positive and finite");
}

ValidationReport validate(const Representation& rep, ValidationMode mode) {
  auto fail = [&rep](const std::string& what) { return ValidationReport{false, what + " for " + describe(rep)}; };
  if (!std::isfinite(rep.mass) || !std::isfinite(rep.omega) || !std::isfinite(rep.amplitude) ||
      !std::isfinite(rep.phase_offset)) {
    return fail("parameters must be finite");
  }
  if (!(rep.mass > 0.0)) return fail("mass M must be positive");
  if (!(rep.omega > 0.0)) return fail("angular frequency w must be positive");
  if (rep.amplitude == 0.0) return fail("amplitude C must be nonzero");
  const double cos_beta = std::cos(rep.phase_offset);
  if (!(std::abs(cos_beta) > kCosBetaEpsilon)) {
    return fail("|cos(beta)| must exceed 1e-9 (beta may not be an odd multiple of pi/2)");
  }
  if (mode == ValidationMode::Full && !(rep.amplitude * cos_beta > 0.0)) {
    return fail("C cos(beta) must be positive for normalizable wavefunctions (Omega > 0)");
  }
  return {};
}

void require_valid(const Representation& rep, ValidationMode mode) {
  if (auto report = validate(rep, mode); !report) throw ValidationError(report.violated);
}

ClassicalPair classical_pair(const Representation& rep, double t) {
  const double wt = rep.omega * t;
  const double shifted = wt + rep.phase_offset;
  return {std::cos(wt), rep.amplitude * std::sin(shifted), -rep.omega * std::sin(wt),
          rep.amplitude * rep.omega * std::cos(shifted)};
}

double rho(const Representation& rep, double t) {
  const auto p = classical_pair(rep, t);
  const double r = std::hypot(p.u, p.v);
  if (!(r > 0.0)) throw ConvergenceError("rho underflowed to zero for " + describe(rep));
  return r;
}

double rho_dot(const Representation& rep, double t) {
  const auto p = classical_pair(rep, t);
  return (p.u * p.u_dot + p.v * p.v_dot) / rho(rep, t);
}

double rho_ddot(const Representation& rep, double t) {
  // d/dt (u u' + v v') = u'^2 + v'^2 - w^2 rho^2 since u'' = -w^2 u and v'' = -w^2 v.
  const auto p = classical_pair(rep, t);
  const double r = rho(rep, t);
  const double rd = (p.u * p.u_dot + p.v * p.v_dot) / r;
  const double w2 = rep.omega * rep.omega;
  return (p.u_dot * p.u_dot + p.v_dot * p.v_dot - w2 * r * r - rd * rd) / r;
}

namespace {

// Eigenvalues of [[1 + C^2 sin^2 b, C^2 sin b cos b], [., C^2 cos^2 b]]: trace 1 + C^2, det C^2 cos^2 b.
std::pair<double, double> rho_squared_extremes(const Representation& rep) {
  const double c2 = rep.amplitude * rep.amplitude;
  const double trace = 1.0 + c2;
  const double cb = std::cos(rep.phase_offset);
  const double det = c2 * cb * cb;
  const double disc = std::sqrt(std::max(0.0, trace * trace - 4.0 * det));
  const double hi = 0.5 * (trace + disc);
  return {det / hi, hi};  // small root via det / large root avoids cancellation
}

}  // namespace

double rho_max(const Representation& rep) { return std::sqrt(rho_squared_extremes(rep).second); }

double rho_min(const Representation& rep) { return std::sqrt(rho_squared_extremes(rep).first); }

double omega_invariant(const Representation& rep) {
  return rep.mass * rep.amplitude * rep.omega * std::cos(rep.phase_offset);
}

double wronskian(const Representation& rep, double t) {
  const auto p = classical_pair(rep, t);
  return rep.mass * (p.u * p.v_dot - p.v * p.u_dot);
}

double winding_angle(const Representation& rep, double t) {
  const double half = rep.half_period();
  const double turns = std::floor(t / half);
  const double r = t - turns * half;
  const double direction = omega_invariant(rep) > 0.0 ? -1.0 : 1.0;

  const auto p0 = classical_pair(rep, 0.0);
  const auto pr = classical_pair(rep, r);
  const double start = std::atan2(-p0.v, p0.u);
  double d = std::atan2(-pr.v, pr.u) - start;
  // Within a half period the true increment is direction * [0, pi); any window of
  // width 2 pi containing that range with margin identifies it unambiguously.
  if (direction < 0.0) {
    while (d > 0.5 * kPi) d -= 2.0 * kPi;
    while (d <= -1.5 * kPi) d += 2.0 * kPi;
  } else {
    while (d < -0.5 * kPi) d += 2.0 * kPi;
    while (d >= 1.5 * kPi) d -= 2.0 * kPi;
  }
  return start + d + direction * kPi * turns;
}

std::vector<TrajectoryPoint> trajectory(const Representation& rep, std::size_t samples) {
  if (samples < 2) throw ValidationError("trajectory needs at least 2 samples");
  std::vector<TrajectoryPoint> out;
  out.reserve(samples);
  const double tau = rep.period();
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = tau * static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto p = classical_pair(rep, t);
    out.push_back({t, p.u, p.v, std::hypot(p.u, p.v)});
  }
  return out;
}

}  // namespace shoberry
