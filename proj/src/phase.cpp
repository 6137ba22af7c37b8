#include "shoberry/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shoberry/errors.hpp"
#include "shoberry/numerics/unwrap.hpp"

namespace shoberry {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_half_periods(int half_periods) {
  if (half_periods < 1) throw ValidationError("half_periods must be a positive integer");
}

// Largest refinement of the tracking grid, per half period.
constexpr std::size_t kMaxSamplesPerHalfPeriod = std::size_t{1} << 14;

}  // namespace

PhaseResult make_phase_result(double chi, double delta, double duration) {
  const double gamma = chi - delta;
  return {chi, delta, gamma, numerics::canonical_angle(gamma), duration};
}

double overall_phase_closed(int n, int half_periods) {
  if (n < 0) throw ValidationError("n must be nonnegative");
  require_positive_half_periods(half_periods);
  return static_cast<double>(half_periods) * (-(n + 0.5) * kPi);
}

double dynamical_phase_closed(const Representation& rep, int n, int half_periods) {
  if (n < 0) throw ValidationError("n must be nonnegative");
  require_positive_half_periods(half_periods);
  require_valid(rep, ValidationMode::FormulaOnly);
  const double c = rep.amplitude;
  const double ratio = (1.0 + c * c) / (2.0 * c * std::cos(rep.phase_offset));
  return static_cast<double>(half_periods) * (-(n + 0.5) * kPi * ratio);
}

PhaseResult berry_phase(const Representation& rep, int n, int half_periods) {
  const double chi = overall_phase_closed(n, half_periods);
  const double delta = dynamical_phase_closed(rep, n, half_periods);
  return make_phase_result(chi, delta, half_periods * rep.half_period());
}

OverallPhaseEstimate overall_phase_oracle(const QuantumState& state, double duration) {
  if (!(duration > 0.0)) throw ValidationError("evolution time must be positive");
  const auto& rep = state.representation();

  auto frame_overlap = [&state](double t) {
    const WavefunctionSnapshot snap(state, t);
    return integrate_space(state, [&](double x) { return std::conj(frame_function(state, x, t)) * snap(x); }).value;
  };

  const double halves = std::max(1.0, std::ceil(duration / rep.half_period() - 1e-9));
  auto samples = static_cast<std::size_t>(16.0 * halves);
  const auto max_samples = static_cast<std::size_t>(halves) * kMaxSamplesPerHalfPeriod;

  std::vector<std::complex<double>> overlaps;
  for (;;) {
    overlaps.resize(samples + 1);
    for (std::size_t k = 0; k <= samples; ++k) {
      overlaps[k] = frame_overlap(duration * static_cast<double>(k) / static_cast<double>(samples));
    }
    double largest = 0.0;
    for (std::size_t k = 1; k <= samples; ++k) {
      largest = std::max(largest, std::abs(std::arg(overlaps[k] / overlaps[k - 1])));
    }
    if (largest < kTrackingStep) break;
    if (samples * 2 > max_samples) throw ConvergenceError("phase tracking did not resolve the evolution");
    samples *= 2;
  }
  const auto tracked = numerics::unwrap_phase(overlaps);
  const double tracked_phase = tracked.back() - tracked.front();

  const WavefunctionSnapshot initial(state, 0.0);
  const WavefunctionSnapshot final_state(state, duration);
  const auto overlap =
      integrate_space(state, [&](double x) { return std::conj(initial(x)) * final_state(x); }).value;
  const double fidelity = std::abs(overlap);
  if (fidelity < kCyclicFidelity) {
    throw UndefinedPhaseError("evolution over t=" + std::to_string(duration) +
                              " is not cyclic (fidelity " + std::to_string(fidelity) + ")");
  }
  const double phase = numerics::nearest_branch(std::arg(overlap), tracked_phase);
  if (std::abs(phase - tracked_phase) > 1e-6) {
    throw ConvergenceError("tracked phase and endpoint overlap disagree by " +
                           std::to_string(phase - tracked_phase));
  }
  return {phase, fidelity, tracked_phase, samples + 1};
}

double dynamical_phase_oracle(const QuantumState& state, double duration, const numerics::QuadratureSpec& spec) {
  const auto energy = numerics::integrate_1d([&state](double t) { return energy_expectation(state, t); }, 0.0,
                                             duration, spec);
  return -energy.value / state.hbar();
}

PhaseResult berry_phase_oracle(const QuantumState& state, int half_periods) {
  require_positive_half_periods(half_periods);
  const double duration = half_periods * state.representation().half_period();
  const double chi = overall_phase_oracle(state, duration).phase;
  const double delta = dynamical_phase_oracle(state, duration);
  return make_phase_result(chi, delta, duration);
}

std::complex<double> ge_child_integral(const Representation& rep, const PhysicalConfig& config,
                                       const numerics::QuadratureSpec& spec) {
  require_valid(rep, ValidationMode::Full);
  config.validate();
  auto integrand = [&](double t) {
    const auto a = alpha(rep, config, t);
    return std::complex<double>(0.0, -0.5) * alpha_dot(rep, config, t) / (2.0 * a.real());
  };
  return numerics::integrate_1d(integrand, 0.0, rep.period(), spec).value;
}

std::vector<EquivalentAmplitude> equivalence_class_amplitudes(double beta, double target, int max_index) {
  const double cos_beta = std::cos(beta);
  if (!(std::abs(cos_beta) > kCosBetaEpsilon)) throw ValidationError("|cos(beta)| must exceed 1e-9");
  if (max_index < 0) throw ValidationError("class index range must be nonnegative");

  // gamma_n(tau0/2) = (n + 1/2) pi X with X = (1 + C^2)/(2 C cos beta) - 1. Congruence to the
  // same target for every n forces X even: X = 4m gives 0 and X = 4m + 2 gives pi.
  const double t = numerics::canonical_angle(target);
  int offset;
  if (std::min(t, 2.0 * kPi - t) < 1e-12) {
    offset = 1;
  } else if (std::abs(t - kPi) < 1e-12) {
    offset = 3;
  } else {
    throw ValidationError("target phase " + std::to_string(target) +
                          " is not attainable for every n simultaneously; only 0 and pi (mod 2 pi) are");
  }

  std::vector<EquivalentAmplitude> out;
  for (int m = -max_index; m <= max_index; ++m) {
    // C + 1/C = 2a with a = (4m + offset) cos beta.
    const double a = (4.0 * m + offset) * cos_beta;
    const double disc = a * a - 1.0;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    if (root == 0.0) {
      out.push_back({m, a});
      continue;
    }
    // The roots are reciprocal; form the small one as 1/large to avoid cancellation.
    const double large = a > 0.0 ? a + root : a - root;
    const double small = 1.0 / large;
    out.push_back({m, std::min(small, large)});
    out.push_back({m, std::max(small, large)});
  }
  return out;
}

}  // namespace shoberry
