#include "shoberry/cli/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include "shoberry/driven.hpp"
#include "shoberry/errors.hpp"
#include "shoberry/numerics/ode.hpp"
#include "shoberry/numerics/propagator.hpp"
#include "shoberry/numerics/quadrature.hpp"
#include "shoberry/numerics/rational.hpp"
#include "shoberry/numerics/unwrap.hpp"
#include "shoberry/phase.hpp"
#include "shoberry/wavefunction.hpp"

namespace shoberry::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// Largest value seen; NaN poisons the result so that it can never pass.
struct Worst {
  double value = 0.0;
  void operator()(double d) {
    if (std::isnan(d) || std::isnan(value)) {
      value = std::numeric_limits<double>::quiet_NaN();
    } else {
      value = std::max(value, d);
    }
  }
};

class Battery {
 public:
  void run(const std::string& name, double tolerance, const std::function<double()>& check) {
    CheckResult r{name, false, 0.0, tolerance, {}};
    try {
      r.deviation = check();
      r.passed = r.deviation <= tolerance;
      if (!r.passed) r.detail = "deviation exceeds tolerance";
    } catch (const std::exception& e) {
      r.deviation = std::numeric_limits<double>::quiet_NaN();
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(a + (b - a) * k / (count - 1));
  return out;
}

double width_scale(const Representation& rep, double hbar) { return std::sqrt(hbar / omega_invariant(rep)); }

// Fixtures for the driven checks.
struct ForceCase {
  std::string name;
  std::function<DrivingForce(double omega_f)> make;
};

std::vector<ForceCase> force_cases() {
  return {
      {"cosine", [](double wf) {
         const std::vector<FourierCoefficient> t{{1, {0.5, 0.0}}};
         return DrivingForce::from_coefficients(wf, t);
       }},
      {"two-mode", [](double wf) {
         const std::vector<FourierCoefficient> t{{1, {0.3, 0.1}}, {3, {0.05, 0.0}}};
         return DrivingForce::from_coefficients(wf, t);
       }},
      {"square-wave", [](double wf) { return odd_square_wave(wf, 0.4, 25); }},
  };
}

const std::vector<Commensurability> kPairs{{2, 3}, {3, 5}, {1, 2}};
const std::vector<cd> kHomogeneous{{0.0, 0.0}, {0.3, 0.1}};

void representation_checks(Battery& b, const std::vector<Representation>& reps) {
  b.run("representation.wronskian_constant", 1e-10, [&] {
    Worst w;
    for (const auto& rep : reps) {
      const double om = omega_invariant(rep);
      for (double t : linspace(0.0, rep.period(), 257)) w(std::abs(wronskian(rep, t) - om) / std::abs(om));
    }
    return w.value;
  });
  b.run("representation.rho_half_period", 1e-12, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (double t : linspace(0.0, rep.period(), 257)) w(std::abs(rho(rep, t + rep.half_period()) - rho(rep, t)));
    }
    return w.value;
  });
  b.run("representation.half_period_winding", 1e-12, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (double t : linspace(0.0, rep.period(), 257)) {
        const auto a = classical_pair(rep, t);
        const auto c = classical_pair(rep, t + rep.half_period());
        w(std::abs(cd(c.u, -c.v) + cd(a.u, -a.v)));
      }
    }
    return w.value;
  });
  b.run("representation.rho_dot_finite_difference", 1e-8, [&] {
    Worst w;
    for (const auto& rep : reps) {
      const double h = 1e-5 / rep.omega;
      for (double t : linspace(0.0, rep.period(), 65)) {
        const double fd = (rho(rep, t + h) - rho(rep, t - h)) / (2.0 * h);
        w(std::abs(fd - rho_dot(rep, t)) / (rep.omega * rho_max(rep)));
      }
    }
    return w.value;
  });
}

void wavefunction_checks(Battery& b, const std::vector<Representation>& reps) {
  b.run("wavefunction.normalization", 1e-8, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n = 0; n <= 8; ++n) {
        const QuantumState s(rep, n);
        for (double t : {0.0, 0.37 * rep.period(), 0.81 * rep.period()}) {
          const WavefunctionSnapshot snap(s, t);
          w(std::abs(integrate_space(s, [&](double x) { return std::norm(snap(x)); }).value - 1.0));
        }
      }
    }
    return w.value;
  });
  b.run("wavefunction.orthogonality", 1e-8, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (double t : {0.0, 0.43 * rep.period()}) {
        for (int m = 0; m <= 6; ++m) {
          for (int n = m + 1; n <= 6; ++n) {
            const QuantumState sm(rep, m);
            const QuantumState sn(rep, n);
            const WavefunctionSnapshot a(sm, t);
            const WavefunctionSnapshot c(sn, t);
            w(std::abs(integrate_space(sn, [&](double x) { return std::conj(a(x)) * c(x); }).value));
          }
        }
      }
    }
    return w.value;
  });
  b.run("wavefunction.schrodinger_residual", 1e-5, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n : {0, 3}) {
        const QuantumState s(rep, n);
        const double t = 0.4 / rep.omega;
        const double sigma = rho(rep, t) * width_scale(rep, 1.0);
        const double half = (std::sqrt(2.0 * n + 1.0) + 3.0) * sigma;
        const numerics::SchrodingerHamiltonian h{rep.mass, rep.omega, 1.0, {}};
        w(numerics::schrodinger_residual([&](double x, double tt) { return psi(s, x, tt); }, h, t, -half, half, 101,
                                         1e-3 / rep.omega, 1e-3 * sigma));
      }
    }
    return w.value;
  });
  b.run("wavefunction.quasiperiodicity", 1e-9, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n = 0; n <= 4; ++n) {
        const QuantumState s(rep, n);
        const cd factor = std::polar(1.0, -(n + 0.5) * kPi);
        const double L = spatial_half_width(s);
        for (double t : {0.3 / rep.omega, 1.1 / rep.omega}) {
          const WavefunctionSnapshot now(s, t);
          const WavefunctionSnapshot later(s, t + rep.half_period());
          for (double x : linspace(-L, L, 201)) w(std::abs(later(x) - factor * now(x)));
        }
      }
    }
    return w.value;
  });
  b.run("wavefunction.energy_closed_vs_quadrature", 1e-8, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n : {0, 2, 5}) {
        const QuantumState s(rep, n);
        for (double t : {0.0, 0.77 / rep.omega}) {
          const double closed = energy_expectation(s, t);
          w(std::abs(energy_expectation_quadrature(s, t) - closed) / closed);
        }
      }
    }
    return w.value;
  });
}

void phase_checks(Battery& b, const std::vector<Representation>& reps, double perturb) {
  auto oracle = [perturb](const QuantumState& s, int halves) {
    const double duration = halves * s.representation().half_period();
    const double chi = overall_phase_oracle(s, duration).phase;
    const double delta = dynamical_phase_oracle(s, duration) * (1.0 + perturb);
    return make_phase_result(chi, delta, duration);
  };

  b.run("phase.dynamical_oracle_vs_closed", 1e-8, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n = 0; n <= 3; ++n) {
        const QuantumState s(rep, n);
        for (int k : {1, 2}) {
          const double oracle_delta = dynamical_phase_oracle(s, k * rep.half_period()) * (1.0 + perturb);
          w(std::abs(oracle_delta - dynamical_phase_closed(rep, n, k)));
        }
      }
    }
    return w.value;
  });
  b.run("phase.berry_oracle_vs_closed", 1e-7, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n = 0; n <= 3; ++n) {
        const QuantumState s(rep, n);
        for (int k : {1, 2}) w(std::abs(oracle(s, k).gamma - berry_phase(rep, n, k).gamma));
      }
    }
    return w.value;
  });
  b.run("phase.overall_oracle_vs_closed", 1e-7, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n = 0; n <= 3; ++n) {
        const QuantumState s(rep, n);
        w(std::abs(overall_phase_oracle(s, rep.period()).phase - overall_phase_closed(n, 2)));
      }
    }
    return w.value;
  });
  b.run("phase.mass_frequency_hbar_independence", 1e-7, [&] {
    Worst w;
    const std::vector<std::pair<Representation, int>> cases{{{1, 1, 2.0, 0.0}, 1}, {{1, 1, 0.5, kPi / 6}, 0}};
    for (const auto& [base, n] : cases) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (double m : {0.5, 1.0, 3.0}) {
        for (double om : {0.5, 1.0, 2.0}) {
          for (double hbar : {0.5, 1.0}) {
            const Representation rep{m, om, base.amplitude, base.phase_offset};
            const double g = oracle(QuantumState(rep, n, {hbar}), 1).gamma;
            lo = std::min(lo, g);
            hi = std::max(hi, g);
          }
        }
      }
      w(hi - lo);
    }
    return w.value;
  });
  b.run("phase.doubling", 1e-7, [&] {
    Worst w;
    for (const auto& rep : reps) {
      for (int n = 0; n <= 3; ++n) {
        if (berry_phase(rep, n, 2).gamma != 2.0 * berry_phase(rep, n, 1).gamma) return std::numeric_limits<double>::infinity();
        const QuantumState s(rep, n);
        w(std::abs(oracle(s, 2).gamma - 2.0 * oracle(s, 1).gamma));
      }
    }
    return w.value;
  });
  b.run("phase.ge_child", 1e-8, [&] {
    Worst w;
    for (const auto& rep : reps) {
      const auto gc = ge_child_integral(rep);
      w(std::abs(gc.real() - berry_phase(rep, 0, 2).gamma));
      // The imaginary part has its own, tighter bound.
      if (std::abs(gc.imag()) > 1e-10) w(std::abs(gc.imag()) * 1e2);
    }
    return w.value;
  });
  b.run("phase.positivity", 0.0, [&] {
    double violations = 0.0;
    for (const auto& rep : reps) {
      const bool stationary = rep.amplitude == 1.0 && rep.phase_offset == 0.0;
      for (int n = 0; n <= 5; ++n) {
        const double g = berry_phase(rep, n, 1).gamma;
        if (stationary ? g != 0.0 : !(g > 0.0)) violations += 1.0;
      }
    }
    return violations;
  });
  b.run("phase.equivalence_classes", 1e-9, [&] {
    Worst w;
    const double beta = kPi / 3.0;
    for (const auto& c : equivalence_class_amplitudes(beta, 0.0, 2)) {
      if (c.m == 0) continue;
      for (int n = 0; n <= 4; ++n) {
        const double g = berry_phase({1, 1, c.amplitude, beta}, n, 1).gamma_canonical;
        w(std::min(g, 2.0 * kPi - g));
      }
    }
    return w.value;
  });
}

void driven_checks(Battery& b) {
  const Representation rep{1.3, 0.9, 2.0, kPi / 6};

  b.run("driven.ode_residual", 1e-9, [&] {
    Worst w;
    for (const auto& fc : force_cases()) {
      for (const auto& pair : kPairs) {
        const auto force = fc.make(rep.omega * static_cast<double>(pair.p) / static_cast<double>(pair.n));
        for (const auto& d : kHomogeneous) {
          const auto xp = particular_solution(force, rep, pair, d);
          const double span = static_cast<double>(pair.n) * rep.period();
          double residual = 0.0, f_scale = 0.0, x_scale = 0.0;
          for (double t : linspace(0.0, span, 2001)) {
            const double f = force(t) / rep.mass;
            residual = std::max(residual, std::abs(xp.acceleration(t) + rep.omega * rep.omega * xp.position(t) - f));
            f_scale = std::max(f_scale, std::abs(f));
            x_scale = std::max(x_scale, rep.omega * rep.omega * std::abs(xp.position(t)));
          }
          w(residual / std::max(f_scale, x_scale));
        }
      }
    }
    return w.value;
  });
  b.run("driven.periodicity", 1e-10, [&] {
    Worst w;
    for (const auto& fc : force_cases()) {
      for (const auto& pair : kPairs) {
        const auto force = fc.make(rep.omega * static_cast<double>(pair.p) / static_cast<double>(pair.n));
        const auto xp = particular_solution(force, rep, pair, kHomogeneous[1]);
        const double span = static_cast<double>(pair.n) * rep.period();
        for (double t : linspace(0.0, span, 401)) w(std::abs(xp.position(t + span) - xp.position(t)));
      }
    }
    return w.value;
  });
  b.run("driven.closed_vs_quadrature", 1e-8, [&] {
    Worst w;
    for (const auto& fc : force_cases()) {
      for (const auto& pair : kPairs) {
        const auto force = fc.make(rep.omega * static_cast<double>(pair.p) / static_cast<double>(pair.n));
        for (const auto& d : kHomogeneous) {
          const auto r = berry_phase_driven(rep, 0, force, d, pair);
          w(std::abs(r.drive_closed - r.drive_quadrature) / std::abs(r.drive_quadrature));
        }
      }
    }
    return w.value;
  });
  b.run("driven.special_representation_scaling", 1e-8, [&] {
    Worst w;
    const Representation special{rep.mass, rep.omega, 1.0, 0.0};
    for (const auto& fc : force_cases()) {
      for (const auto& pair : kPairs) {
        const auto force = fc.make(rep.omega * static_cast<double>(pair.p) / static_cast<double>(pair.n));
        const double general_form = drive_phase_closed(force, special, pair, {});
        const double series_form = berry_phase_special_rep(force, rep.mass, rep.omega);
        w(std::abs(general_form / static_cast<double>(pair.p) - series_form) / std::abs(series_form));
      }
    }
    return w.value;
  });
  b.run("driven.hbar_and_mass_scaling", 1e-12, [&] {
    Worst w;
    const Commensurability pair{2, 3};
    const double wf = rep.omega * 2.0 / 3.0;
    const std::vector<FourierCoefficient> table{{1, {0.3, 0.1}}, {3, {0.05, 0.0}}};
    std::vector<FourierCoefficient> doubled = table;
    for (auto& c : doubled) c.value *= 2.0;
    const auto force = DrivingForce::from_coefficients(wf, table);
    const auto heavy_force = DrivingForce::from_coefficients(wf, doubled);
    const double base = drive_phase_closed(force, rep, pair, {}, {1.0});
    w(std::abs(drive_phase_closed(force, rep, pair, {}, {2.0}) - base / 2.0) / base);
    // Same x_p shape with twice the mass (and twice the force): the phase doubles.
    const Representation heavy{2.0 * rep.mass, rep.omega, rep.amplitude, rep.phase_offset};
    w(std::abs(drive_phase_closed(heavy_force, heavy, pair, {}) - 2.0 * base) / base);
    return w.value;
  });

  // Oracle runs shared by the two checks below.
  const Commensurability pair{2, 3};
  const auto force = force_cases()[1].make(rep.omega * 2.0 / 3.0);
  const cd d = kHomogeneous[1];
  struct OracleRun {
    double total;
    double oracle;
    double drive_part;
  };
  std::vector<OracleRun> runs;
  std::string oracle_failure;
  try {
    for (const Representation& r : {Representation{1.3, 0.9, 2.0, kPi / 6}, Representation{1.3, 0.9, 0.5, 0.0}}) {
      for (int n : {0, 1}) {
        const auto closed = berry_phase_driven(r, n, force, d, pair);
        const DrivenState state(QuantumState(r, n), force, particular_solution(force, r, pair, d));
        const double oracle = berry_phase_driven_oracle(state, closed.duration).gamma;
        runs.push_back({closed.total, oracle, oracle - closed.undriven_part});
      }
    }
  } catch (const std::exception& e) {
    oracle_failure = e.what();
  }
  auto require_runs = [&] {
    if (!oracle_failure.empty()) throw ConvergenceError(oracle_failure);
  };
  b.run("driven.oracle_vs_closed", 1e-7, [&] {
    require_runs();
    Worst w;
    for (const auto& r : runs) w(std::abs(r.oracle - r.total));
    return w.value;
  });
  b.run("driven.decomposition_independence", 1e-8, [&] {
    require_runs();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : runs) {
      lo = std::min(lo, r.drive_part);
      hi = std::max(hi, r.drive_part);
    }
    return (hi - lo) / std::abs(hi);
  });
  b.run("driven.schrodinger_residual", 1e-5, [&] {
    const auto xp = particular_solution(force, rep, pair, d);
    const DrivenState state(QuantumState(rep, 1), force, xp);
    const double t = 0.7;
    const double sigma = rho(rep, t) * width_scale(rep, 1.0);
    const double center = xp.position(t);
    const double half = (std::sqrt(3.0) + 3.0) * sigma;
    const numerics::SchrodingerHamiltonian h{rep.mass, rep.omega, 1.0, [&](double tt) { return force(tt); }};
    return numerics::schrodinger_residual([&](double x, double tt) { return psi_driven(state, x, tt); }, h, t,
                                          center - half, center + half, 101, 1e-3 / rep.omega, 1e-3 * sigma);
  });
  b.run("driven.fourier_decomposition", 1e-10, [&] {
    Worst w;
    const double wf = 0.7;
    const auto dec = fourier_decompose([&](double t) { return 0.8 * std::cos(wf * t) + 0.2 * std::sin(2.0 * wf * t); },
                                       wf, 4);
    w(std::abs(dec.force.coefficient(1) - cd(0.4, 0.0)));
    w(std::abs(dec.force.coefficient(2) - cd(0.0, -0.1)));
    w(std::abs(dec.force.coefficient(-2) - cd(0.0, 0.1)));
    w(std::abs(dec.force.coefficient(0)));
    w(std::abs(dec.force.coefficient(3)));
    return w.value;
  });
}

void numerics_checks(Battery& b) {
  b.run("numerics.quadrature_battery", 1.0, [&] {
    struct Case {
      std::function<double(double)> f;
      double a, b, exact;
    };
    const double e = std::numbers::e;
    const std::vector<Case> cases{
        {[](double t) { return std::sin(t) * std::sin(t); }, 0.0, 2.0 * kPi, kPi},
        {[](double t) { return std::exp(t); }, 0.0, 1.0, e - 1.0},
        {[](double t) { return t * t; }, 0.0, 1.0, 1.0 / 3.0},
        {[](double t) { return std::cos(t); }, 0.0, kPi / 2.0, 1.0},
        {[](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 1.0, kPi / 4.0},
        {[](double t) { return std::sqrt(t); }, 0.0, 1.0, 2.0 / 3.0},
        {[](double t) { return std::log(t); }, 1.0, e, 1.0},
        {[](double t) { return std::exp(-t * t); }, -10.0, 10.0, std::sqrt(kPi)},
        {[](double t) { return t * std::exp(-t); }, 0.0, 30.0, 1.0 - 31.0 * std::exp(-30.0)},
        {[](double t) { return 1.0 / t; }, 1.0, 2.0, std::numbers::ln2},
        {[](double t) { return t * std::sin(t); }, 0.0, kPi, kPi},
        {[](double t) { return std::cos(3.0 * t) * std::cos(3.0 * t); }, 0.0, kPi, kPi / 2.0},
        {[](double t) { return 1.0 / (2.0 + std::cos(t)); }, 0.0, 2.0 * kPi, 2.0 * kPi / std::sqrt(3.0)},
        {[](double t) { return std::pow(t, 5); }, -1.0, 2.0, 10.5},
        {[](double t) { return std::exp(std::cos(t)); }, 0.0, 2.0 * kPi, 2.0 * kPi * std::cyl_bessel_i(0.0, 1.0)},
        {[](double t) { return 1.0 / (std::cosh(t) * std::cosh(t)); }, -5.0, 5.0, 2.0 * std::tanh(5.0)},
        {[](double t) { return 1.0 / (1.0 + 25.0 * t * t); }, -1.0, 1.0, 0.4 * std::atan(5.0)},
        {[](double t) { return std::abs(t); }, -1.0, 2.0, 2.5},
        {[](double t) { return std::exp(-t) * std::cos(t); }, 0.0, 20.0,
         0.5 * (1.0 + std::exp(-20.0) * (std::sin(20.0) - std::cos(20.0)))},
        {[](double t) { return t * t * std::exp(-t * t); }, -8.0, 8.0, std::sqrt(kPi) / 2.0},
        {[](double t) { return std::exp(-std::abs(t - 0.3)); }, -1.0, 1.0, 2.0 - std::exp(-1.3) - std::exp(-0.7)},
    };
    const numerics::QuadratureSpec spec;
    // Ratio of the true error to what the driver claims; <= 1 means the claim holds.
    Worst w;
    for (const auto& c : cases) {
      const auto r = numerics::integrate_1d(c.f, c.a, c.b, spec);
      const double err = std::abs(r.value - c.exact);
      const double tolerance = std::max(spec.abs_tol, spec.rel_tol * std::abs(c.exact));
      const double bound = std::max(r.error, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(c.exact));
      w(std::max(err / tolerance, err / bound));
    }
    const auto z = numerics::integrate_1d([](double t) { return t * std::polar(1.0, t); }, 0.0, 2.0 * kPi, spec);
    w(std::abs(z.value - cd(0.0, -2.0 * kPi)) / (spec.rel_tol * 2.0 * kPi));
    return w.value;
  });
  b.run("numerics.unwrap_equivariance", 1e-12, [&] {
    std::vector<cd> samples;
    for (double th : linspace(0.0, 4.0 * kPi, 101)) samples.push_back(std::polar(1.0, -th));
    const auto base = numerics::unwrap_phase(samples);
    Worst w;
    w(std::abs(base.back() + 4.0 * kPi));
    for (double phi : {0.3, -2.0, 3.0}) {
      auto shifted = samples;
      for (auto& z : shifted) z *= std::polar(1.0, phi);
      const auto out = numerics::unwrap_phase(shifted);
      const double offset = out.front() - base.front();
      for (std::size_t k = 0; k < out.size(); ++k) w(std::abs(out[k] - base[k] - offset));
      w(std::abs(std::remainder(offset - phi, 2.0 * kPi)));
    }
    return w.value;
  });
  b.run("numerics.rationalize", 0.0, [&] {
    double failures = 0.0;
    if (numerics::rationalize(2.0 / 3.0, 1e-10) != numerics::Ratio{2, 3}) failures += 1;
    if (numerics::rationalize(0.5 + 1e-14, 1e-10) != numerics::Ratio{1, 2}) failures += 1;
    if (numerics::rationalize(std::sqrt(2.0), 1e-12).has_value()) failures += 1;
    return failures;
  });
  b.run("numerics.rk_harmonic_period", 1e-9, [&] {
    const auto path = numerics::rk_integrate([](double x, double) { return -x; }, 1.0, 0.0, 0.0, 2.0 * kPi, 4);
    return std::max(std::abs(path.back().x - 1.0), std::abs(path.back().v));
  });
  b.run("numerics.rk_energy_drift", 1e-8, [&] {
    const auto path = numerics::rk_integrate([](double x, double) { return -x; }, 1.0, 0.0, 0.0, 20.0 * kPi, 200);
    Worst w;
    for (const auto& s : path) w(std::abs(0.5 * (s.x * s.x + s.v * s.v) - 0.5));
    return w.value;
  });

  // Split-operator propagation against the analytic state.
  b.run("numerics.propagator_overlap_and_phase", 1e-5, [&] {
    Worst w;
    const Representation rep{1, 1, 2.0, 0.0};
    for (int n : {0, 1}) {
      const QuantumState s(rep, n);
      const double L = spatial_half_width(s);
      const auto initial = numerics::GridState::sample([&](double x) { return psi(s, x, 0.0); }, -L, L, 1024, 0.0);
      const auto evolved = numerics::propagate_schrodinger(initial, {1, 1, 1, {}}, rep.period(), 4000);
      const auto exact = numerics::GridState::sample([&](double x) { return psi(s, x, rep.period()); }, -L, L, 1024,
                                                     rep.period());
      w(std::abs(numerics::norm_squared(evolved) - numerics::norm_squared(initial)) * 1e5);  // norm to 1e-10
      w((1.0 - std::abs(numerics::inner_product(exact, evolved))) * 10.0);                   // overlap > 1 - 1e-6
      const double phase = std::arg(numerics::inner_product(initial, evolved));
      w(std::abs(std::remainder(phase - overall_phase_closed(n, 2), 2.0 * kPi)));
    }
    return w.value;
  });
  b.run("numerics.propagator_second_order", 0.5, [&] {
    const Representation rep{1, 1, 2.0, 0.0};
    const QuantumState s(rep, 0);
    const double L = spatial_half_width(s);
    const auto initial = numerics::GridState::sample([&](double x) { return psi(s, x, 0.0); }, -L, L, 1024, 0.0);
    const auto exact =
        numerics::GridState::sample([&](double x) { return psi(s, x, rep.period()); }, -L, L, 1024, rep.period());
    std::vector<double> errors;
    for (std::size_t steps : {200, 400, 800}) {
      const auto evolved = numerics::propagate_schrodinger(initial, {1, 1, 1, {}}, rep.period(), steps);
      errors.push_back(std::abs(1.0 - numerics::inner_product(exact, evolved)));
    }
    // Deviation of each refinement ratio from the ideal 4, accepted within [3.5, 4.5].
    return std::max(std::abs(errors[0] / errors[1] - 4.0), std::abs(errors[1] / errors[2] - 4.0));
  });
}

}  // namespace

std::vector<Representation> default_validation_grid() {
  return {{1.0, 1.0, 1.0, 0.0},
          {1.0, 1.0, 2.0, 0.0},
          {1.0, 1.0, 0.5, kPi / 6.0},
          {0.5, 2.0, 4.0, -kPi / 3.0},
          {3.0, 0.5, 1.5, kPi / 3.0}};
}

std::vector<CheckResult> run_validation_battery(const RunConfig& config, const ValidateOptions& options) {
  auto reps = default_validation_grid();
  if (config.representation_given) {
    require_valid(config.representation(), ValidationMode::Full);
    reps.push_back(config.representation());
  }
  Battery b;
  representation_checks(b, reps);
  wavefunction_checks(b, reps);
  phase_checks(b, reps, options.perturb_dynamical);
  driven_checks(b);
  numerics_checks(b);
  return b.take();
}

Table validation_table(const std::vector<CheckResult>& results) {
  Table table{"validate", {"check", "status", "max_deviation", "tolerance", "detail"}, {}};
  for (const auto& r : results) {
    table.rows.push_back({r.name, std::string(r.passed ? "PASS" : "FAIL"), r.deviation, r.tolerance, r.detail});
  }
  return table;
}

}  // namespace shoberry::cli
