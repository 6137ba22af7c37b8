// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "shoberry/cli/app.hpp"
#include "shoberry/driven.hpp"
#include "shoberry/errors.hpp"
#include "shoberry/numerics/ode.hpp"
#include "shoberry/numerics/propagator.hpp"
#include "shoberry/numerics/unwrap.hpp"
#include "shoberry/phase.hpp"

using namespace shoberry;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && seconds > time_limit) {
    v.passed = false;
    v.detail += "; runtime limit " + std::to_string(time_limit) + " s exceeded";
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1f s", seconds);
  std::cout << (v.passed ? "PASS" : "FAIL") << "  " << id << ". " << name << ": " << v.detail << " [" << timing
            << "]" << std::endl;
  failures += v.passed ? 0 : 1;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Worst {
  double value = 0.0;
  void operator()(double x) { value = std::max(value, std::isnan(x) ? INFINITY : x); }
};

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::vector<const char*> argv{"shoberry"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

const std::vector<double> kAmplitudes{0.5, 1.0, 2.0, 4.0};
const std::vector<double> kOffsets{0.0, pi / 6, -pi / 6, pi / 3, -pi / 3};
const std::vector<double> kMasses{0.5, 1.0, 3.0};
const std::vector<double> kFrequencies{0.5, 1.0, 2.0};

// Oracle gamma(tau0/2) on the mass/frequency grid, keyed by (C index, beta index, n, hbar).
std::map<std::tuple<std::size_t, std::size_t, int, double>, std::vector<double>> oracle_spread;

DrivingForce make_force(const std::string& kind, double omega_f) {
  if (kind == "square wave") return odd_square_wave(omega_f, 0.4, 25);
  std::vector<FourierCoefficient> table{{1, cplx(0.3, 0.1)}};
  if (kind == "two-mode") table.push_back({3, cplx(0.05, 0.0)});
  return DrivingForce::from_coefficients(omega_f, table);
}

const std::vector<std::string> kForces{"single cosine", "two-mode", "square wave"};
const std::vector<std::pair<int, int>> kPairs{{2, 3}, {3, 5}, {1, 2}};
const std::vector<cplx> kHomogeneous{cplx(0, 0), cplx(0.3, 0.1)};

}  // namespace

int main() {
  std::cout.setf(std::ios::unitbuf);

  criterion(1, "stationary representation has zero Berry phase", 5.0, [] {
    Worst oracle;
    bool exact = true;
    for (int n = 0; n <= 5; ++n) {
      for (int k : {1, 2}) {
        exact = exact && berry_phase({1, 1, 1, 0}, n, k).gamma == 0.0;
        oracle(std::abs(berry_phase_oracle(QuantumState({1, 1, 1, 0}, n), k).gamma));
      }
    }
    return Verdict{exact && oracle.value < 1e-7,
                   std::string("closed form exactly zero: ") + (exact ? "yes" : "no") + ", max |oracle| " +
                       sci(oracle.value) + " (limit 1e-7)"};
  });

  criterion(2, "closed-form half-period Berry phase against the wavefunction oracle", 60.0, [] {
    Worst dev;
    std::size_t cases = 0;
    for (std::size_t ci = 0; ci < kAmplitudes.size(); ++ci) {
      for (std::size_t bi = 0; bi < kOffsets.size(); ++bi) {
        for (int n = 0; n <= 4; ++n) {
          for (double M : kMasses) {
            for (double w : kFrequencies) {
              const Representation rep{M, w, kAmplitudes[ci], kOffsets[bi]};
              const double oracle = berry_phase_oracle(QuantumState(rep, n), 1).gamma;
              dev(std::abs(berry_phase(rep, n, 1).gamma - oracle));
              oracle_spread[{ci, bi, n, 1.0}].push_back(oracle);
              ++cases;
            }
          }
        }
      }
    }
    return Verdict{dev.value < 1e-7, std::to_string(cases) + " cases, max |closed - oracle| " + sci(dev.value) +
                                         " (limit 1e-7)"};
  });

  criterion(3, "oracle Berry phase is independent of M, w and hbar", 0.0, [] {
    for (std::size_t ci = 0; ci < kAmplitudes.size(); ++ci) {
      for (std::size_t bi = 0; bi < kOffsets.size(); ++bi) {
        for (int n = 0; n <= 4; ++n) {
          for (double M : kMasses) {
            for (double w : kFrequencies) {
              const Representation rep{M, w, kAmplitudes[ci], kOffsets[bi]};
              oracle_spread[{ci, bi, n, 0.5}].push_back(
                  berry_phase_oracle(QuantumState(rep, n, PhysicalConfig{0.5}), 1).gamma);
            }
          }
        }
      }
    }
    Worst spread;
    std::size_t groups = 0;
    for (std::size_t ci = 0; ci < kAmplitudes.size(); ++ci) {
      for (std::size_t bi = 0; bi < kOffsets.size(); ++bi) {
        for (int n = 0; n <= 4; ++n) {
          std::vector<double> all = oracle_spread[{ci, bi, n, 1.0}];
          const auto& half = oracle_spread[{ci, bi, n, 0.5}];
          all.insert(all.end(), half.begin(), half.end());
          if (all.size() != 2 * kMasses.size() * kFrequencies.size()) {
            return Verdict{false, "criterion 2 data incomplete"};
          }
          const auto [lo, hi] = std::minmax_element(all.begin(), all.end());
          spread(*hi - *lo);
          ++groups;
        }
      }
    }
    return Verdict{spread.value < 1e-7, std::to_string(groups) + " (C, beta, n) groups over 18 (M, w, hbar) " +
                                            "points, max spread " + sci(spread.value) + " (limit 1e-7)"};
  });

  criterion(4, "full-period phase is twice the half-period phase", 0.0, [] {
    bool exact = true;
    Worst dev;
    for (double C : kAmplitudes) {
      for (double beta : kOffsets) {
        for (int n = 0; n <= 4; ++n) {
          const Representation rep{1, 1, C, beta};
          exact = exact && berry_phase(rep, n, 2).gamma == 2 * berry_phase(rep, n, 1).gamma;
          const QuantumState s(rep, n);
          const double full = berry_phase_oracle(s, 2).gamma;
          dev(std::abs(full - 2 * berry_phase_oracle(s, 1).gamma));
          dev(std::abs(full - berry_phase(rep, n, 2).gamma));
        }
      }
    }
    return Verdict{exact && dev.value < 1e-7, std::string("closed form exact: ") + (exact ? "yes" : "no") +
                                                  ", max oracle deviation " + sci(dev.value) + " (limit 1e-7)"};
  });

  criterion(5, "wavefunction quasiperiodicity over half a period", 0.0, [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Worst dev;
    for (int trial = 0; trial < 10; ++trial) {
      const Representation rep{0.5 + 2.5 * unit(rng), 0.5 + 1.5 * unit(rng), 0.3 + 3.7 * unit(rng),
                               -1.2 + 2.4 * unit(rng)};
      const int n = static_cast<int>(unit(rng) * 6);
      const double t = rep.period() * unit(rng);
      const QuantumState s(rep, n);
      const cplx factor = std::polar(1.0, -(n + 0.5) * pi);
      const double L = spatial_half_width(s);
      const WavefunctionSnapshot now(s, t), later(s, t + rep.half_period());
      for (int k = 0; k <= 2000; ++k) {
        const double x = -L + 2 * L * k / 2000.0;
        dev(std::abs(later(x) - factor * now(x)));
      }
    }
    return Verdict{dev.value < 1e-9, "10 random (rep, n, t), max-norm deviation " + sci(dev.value) + " (limit 1e-9)"};
  });

  criterion(6, "alpha-integral form of the ground-state Berry phase", 0.0, [] {
    Worst dev;
    for (double C : kAmplitudes) {
      for (double beta : kOffsets) {
        const Representation rep{1, 1, C, beta};
        const cplx g = ge_child_integral(rep);
        dev(std::abs(g.real() - berry_phase(rep, 0, 2).gamma));
        dev(std::abs(g.imag()));
      }
    }
    return Verdict{dev.value < 1e-8, "20 (C, beta) points, max deviation " + sci(dev.value) + " (limit 1e-8)"};
  });

  criterion(7, "equivalence class of cos(beta) = 1/2 has zero half-period phase", 0.0, [] {
    std::vector<double> amplitudes;
    for (double a : {-3.5, -1.5, 2.5, 4.5}) {
      amplitudes.push_back(a - std::sqrt(a * a - 1));
      amplitudes.push_back(a + std::sqrt(a * a - 1));
    }
    const auto generated = equivalence_class_amplitudes(pi / 3, 0.0, 2);
    bool same_list = generated.size() == amplitudes.size();
    for (double c : amplitudes) {
      bool found = false;
      for (const auto& e : generated) found = found || std::abs(e.amplitude - c) < 1e-12;
      same_list = same_list && found;
    }
    Worst dev;
    for (double c : amplitudes) {
      for (int n = 0; n <= 4; ++n) dev(std::abs(std::remainder(berry_phase({1, 1, c, pi / 3}, n, 1).gamma, 2 * pi)));
    }
    return Verdict{same_list && dev.value < 1e-9, std::string("generated list matches: ") +
                                                      (same_list ? "yes" : "no") + ", max distance to 0 mod 2pi " +
                                                      sci(dev.value) + " (limit 1e-9)"};
  });

  criterion(8, "split-operator propagation reproduces states, overall phase and second order", 120.0, [] {
    Worst overlap_gap, phase_dev;
    std::vector<double> ratios;
    for (const Representation rep : {Representation{1, 1, 2, 0}, Representation{0.5, 2, 0.5, -pi / 6}}) {
      const numerics::SchrodingerHamiltonian h{rep.mass, rep.omega, 1.0, {}};
      for (int n : {0, 1}) {
        const QuantumState s(rep, n);
        const double L = spatial_half_width(s);
        const auto initial =
            numerics::GridState::sample([&](double x) { return psi(s, x, 0.0); }, -L, L, 1024, 0.0);
        numerics::check_resolution(initial);
        const auto exact = numerics::GridState::sample([&](double x) { return psi(s, x, rep.period()); }, -L, L,
                                                       1024, rep.period());
        const auto evolved = numerics::propagate_schrodinger(initial, h, rep.period(), 4000);
        overlap_gap(1 - std::abs(numerics::inner_product(exact, evolved)));
        const double phase = std::arg(numerics::inner_product(initial, evolved));
        phase_dev(std::abs(std::remainder(phase - overall_phase_closed(n, 2), 2 * pi)));

        std::vector<double> errors;
        for (std::size_t steps : {200, 400, 800}) {
          const auto e = numerics::propagate_schrodinger(initial, h, rep.period(), steps);
          errors.push_back(std::abs(1.0 - numerics::inner_product(exact, e)));
        }
        ratios.push_back(errors[0] / errors[1]);
        ratios.push_back(errors[1] / errors[2]);
      }
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    const bool ok = overlap_gap.value < 1e-6 && phase_dev.value < 1e-5 && *lo >= 3.5 && *hi <= 4.5;
    return Verdict{ok, "max 1 - |overlap| " + sci(overlap_gap.value) + " (limit 1e-6), max chi deviation mod 2pi " +
                           sci(phase_dev.value) + " (limit 1e-5), step-halving ratios in [" + sci(*lo) + ", " +
                           sci(*hi) + "] (need [3.5, 4.5])"};
  });

  criterion(9, "driven phase separates into N gamma_n(tau0) plus the closed drive term", 0.0, [] {
    const Representation rep{1, 1, 2, 0.3};
    Worst closed_vs_quad, oracle_dev, n_spread;
    std::size_t combos = 0;
    for (const auto& kind : kForces) {
      for (auto [p, N] : kPairs) {
        for (cplx D : kHomogeneous) {
          const auto force = make_force(kind, rep.omega * p / N);
          const auto comm = commensurability(rep.period(), force.period());
          if (comm.p != p || comm.n != N) return Verdict{false, "commensurability mismatch for " + kind};
          const auto xp = particular_solution(force, rep, comm, D);
          std::vector<double> drive_parts;
          for (int n : {0, 1, 2}) {
            const auto r = berry_phase_driven(rep, n, force, D, comm);
            closed_vs_quad(std::abs(r.drive_quadrature - r.drive_closed) / r.drive_closed);
            const auto oracle = berry_phase_driven_oracle(DrivenState(QuantumState(rep, n), force, xp), r.duration);
            oracle_dev(std::abs(oracle.gamma - r.total));
            drive_parts.push_back(oracle.gamma - N * berry_phase(rep, n, 2).gamma);
          }
          const auto [lo, hi] = std::minmax_element(drive_parts.begin(), drive_parts.end());
          n_spread(*hi - *lo);
          ++combos;
        }
      }
    }
    const bool ok = closed_vs_quad.value < 1e-8 && oracle_dev.value < 1e-8 && n_spread.value < 1e-8;
    return Verdict{ok, std::to_string(combos) + " (force, p/N, D) combinations; closed vs quadrature rel " +
                           sci(closed_vs_quad.value) + ", oracle vs N gamma + drive " + sci(oracle_dev.value) +
                           ", drive-part spread over n " + sci(n_spread.value) + " (limits 1e-8)"};
  });

  criterion(10, "stationary representation over one forcing period needs no commensurability", 0.0, [] {
    const auto st = Representation::stationary();
    const double ratio = 0.61803398875;
    Worst dev;
    bool has_long_cycle = true;
    try {
      const auto comm = commensurability(st.period(), 2 * pi / ratio);
      has_long_cycle = comm.n > 1000;
    } catch (const UndefinedPhaseError&) {
    }
    for (const auto& kind : {std::string("single cosine"), std::string("two-mode")}) {
      const auto force = make_force(kind, ratio);
      const auto xp = make_particular_solution(force, st, {});
      const double series = berry_phase_special_rep(force, st.mass, st.omega);
      for (int n : {0, 1, 3}) {
        const auto oracle = berry_phase_driven_oracle(DrivenState(QuantumState(st, n), force, xp), force.period());
        dev(std::abs(oracle.gamma - series));
      }
      dev(std::abs(drive_phase_quadrature(xp, st.mass, force.period()) - series));
    }
    return Verdict{has_long_cycle && dev.value < 1e-8,
                   "w_f/w = 0.61803398875, no short joint period: " + std::string(has_long_cycle ? "yes" : "no") +
                       "; max |oracle over tau_f - series| " + sci(dev.value) + " (limit 1e-8)"};
  });

  criterion(11, "resonant forcing is rejected with exit code 3", 0.0, [] {
    const int code = run_cli({"driven", "--omega-f", "0.5", "--force-coeff", "2:0.3:0"});
    const int code_p1 = run_cli({"driven", "--C", "2", "--omega-f", "1", "--force-coeff", "1:0.2:0.1"});
    int refused = 0, attempts = 0;
    const Representation rep{1, 1, 2, 0};
    for (double eps : {0.0, 1e-12, -1e-11, 3e-10}) {
      for (int mode : {1, 2, 3}) {
        ++attempts;
        const std::vector<FourierCoefficient> table{{mode, cplx(0.2, 0.0)}};
        const auto force = DrivingForce::from_coefficients((1.0 + eps) / mode, table);
        try {
          const auto xp = make_particular_solution(force, rep, {});
          (void)xp;
        } catch (const UndefinedPhaseError&) {
          ++refused;
        }
      }
    }
    const bool ok = code == cli::kExitUndefined && code_p1 == cli::kExitUndefined && refused == attempts;
    return Verdict{ok, "exit codes " + std::to_string(code) + " and " + std::to_string(code_p1) +
                           " (need 3); near-resonant constructions refused " + std::to_string(refused) + "/" +
                           std::to_string(attempts)};
  });

  criterion(12, "particular solution satisfies the driven equation and matches Runge-Kutta", 0.0, [] {
    Worst residual, rk_dev;
    for (const Representation rep : {Representation{1, 1, 2, 0.3}, Representation{1.7, 0.8, 1, 0}}) {
      for (const auto& kind : kForces) {
        for (auto [p, N] : kPairs) {
          for (cplx D : kHomogeneous) {
            const auto force = make_force(kind, rep.omega * p / N);
            const auto comm = commensurability(rep.period(), force.period());
            const auto xp = particular_solution(force, rep, comm, D);
            const double T = static_cast<double>(comm.n) * rep.period();
            const double w2 = rep.omega * rep.omega;
            double f_max = 0.0, x_max = 0.0, r_max = 0.0;
            for (int k = 0; k <= 2000; ++k) {
              const double t = T * k / 2000.0;
              f_max = std::max(f_max, std::abs(force(t) / rep.mass));
              x_max = std::max(x_max, std::abs(xp.position(t)));
              r_max = std::max(r_max, std::abs(xp.acceleration(t) + w2 * xp.position(t) - force(t) / rep.mass));
            }
            residual(r_max / std::max(f_max, w2 * x_max));
            const auto path = numerics::rk_integrate(
                [&](double x, double t) { return force(t) / rep.mass - w2 * x; }, xp.position(0), xp.velocity(0), 0.0,
                T, 400);
            for (const auto& s : path) rk_dev(std::abs(s.x - xp.position(s.t)));
          }
        }
      }
    }
    return Verdict{residual.value < 1e-9 && rk_dev.value < 1e-8,
                   "max relative residual " + sci(residual.value) + " (limit 1e-9), max |x_rk - x_p| over N tau0 " +
                       sci(rk_dev.value) + " (limit 1e-8)"};
  });

  criterion(13, "parameter sweeps are byte-identical across runs", 0.0, [] {
    const std::vector<std::string> base{"sweep", "--sweep", "C:0.5:4:20", "--sweep", "beta:-1.2:1.2:25", "--n", "1"};
    std::string first, second, threaded;
    auto with_threads = [&](const std::string& t) {
      auto args = base;
      args.insert(args.end(), {"--threads", t});
      return args;
    };
    const int a = run_cli(with_threads("1"), &first);
    const int b = run_cli(with_threads("1"), &second);
    const int c = run_cli(with_threads("4"), &threaded);
    const std::size_t lines = static_cast<std::size_t>(std::count(first.begin(), first.end(), '\n'));
    const bool ok = a == 0 && b == 0 && c == 0 && lines == 501 && first == second && first == threaded;
    return Verdict{ok, std::to_string(lines - 1) + " rows, " + std::to_string(first.size()) +
                           " bytes; identical on rerun: " + (first == second ? "yes" : "no") +
                           ", identical with 4 threads: " + (first == threaded ? "yes" : "no")};
  });

  std::cout << (failures == 0 ? "all 13 criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
