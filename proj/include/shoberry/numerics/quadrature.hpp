#pragma once

// Quadrature engines shared by every oracle in the library.
//
// integrate_1d is a globally adaptive Gauss-Kronrod (G10/K21) scheme: the
// panel with the largest error estimate is bisected until the summed error
// estimate meets max(abs_tol, rel_tol * |I|). The 21-point rule itself comes
// from Boost.Math.
//
// integrate_panels is a composite Gauss-Legendre rule on equal panels whose
// count is doubled until two successive results agree. It is used for the
// spatial integrals, where integrands are smooth but strongly localized.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "shoberry/errors.hpp"

namespace shoberry::numerics {

struct QuadratureSpec {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  // Maximum number of bisections performed by the adaptive driver.
  std::size_t max_refinements = 4000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ValidationError("quadrature tolerances must be positive");
    if (max_refinements < 1) throw ValidationError("quadrature refinement cap must be at least 1");
  }
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  std::size_t panels = 0;
};

namespace detail {

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const std::complex<double>& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
};

template <class F>
auto kronrod_panel(F& f, double a, double b) {
  using T = std::invoke_result_t<F&, double>;
  double err = 0.0;
  // max_depth = 0: a single K21 evaluation, error estimated from the embedded G10 rule.
  T value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err);
  // Boost reports the single-panel error on the reference interval [-1, 1].
  return Panel<T>{a, b, value, err * 0.5 * (b - a)};
}

}  // namespace detail

template <class F>
auto integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec = {})
    -> QuadratureResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  spec.validate();
  if (a == b) return {T{}, 0.0, 0};

  std::vector<detail::Panel<T>> panels;
  panels.push_back(detail::kronrod_panel(f, a, b));

  auto totals = [&panels] {
    // Summation in increasing abscissa order keeps the result independent of split history.
    std::sort(panels.begin(), panels.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    T value{};
    double error = 0.0;
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  for (std::size_t refinement = 0;; ++refinement) {
    auto [value, error] = totals();
    if (!detail::is_finite(value)) throw ConvergenceError("integrate_1d: integrand produced a non-finite value");
    if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) return {value, error, panels.size()};
    if (refinement == spec.max_refinements) {
      throw ConvergenceError("integrate_1d: refinement cap exceeded (error estimate " + std::to_string(error) +
                             ")");
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& l, const auto& r) { return l.error < r.error; });
    const double lo = worst->a;
    const double hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) throw ConvergenceError("integrate_1d: panel width underflow");
    *worst = detail::kronrod_panel(f, lo, mid);
    panels.push_back(detail::kronrod_panel(f, mid, hi));
  }
}

/// Composite 20-point Gauss-Legendre on `panels` equal panels.
template <class F>
auto gauss_legendre_composite(F& f, double a, double b, std::size_t panels) {
  using T = std::invoke_result_t<F&, double>;
  const double h = (b - a) / static_cast<double>(panels);
  T sum{};
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + h * static_cast<double>(k);
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, lo + h);
  }
  return sum;
}

/// Doubles the panel count until successive composite results differ by less
/// than tol * max(1, |I|).
template <class F>
auto integrate_panels(F&& f, double a, double b, double tol = 1e-10, std::size_t initial_panels = 16,
                      std::size_t max_doublings = 10) -> QuadratureResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  std::size_t panels = std::max<std::size_t>(initial_panels, 1);
  T previous = gauss_legendre_composite(f, a, b, panels);
  for (std::size_t d = 0; d < max_doublings; ++d) {
    panels *= 2;
    T current = gauss_legendre_composite(f, a, b, panels);
    const double diff = std::abs(current - previous);
    if (!detail::is_finite(current)) throw ConvergenceError("integrate_panels: non-finite integrand");
    if (diff < tol * std::max(1.0, std::abs(current))) return {current, diff, panels};
    previous = current;
  }
  throw ConvergenceError("integrate_panels: no convergence after " + std::to_string(max_doublings) +
                         " panel doublings");
}

}  // namespace shoberry::numerics
