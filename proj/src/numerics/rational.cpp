#include "shoberry/numerics/rational.hpp"

#include <cmath>

#include "shoberry/errors.hpp"

namespace shoberry::numerics {

std::optional<Ratio> rationalize(double x, double rel_tol, std::int64_t max_denominator) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("rationalize: argument must be positive and finite");
  if (!(rel_tol > 0.0)) throw ValidationError("rationalize: tolerance must be positive");

  // h/k are the convergent numerators/denominators, seeded with h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1.
  std::int64_t h_prev = 1, h_prev2 = 0;
  std::int64_t k_prev = 0, k_prev2 = 1;
  double remainder = x;

  for (int iteration = 0; iteration < 64; ++iteration) {
    const double floor_r = std::floor(remainder);
    if (floor_r > 9.0e15) return std::nullopt;
    const auto a = static_cast<std::int64_t>(floor_r);
    const std::int64_t h = a * h_prev + h_prev2;
    const std::int64_t k = a * k_prev + k_prev2;
    if (k > max_denominator) return std::nullopt;

    const Ratio candidate{h, k};
    if (h > 0 && std::abs(x - candidate.value()) < rel_tol * x) return candidate;

    const double frac = remainder - floor_r;
    if (frac <= 0.0) return std::nullopt;  // exact expansion ended without meeting tolerance
    remainder = 1.0 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

}  // namespace shoberry::numerics
