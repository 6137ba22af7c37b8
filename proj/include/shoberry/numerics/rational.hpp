#pragma once

#include <cstdint>
#include <optional>

namespace shoberry::numerics {

struct Ratio {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

inline constexpr std::int64_t kMaxDenominator = 1'000'000;

/// First continued-fraction convergent p/q of x > 0 with q <= max_denominator
/// and |x - p/q| < rel_tol * x. Convergents are coprime by construction.
/// Returns nullopt when no convergent within the cap reaches the tolerance.
std::optional<Ratio> rationalize(double x, double rel_tol, std::int64_t max_denominator = kMaxDenominator);

}  // namespace shoberry::numerics
