#include "ctensor/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctensor {

double exact_sum(std::span<const double> values) {
  // Partials hold a non-overlapping expansion of the running sum.
  std::vector<double> partials;
  partials.reserve(16);
  for (double x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("exact_sum: non-finite input");
    std::size_t used = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[used++] = lo;
      x = hi;
    }
    partials.resize(used);
    partials.push_back(x);
  }
  if (partials.empty()) return 0.0;

  // Sum from the top, correcting the final rounding (half-even ties).
  auto it = partials.size();
  double hi = partials[--it];
  double lo = 0.0;
  while (it > 0) {
    const double x = hi;
    const double y = partials[--it];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  if (it > 0 && ((lo < 0.0 && partials[it - 1] < 0.0) || (lo > 0.0 && partials[it - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

std::size_t checked_power(std::size_t base, std::size_t exponent) noexcept {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) return 0;
    result *= base;
  }
  return result;
}

std::size_t budget_from_environment(std::size_t fallback) {
  const char* raw = std::getenv("CTENSOR_BUDGET");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    const auto parsed = std::stoull(raw);
    if (parsed == 0) throw std::invalid_argument("zero");
    return static_cast<std::size_t>(parsed);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("CTENSOR_BUDGET is not a positive integer: ") + raw);
  }
}

}  // namespace ctensor
