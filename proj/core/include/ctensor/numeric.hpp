#pragma once

#include <cstddef>
#include <span>

namespace ctensor {

/// Default ceiling on the number of entries a dense tensor may hold.
inline constexpr std::size_t kDefaultBudget = 10'000'000;

/// Correctly rounded sum of the inputs (Shewchuk expansion, as in Python's
/// math.fsum). The result depends only on the multiset of inputs, never on
/// their order, which keeps dual-path comparisons exact.
double exact_sum(std::span<const double> values);

/// n^m, or 0 when the result does not fit in std::size_t.
std::size_t checked_power(std::size_t base, std::size_t exponent) noexcept;

/// Materialization budget, honouring the CTENSOR_BUDGET environment variable.
std::size_t budget_from_environment(std::size_t fallback = kDefaultBudget);

}  // namespace ctensor
