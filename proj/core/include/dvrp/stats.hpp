#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace dvrp {

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  // Sample (n - 1) standard deviation; absent for fewer than two values.
  std::optional<double> std_dev;
  // Half-width t(0.975, n - 1) * s / sqrt(n); absent with std_dev.
  std::optional<double> ci95;
};

// Throws InputError on an empty sample.
SummaryStats summarize_stats(std::span<const double> values);

// 100 * (baseline - average) / baseline. Throws InputError unless baseline > 0.
double improvement_percent(double baseline, double average);

}  // namespace dvrp
