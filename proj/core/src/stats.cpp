#include "dvrp/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "dvrp/errors.hpp"

namespace dvrp {

SummaryStats summarize_stats(std::span<const double> values) {
  if (values.empty()) throw InputError("statistics need at least one value");
  SummaryStats s;
  s.count = values.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count < 2) return s;

  double squares = 0.0;
  for (double v : values) squares += (v - s.mean) * (v - s.mean);
  const double n = static_cast<double>(s.count);
  s.std_dev = std::sqrt(squares / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  s.ci95 = boost::math::quantile(dist, 0.975) * *s.std_dev / std::sqrt(n);
  return s;
}

double improvement_percent(double baseline, double average) {
  if (!(baseline > 0.0)) throw InputError("improvement needs a positive baseline cost");
  return 100.0 * (baseline - average) / baseline;
}

}  // namespace dvrp
