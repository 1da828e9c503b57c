#pragma once

#include <cstdint>

namespace dvrp {

using CustomerId = std::int64_t;
using VehicleId = int;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

}  // namespace dvrp
