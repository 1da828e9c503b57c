#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dvrp/model.hpp"

namespace dvrp::testing {

struct ExactResult {
  double cost = 0.0;
  std::vector<std::vector<CustomerId>> trips;
};

// Exhaustive search over every partition of the customers into at most
// `max_trips` groups and every visiting order inside each group. Intended
// for n <= 8. Returns nullopt when no capacity-feasible partition exists.
std::optional<ExactResult> brute_force_optimum(const Instance& instance, int max_trips);

// Shortest closed tour depot -> visits -> depot over all orders.
double best_order_cost(const Instance& instance, std::vector<CustomerId> visits);

}  // namespace dvrp::testing
