#pragma once

#include <cstdint>
#include <vector>

#include "dvrp/construction.hpp"
#include "dvrp/improvement.hpp"
#include "dvrp/model.hpp"
#include "dvrp/random.hpp"

namespace dvrp::testing {

struct RandomInstanceOptions {
  int min_customers = 1;
  int max_customers = 8;
  int min_capacity = 30;
  int max_capacity = 100;
  int max_demand = 30;
  int fleet_size = 0;  // 0: one vehicle per customer
  double extent = 100.0;
  double horizon = 0.0;  // 0: all static
};

Instance random_instance(Rng& rng, const RandomInstanceOptions& options = {});

// Capacity-feasible solution with random trip composition and order.
// Vehicle ids cycle through the fleet.
Solution random_solution(Rng& rng, const Instance& instance);

// Up to three vehicles already on the road, at random positions with random
// spare capacity; some carry a forced first customer.
std::vector<VehicleSeed> random_seeds(Rng& rng, const Instance& instance);

// A move of random kind whose indices are mostly, but not always, in range.
Move random_move(Rng& rng, const Solution& solution);

}  // namespace dvrp::testing
