#pragma once

#include "dvrp/model.hpp"

namespace dvrp::testing {

// One vehicle of capacity 10, three customers of demand 4 at distance 5
// from the depot at (0,0), released at 5, 10 and 15. The third release
// finds the vehicle out of capacity, so it must refill before serving it.
Instance refill_scenario();

// Depot (0,0); customers at (10,0) and (0,10), one vehicle, capacity 20.
Instance two_customer_square();

}  // namespace dvrp::testing
