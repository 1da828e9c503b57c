#include "generators.hpp"

#include <algorithm>

namespace dvrp::testing {

Instance random_instance(Rng& rng, const RandomInstanceOptions& o) {
  const int n = static_cast<int>(rng.uniform_int(o.min_customers, o.max_customers));
  const int capacity = static_cast<int>(rng.uniform_int(o.min_capacity, o.max_capacity));
  std::vector<Customer> customers;
  for (int i = 0; i < n; ++i) {
    Customer c;
    c.id = i + 1;
    c.location = {rng.uniform(0.0, o.extent), rng.uniform(0.0, o.extent)};
    c.demand = static_cast<int>(rng.uniform_int(1, std::min(o.max_demand, capacity)));
    if (o.horizon > 0.0 && rng.uniform01() < 0.5) {
      c.release_time = o.horizon * (1.0 - rng.uniform01());
    }
    customers.push_back(c);
  }
  const int fleet = o.fleet_size > 0 ? o.fleet_size : std::max(1, n);
  return Instance({o.extent / 2, o.extent / 2}, fleet, capacity, std::move(customers));
}

Solution random_solution(Rng& rng, const Instance& instance) {
  std::vector<CustomerId> ids = instance.customer_ids();
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng.below(i)]);
  }
  Solution s;
  int load = instance.capacity() + 1;
  for (CustomerId id : ids) {
    const int d = instance.customer(id).demand;
    if (load + d > instance.capacity() || rng.uniform01() < 0.2) {
      s.trips.push_back(Trip{
          static_cast<VehicleId>(s.trips.size() % static_cast<std::size_t>(instance.fleet_size())),
          {},
          std::nullopt});
      load = 0;
    }
    s.trips.back().visits.push_back(id);
    load += d;
  }
  return with_cost(instance, std::move(s));
}

std::vector<VehicleSeed> random_seeds(Rng& rng, const Instance& instance) {
  std::vector<VehicleSeed> seeds;
  const int count = static_cast<int>(rng.uniform_int(0, std::min(3, instance.fleet_size())));
  std::vector<CustomerId> ids = instance.customer_ids();
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng.below(i)]);
  }
  for (int v = 0; v < count; ++v) {
    VehicleSeed seed;
    seed.vehicle_id = v;
    seed.origin = {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
    seed.capacity = static_cast<int>(rng.uniform_int(0, instance.capacity()));
    if (static_cast<std::size_t>(v) < ids.size() && rng.uniform01() < 0.5) {
      const CustomerId id = ids[static_cast<std::size_t>(v)];
      seed.forced_first = id;
      seed.capacity = std::max(seed.capacity, instance.customer(id).demand);
    }
    seeds.push_back(seed);
  }
  return seeds;
}

Move random_move(Rng& rng, const Solution& solution) {
  const std::size_t trips = std::max<std::size_t>(1, solution.trips.size());
  const auto size_of = [&](std::size_t t) {
    return t < solution.trips.size() ? solution.trips[t].visits.size() : 0;
  };
  // Index below `n`, or occasionally just past it.
  const auto pick = [&](std::size_t n) {
    return rng.uniform01() < 0.05 ? n + rng.below(2) : rng.below(std::max<std::size_t>(1, n));
  };
  Move m;
  m.kind = kAllMoveKinds[rng.below(std::size(kAllMoveKinds))];
  m.source_trip = pick(trips);
  const bool intra = m.kind == MoveKind::Relocate || m.kind == MoveKind::Swap ||
                     m.kind == MoveKind::TwoOpt;
  m.target_trip = intra ? m.source_trip : pick(trips);
  const bool tails = m.kind == MoveKind::CrossRouteTwoOpt;
  m.source_pos = pick(size_of(m.source_trip) + tails);
  const std::size_t slots =
      size_of(m.target_trip) + (m.kind == MoveKind::CrossRouteRelocate || tails);
  m.target_pos = pick(slots);
  if ((m.kind == MoveKind::Swap || m.kind == MoveKind::TwoOpt) && m.source_pos > m.target_pos) {
    std::swap(m.source_pos, m.target_pos);
  }
  return m;
}

}  // namespace dvrp::testing
