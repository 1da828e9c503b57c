#include "search_space.hpp"

#include <algorithm>
#include <string>

namespace dvrp::detail {

SearchSpace::SearchSpace(const Instance& instance,
                         std::span<const CustomerId> targeted,
                         std::span<const AnchorSpec> anchors,
                         std::size_t dense_cap)
    : instance_(&instance) {
  std::vector<CustomerId> sorted(targeted.begin(), targeted.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("targeted customer list contains duplicates");
  }
  customer_count_ = static_cast<int>(sorted.size());

  std::vector<Point> points;
  points.reserve(sorted.size() + anchors.size() + 1);
  points.push_back(instance.depot());
  ids_.push_back(-1);
  demand_.push_back(0);
  for (CustomerId id : sorted) {
    const Customer& c = instance.customer(id);
    points.push_back(c.location);
    ids_.push_back(id);
    demand_.push_back(c.demand);
  }

  for (const AnchorSpec& spec : anchors) {
    LocalAnchor local;
    local.vehicle = spec.vehicle;
    local.capacity = spec.capacity;
    local.origin = static_cast<int>(points.size());
    if (spec.capacity < 0 || spec.capacity > instance.capacity()) {
      throw InputError("anchor capacity " + std::to_string(spec.capacity) +
                       " outside [0, " + std::to_string(instance.capacity()) +
                       "]");
    }
    points.push_back(spec.origin);
    ids_.push_back(-1);
    demand_.push_back(0);
    anchors_.push_back(local);
  }
  // Pinned visits are resolved after all ids are known.
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    if (!anchors[a].pinned) continue;
    const int node = node_of(*anchors[a].pinned);
    for (std::size_t b = 0; b < a; ++b) {
      if (anchors_[b].pinned == node) {
        throw InputError("customer " + std::to_string(*anchors[a].pinned) +
                         " is pinned to two vehicles");
      }
    }
    if (demand_[node] > anchors_[a].capacity) {
      throw InputError("pinned customer " +
                       std::to_string(*anchors[a].pinned) +
                       " does not fit the remaining vehicle load");
    }
    anchors_[a].pinned = node;
  }

  dist_ = DistanceMatrix(std::move(points), dense_cap);
}

int SearchSpace::node_of(CustomerId id) const {
  const auto first = ids_.begin() + 1;
  const auto last = first + customer_count_;
  const auto it = std::lower_bound(first, last, id);
  if (it == last || *it != id) throw UnknownCustomerError(id);
  return static_cast<int>(it - ids_.begin());
}

double route_cost(const SearchSpace& space, const Route& route) {
  if (route.nodes.empty()) return space.dist(route.start, 0);
  double cost = 0.0;
  int at = route.start;
  for (int node : route.nodes) {
    cost += space.dist(at, node);
    at = node;
  }
  return cost + space.dist(at, 0);
}

double routes_cost(const SearchSpace& space, std::span<const Route> routes) {
  double cost = 0.0;
  for (const Route& r : routes) cost += route_cost(space, r);
  return cost;
}

LoadedSolution load_solution(const Instance& instance, const Solution& solution,
                             std::size_t dense_cap) {
  std::vector<CustomerId> targeted;
  std::vector<AnchorSpec> anchors;
  for (const Trip& trip : solution.trips) {
    targeted.insert(targeted.end(), trip.visits.begin(), trip.visits.end());
    if (trip.anchor) {
      AnchorSpec spec;
      spec.vehicle = trip.vehicle_id;
      spec.origin = trip.anchor->origin;
      spec.capacity = trip.anchor->capacity;
      if (trip.anchor->pinned_first) {
        if (trip.visits.empty()) {
          throw InfeasibleSolutionError("anchored trip lost its pinned visit");
        }
        spec.pinned = trip.visits.front();
      }
      anchors.push_back(spec);
    }
  }

  LoadedSolution loaded{SearchSpace(instance, targeted, anchors, dense_cap), {}};
  const SearchSpace& space = loaded.space;
  int next_anchor = 0;
  for (const Trip& trip : solution.trips) {
    Route route;
    route.vehicle = trip.vehicle_id;
    if (trip.anchor) {
      route.anchor = next_anchor++;
      const LocalAnchor& a = space.anchors()[route.anchor];
      route.start = a.origin;
      route.pinned = a.pinned >= 0;
      route.capacity = a.capacity;
    } else {
      route.capacity = space.capacity();
    }
    for (CustomerId id : trip.visits) {
      const int node = space.node_of(id);
      route.nodes.push_back(node);
      route.load += space.demand(node);
    }
    loaded.routes.push_back(std::move(route));
  }
  return loaded;
}

Trip to_trip(const SearchSpace& space, const Route& route) {
  Trip trip;
  trip.vehicle_id = route.vehicle;
  trip.visits.reserve(route.nodes.size());
  for (int node : route.nodes) trip.visits.push_back(space.id_of(node));
  if (route.anchored()) {
    const LocalAnchor& a = space.anchors()[route.anchor];
    trip.anchor = TripAnchor{space.point(a.origin), a.capacity, a.pinned >= 0};
  }
  return trip;
}

Solution to_solution(const SearchSpace& space, std::span<const Route> routes) {
  Solution solution;
  for (const Route& r : routes) {
    if (r.nodes.empty() && !r.anchored()) continue;
    solution.trips.push_back(to_trip(space, r));
  }
  return with_cost(space.instance(), std::move(solution));
}

}  // namespace dvrp::detail
