#include "dvrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dvrp {

double euclidean_distance(Point a, Point b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

DistanceMatrix::DistanceMatrix(std::vector<Point> points, std::size_t dense_cap)
    : points_(std::move(points)) {
  const std::size_t n = points_.size();
  if (n == 0 || n > dense_cap) return;
  values_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean_distance(points_[i], points_[j]);
      values_[i * n + j] = d;
      values_[j * n + i] = d;
    }
  }
}

Instance::Instance(Point depot, int fleet_size, int capacity,
                   std::vector<Customer> customers)
    : depot_(depot),
      fleet_size_(fleet_size),
      capacity_(capacity),
      customers_(std::move(customers)) {
  if (fleet_size_ < 1) {
    throw InputError("fleet size must be at least 1, got " +
                     std::to_string(fleet_size_));
  }
  if (capacity_ < 1) {
    throw InputError("capacity must be at least 1, got " +
                     std::to_string(capacity_));
  }
  index_.reserve(customers_.size());
  for (std::size_t i = 0; i < customers_.size(); ++i) {
    const Customer& c = customers_[i];
    if (!index_.emplace(c.id, i).second) {
      throw InputError("duplicate customer id " + std::to_string(c.id));
    }
    if (c.demand < 1) {
      throw InputError("customer " + std::to_string(c.id) +
                       " has nonpositive demand " + std::to_string(c.demand));
    }
    if (!(c.release_time >= 0.0) || !std::isfinite(c.release_time)) {
      throw InputError("customer " + std::to_string(c.id) +
                       " has invalid release time");
    }
    if (!std::isfinite(c.location.x) || !std::isfinite(c.location.y)) {
      throw InputError("customer " + std::to_string(c.id) +
                       " has non-finite coordinates");
    }
    if (c.demand > capacity_) {
      throw DemandExceedsCapacityError(c.id, c.demand, capacity_);
    }
  }
}

const Customer& Instance::customer(CustomerId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw UnknownCustomerError(id);
  return customers_[it->second];
}

std::optional<std::size_t> Instance::index_of(CustomerId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<CustomerId> Instance::customer_ids() const {
  std::vector<CustomerId> ids;
  ids.reserve(customers_.size());
  for (const Customer& c : customers_) ids.push_back(c.id);
  return ids;
}

bool Instance::all_static() const noexcept {
  return std::all_of(customers_.begin(), customers_.end(),
                     [](const Customer& c) { return c.release_time == 0.0; });
}

double trip_cost(const Instance& instance, const Trip& trip) {
  const Point start = trip.anchor ? trip.anchor->origin : instance.depot();
  if (trip.visits.empty()) {
    return trip.anchor ? euclidean_distance(start, instance.depot()) : 0.0;
  }
  double cost = 0.0;
  Point at = start;
  for (CustomerId id : trip.visits) {
    const Point next = instance.customer(id).location;
    cost += euclidean_distance(at, next);
    at = next;
  }
  cost += euclidean_distance(at, instance.depot());
  return cost;
}

double solution_cost(const Instance& instance, const Solution& solution) {
  double cost = 0.0;
  for (const Trip& trip : solution.trips) cost += trip_cost(instance, trip);
  return cost;
}

int trip_load(const Instance& instance, const Trip& trip) {
  int load = 0;
  for (CustomerId id : trip.visits) load += instance.customer(id).demand;
  return load;
}

int trip_capacity(const Instance& instance, const Trip& trip) noexcept {
  return trip.anchor ? trip.anchor->capacity : instance.capacity();
}

Solution with_cost(const Instance& instance, Solution solution) {
  solution.cost = solution_cost(instance, solution);
  return solution;
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::CapacityExceeded: return "capacity-exceeded";
    case ViolationKind::MissingCustomer: return "missing-customer";
    case ViolationKind::DuplicateCustomer: return "duplicate-customer";
    case ViolationKind::UnknownCustomer: return "unknown-customer";
    case ViolationKind::UntargetedCustomer: return "untargeted-customer";
    case ViolationKind::FleetOveruse: return "fleet-overuse";
    case ViolationKind::EmptyPinnedTrip: return "empty-pinned-trip";
  }
  return "unknown";
}

std::size_t FeasibilityReport::count(ViolationKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [kind](const Violation& v) { return v.kind == kind; }));
}

std::string FeasibilityReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << violations[i].message;
  }
  return out.str();
}

FeasibilityReport check_feasible(const Instance& instance,
                                 const Solution& solution,
                                 std::span<const CustomerId> targeted) {
  FeasibilityReport report;
  auto add = [&](ViolationKind kind, std::optional<std::size_t> trip,
                 std::optional<CustomerId> customer, std::string message) {
    report.violations.push_back({kind, trip, customer, std::move(message)});
  };

  const std::unordered_set<CustomerId> wanted(targeted.begin(), targeted.end());
  std::unordered_set<CustomerId> seen;
  std::set<VehicleId> vehicles;

  for (std::size_t t = 0; t < solution.trips.size(); ++t) {
    const Trip& trip = solution.trips[t];
    vehicles.insert(trip.vehicle_id);
    if (trip.vehicle_id < 0 || trip.vehicle_id >= instance.fleet_size()) {
      add(ViolationKind::FleetOveruse, t, std::nullopt,
          "trip " + std::to_string(t) + " uses vehicle " +
              std::to_string(trip.vehicle_id) + " outside fleet of " +
              std::to_string(instance.fleet_size()));
    }
    if (trip.anchor && trip.anchor->pinned_first && trip.visits.empty()) {
      add(ViolationKind::EmptyPinnedTrip, t, std::nullopt,
          "trip " + std::to_string(t) + " lost its pinned first visit");
    }
    int load = 0;
    for (CustomerId id : trip.visits) {
      const auto index = instance.index_of(id);
      if (!index) {
        add(ViolationKind::UnknownCustomer, t, id,
            "trip " + std::to_string(t) + " visits unknown customer " +
                std::to_string(id));
        continue;
      }
      load += instance.customers()[*index].demand;
      if (!seen.insert(id).second) {
        add(ViolationKind::DuplicateCustomer, t, id,
            "customer " + std::to_string(id) + " is visited more than once");
      }
      if (!wanted.contains(id)) {
        add(ViolationKind::UntargetedCustomer, t, id,
            "customer " + std::to_string(id) + " is not targeted");
      }
    }
    const int capacity = trip_capacity(instance, trip);
    if (load > capacity) {
      add(ViolationKind::CapacityExceeded, t, std::nullopt,
          "trip " + std::to_string(t) + " carries " + std::to_string(load) +
              " above capacity " + std::to_string(capacity));
    }
  }

  if (vehicles.size() > static_cast<std::size_t>(instance.fleet_size())) {
    add(ViolationKind::FleetOveruse, std::nullopt, std::nullopt,
        std::to_string(vehicles.size()) + " vehicles used, fleet has " +
            std::to_string(instance.fleet_size()));
  }

  std::vector<CustomerId> ordered(wanted.begin(), wanted.end());
  std::sort(ordered.begin(), ordered.end());
  for (CustomerId id : ordered) {
    if (!seen.contains(id)) {
      add(ViolationKind::MissingCustomer, std::nullopt, id,
          "customer " + std::to_string(id) + " is not served");
    }
  }
  return report;
}

FeasibilityReport check_feasible(const Instance& instance,
                                 const Solution& solution) {
  const std::vector<CustomerId> all = instance.customer_ids();
  return check_feasible(instance, solution, all);
}

}  // namespace dvrp
