#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dvrp/errors.hpp"
#include "dvrp/types.hpp"

namespace dvrp {

double euclidean_distance(Point a, Point b) noexcept;

struct Customer {
  CustomerId id = 0;
  Point location;
  int demand = 1;
  double release_time = 0.0;

  friend bool operator==(const Customer&, const Customer&) = default;
};

/// Symmetric Euclidean distances over a fixed point set.
///
/// Up to `dense_cap` points the full matrix is precomputed; above it every
/// lookup is computed from coordinates. Both paths evaluate the same
/// expression, so they agree bit for bit.
class DistanceMatrix {
 public:
  static constexpr std::size_t kDefaultDenseCap = 2000;

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<Point> points,
                          std::size_t dense_cap = kDefaultDenseCap);

  double operator()(std::size_t a, std::size_t b) const noexcept {
    if (!values_.empty()) return values_[a * points_.size() + b];
    return euclidean_distance(points_[a], points_[b]);
  }

  std::size_t size() const noexcept { return points_.size(); }
  bool dense() const noexcept { return !values_.empty() || points_.empty(); }
  const Point& point(std::size_t i) const { return points_[i]; }

 private:
  std::vector<Point> points_;
  std::vector<double> values_;
};

/// Single-depot instance with a homogeneous fleet.
///
/// Validated on construction: fleet size and capacity positive, customer
/// ids unique, every demand in [1, capacity], release times nonnegative.
/// Immutable afterwards.
class Instance {
 public:
  Instance(Point depot, int fleet_size, int capacity,
           std::vector<Customer> customers);

  const Point& depot() const noexcept { return depot_; }
  int fleet_size() const noexcept { return fleet_size_; }
  int capacity() const noexcept { return capacity_; }
  std::span<const Customer> customers() const noexcept { return customers_; }
  std::size_t size() const noexcept { return customers_.size(); }

  bool contains(CustomerId id) const { return index_.contains(id); }
  // Throws UnknownCustomerError.
  const Customer& customer(CustomerId id) const;
  std::optional<std::size_t> index_of(CustomerId id) const;

  std::vector<CustomerId> customer_ids() const;
  bool all_static() const noexcept;

 private:
  Point depot_;
  int fleet_size_;
  int capacity_;
  std::vector<Customer> customers_;
  std::unordered_map<CustomerId, std::size_t> index_;
};

/// Where a trip starts when it does not leave from the depot: a vehicle
/// already out on the road with `capacity` units left. With `pinned_first`
/// the first visit is the vehicle's in-flight stop and may not be moved.
struct TripAnchor {
  Point origin;
  int capacity = 0;
  bool pinned_first = false;

  friend bool operator==(const TripAnchor&, const TripAnchor&) = default;
};

/// Ordered visits of one vehicle between two depot stops. The depot is
/// implicit at both ends (at the end only, for anchored trips).
struct Trip {
  VehicleId vehicle_id = 0;
  std::vector<CustomerId> visits;
  std::optional<TripAnchor> anchor;

  friend bool operator==(const Trip&, const Trip&) = default;
};

struct Solution {
  std::vector<Trip> trips;
  double cost = 0.0;
};

// Throws UnknownCustomerError for ids not in the instance.
double trip_cost(const Instance& instance, const Trip& trip);
double solution_cost(const Instance& instance, const Solution& solution);
int trip_load(const Instance& instance, const Trip& trip);
int trip_capacity(const Instance& instance, const Trip& trip) noexcept;

/// Sets `solution.cost` from the trips and returns the solution.
Solution with_cost(const Instance& instance, Solution solution);

enum class ViolationKind {
  CapacityExceeded,
  MissingCustomer,
  DuplicateCustomer,
  UnknownCustomer,
  UntargetedCustomer,
  FleetOveruse,
  EmptyPinnedTrip,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> trip;
  std::optional<CustomerId> customer;
  std::string message;
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const noexcept;
  std::string summary() const;
};

/// Lists every violation of the routing constraints with respect to the
/// customers in `targeted` (all instance customers when omitted).
FeasibilityReport check_feasible(const Instance& instance,
                                 const Solution& solution,
                                 std::span<const CustomerId> targeted);
FeasibilityReport check_feasible(const Instance& instance,
                                 const Solution& solution);

}  // namespace dvrp
