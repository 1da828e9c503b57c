#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dvrp/model.hpp"

namespace dvrp {

enum class ConstructionMethod { Savings, PathCheapestArc, GlobalCheapestArc };

inline constexpr ConstructionMethod kAllConstructionMethods[] = {
    ConstructionMethod::Savings, ConstructionMethod::PathCheapestArc,
    ConstructionMethod::GlobalCheapestArc};

// Canonical spellings: savings, path-cheapest-arc, global-cheapest-arc.
std::string_view to_string(ConstructionMethod method) noexcept;
std::optional<ConstructionMethod> parse_construction_method(std::string_view name);

enum class FleetPolicy {
  // Build without regard to the fleet, then fail if more than m trips result.
  CheckAfter,
  // Build freely, then merge trips pairwise until at most m remain.
  Repair,
  // Vehicles may run several trips; any number of trips is accepted.
  MultiTrip,
};

/// A vehicle that is already on the road when construction runs. Its trip
/// starts at `origin` with `capacity` units left, and `forced_first`, when
/// set, must stay its first visit.
struct VehicleSeed {
  VehicleId vehicle_id = 0;
  Point origin;
  int capacity = 0;
  std::optional<CustomerId> forced_first;
};

struct ConstructionOptions {
  FleetPolicy fleet_policy = FleetPolicy::CheckAfter;
  std::vector<VehicleSeed> seeds;
};

/// Builds a feasible solution over `targeted` from scratch. Deterministic.
///
/// Seeded vehicles come first in the result, one anchored trip each, in
/// seed order. Depot trips follow. Throws InfeasibleConstructionError when
/// the fleet policy cannot be met.
Solution construct(const Instance& instance, ConstructionMethod method,
                   std::span<const CustomerId> targeted,
                   const ConstructionOptions& options = {});
Solution construct(const Instance& instance, ConstructionMethod method);

struct Saving {
  CustomerId first = 0;  // smaller id
  CustomerId second = 0;
  double value = 0.0;

  friend bool operator==(const Saving&, const Saving&) = default;
};

/// Clarke-Wright savings d(0,i) + d(0,j) - d(i,j) for every unordered pair,
/// largest first, ties by (smaller id, larger id).
std::vector<Saving> savings_list(const Instance& instance,
                                 std::span<const CustomerId> targeted);

}  // namespace dvrp
