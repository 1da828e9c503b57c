#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dvrp/model.hpp"

namespace dvrp::detail {

struct AnchorSpec {
  VehicleId vehicle = 0;
  Point origin;
  int capacity = 0;
  std::optional<CustomerId> pinned;
};

struct LocalAnchor {
  VehicleId vehicle = 0;
  int origin = 0;  // node index of the origin point
  int capacity = 0;
  int pinned = -1;  // node index of the pinned first visit, -1 if none
};

/// Dense renumbering of one routing subproblem.
///
/// Node 0 is the depot, nodes 1..k the targeted customers in ascending id
/// order, and nodes k+1.. the origins of anchored trips.
class SearchSpace {
 public:
  SearchSpace(const Instance& instance, std::span<const CustomerId> targeted,
              std::span<const AnchorSpec> anchors,
              std::size_t dense_cap = DistanceMatrix::kDefaultDenseCap);

  const Instance& instance() const noexcept { return *instance_; }
  int customer_count() const noexcept { return customer_count_; }
  int node_count() const noexcept { return static_cast<int>(dist_.size()); }
  bool is_customer(int node) const noexcept {
    return node >= 1 && node <= customer_count_;
  }

  int node_of(CustomerId id) const;
  CustomerId id_of(int node) const noexcept { return ids_[node]; }
  int demand(int node) const noexcept { return demand_[node]; }
  double dist(int a, int b) const noexcept {
    return dist_(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  const Point& point(int node) const { return dist_.point(node); }
  int capacity() const noexcept { return instance_->capacity(); }
  int fleet_size() const noexcept { return instance_->fleet_size(); }
  std::span<const LocalAnchor> anchors() const noexcept { return anchors_; }

 private:
  const Instance* instance_;
  int customer_count_ = 0;
  std::vector<CustomerId> ids_;
  std::vector<int> demand_;
  std::vector<LocalAnchor> anchors_;
  DistanceMatrix dist_;
};

/// Mutable trip representation used inside the search.
struct Route {
  VehicleId vehicle = 0;
  int start = 0;    // depot or anchor origin node
  int anchor = -1;  // index into SearchSpace::anchors(), -1 for depot trips
  bool pinned = false;
  int capacity = 0;
  int load = 0;
  std::vector<int> nodes;

  bool anchored() const noexcept { return anchor >= 0; }
  int size() const noexcept { return static_cast<int>(nodes.size()); }
  bool movable(int pos) const noexcept { return !(pinned && pos == 0); }
  bool insertable(int pos) const noexcept { return !(pinned && pos == 0); }
};

double route_cost(const SearchSpace& space, const Route& route);
double routes_cost(const SearchSpace& space, std::span<const Route> routes);

/// Builds the space and routes for an existing solution. Anchors are read
/// from the trips; the targeted set is every customer the trips visit.
struct LoadedSolution {
  SearchSpace space;
  std::vector<Route> routes;
};
LoadedSolution load_solution(const Instance& instance, const Solution& solution,
                             std::size_t dense_cap =
                                 DistanceMatrix::kDefaultDenseCap);

Trip to_trip(const SearchSpace& space, const Route& route);

/// Converts routes back, dropping empty depot trips. Cost is recomputed
/// from the instance.
Solution to_solution(const SearchSpace& space, std::span<const Route> routes);

}  // namespace dvrp::detail
