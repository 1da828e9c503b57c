#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dvrp/construction.hpp"
#include "dvrp/improvement.hpp"
#include "dvrp/model.hpp"

namespace dvrp {

enum class TimelineAction { Depart, ArriveCustomer, Serve, ArriveDepot, Reload, Reoptimize };

// Spellings: depart, arrive-customer, serve, arrive-depot, reload, reoptimize.
std::string_view to_string(TimelineAction action) noexcept;

struct TimelineRecord {
  double time = 0.0;
  std::optional<VehicleId> vehicle;  // empty for reoptimize records
  TimelineAction action = TimelineAction::Depart;
  std::optional<CustomerId> customer;

  friend bool operator==(const TimelineRecord&, const TimelineRecord&) = default;
};

struct SimulationConfig {
  ConstructionMethod construction = ConstructionMethod::Savings;
  // Empty runs the first stage only.
  std::optional<ImprovementMethod> improvement = ImprovementMethod::TabuSearch;
  ImprovementBudget budget;
  ImprovementParams params;
  double speed = 1.0;
};

struct ServedVisit {
  CustomerId customer = 0;
  double time = 0.0;
};

/// Observable state of one vehicle.
///
/// A vehicle is either at rest at `position` or travelling a leg from
/// `position` to its committed stop, arriving at `arrival_time`.
struct VehicleState {
  enum class Stop { None, Customer, Depot };

  VehicleId id = 0;
  Point position;
  int remaining_load = 0;
  bool at_depot = true;
  Stop committed = Stop::None;
  std::optional<CustomerId> committed_customer;
  double departure_time = 0.0;
  double arrival_time = 0.0;
  std::vector<ServedVisit> served;

  bool at_rest() const noexcept { return committed == Stop::None; }
};

struct SimulationResult {
  std::vector<TimelineRecord> timeline;
  double total_cost = 0.0;
  std::size_t reoptimizations = 0;
  // Wall-clock time spent in the two-stage solver; not part of the clock.
  double solver_seconds = 0.0;
};

/// Event-driven replay of customer arrivals with re-optimization.
///
/// Vehicles reload to full capacity when they leave the depot; a reload is
/// logged only when the vehicle left its previous trip short of capacity.
///
/// Each step advances the clock to the next event time and handles, in
/// order: vehicle arrivals (by vehicle id), admission of every customer
/// released at that instant (by id) followed by one re-optimization, and
/// dispatch of vehicles at rest. Only the leg a vehicle is travelling is
/// frozen; everything else is re-planned. Solver time does not advance the
/// simulation clock.
class Simulator {
 public:
  Simulator(const Instance& instance, SimulationConfig config);

  double clock() const noexcept { return clock_; }
  std::span<const VehicleState> vehicles() const noexcept { return vehicles_; }
  const std::vector<TimelineRecord>& timeline() const noexcept { return timeline_; }

  std::vector<CustomerId> served() const;
  std::vector<CustomerId> pending() const;
  std::vector<CustomerId> future() const;

  /// The current plan over pending customers. Vehicles with a committed
  /// customer or remaining visits of an open trip get an anchored trip that
  /// starts at their current position; later trips follow, depot-anchored.
  Solution plan() const;

  /// Instance over the pending customers; the plan is feasible against it.
  Instance pending_instance() const;

  /// Adds a customer released at the current clock and re-optimizes.
  /// Throws AdmissionError for a known id, a release time other than the
  /// clock, or a demand outside [1, capacity].
  void admit_customer(const Customer& customer);

  /// Processes the next event instant. Returns false once every customer
  /// is served and all vehicles rest at the depot.
  bool step();
  bool finished() const;

  /// Distance of all completed legs.
  double total_cost() const;
  std::size_t reoptimizations() const noexcept { return reoptimizations_; }
  double solver_seconds() const noexcept { return solver_seconds_; }

  /// Checks the state invariants; throws std::logic_error on a breach.
  void validate() const;

  void set_observer(std::function<void(const Simulator&)> observer) {
    observer_ = std::move(observer);
  }

  SimulationResult run();

 private:
  struct Plan {
    std::deque<CustomerId> current;                // rest of the open trip
    std::deque<std::vector<CustomerId>> upcoming;  // later depot trips
    std::optional<std::size_t> excursion;          // index into excursion_costs_
  };

  const Customer& known(CustomerId id) const;
  Point position_at(const VehicleState& v, double t) const;
  std::optional<double> next_event_time() const;
  void arrive(VehicleState& v);
  void admit(const Customer& customer);
  void reoptimize();
  void dispatch(VehicleState& v);
  void depart(VehicleState& v, Point to, std::optional<CustomerId> customer);
  void log(std::optional<VehicleId> vehicle, TimelineAction action,
           std::optional<CustomerId> customer = std::nullopt);

  Point depot_;
  int fleet_size_;
  int capacity_;
  SimulationConfig config_;
  double clock_ = 0.0;
  std::map<CustomerId, Customer> customers_;
  std::vector<CustomerId> future_;  // by (release time, id), consumed from the front
  std::size_t next_future_ = 0;
  std::set<CustomerId> pending_;
  std::vector<CustomerId> served_;
  std::vector<VehicleState> vehicles_;
  std::vector<Plan> plans_;
  std::vector<double> excursion_costs_;  // in dispatch order
  std::vector<TimelineRecord> timeline_;
  std::size_t reoptimizations_ = 0;
  double solver_seconds_ = 0.0;
  std::function<void(const Simulator&)> observer_;
};

/// Runs a simulation to completion. With master seed s = config.budget.seed,
/// the k-th re-optimization (k >= 1) uses derive_seed(s, k) and the first
/// uses s itself, so an instance whose customers are all static reproduces
/// the static two-stage solve.
SimulationResult run_simulation(const Instance& instance, const SimulationConfig& config);

/// The static pipeline: construct over all customers, then improve.
ImprovementResult solve_static(const Instance& instance, ConstructionMethod construction,
                               std::optional<ImprovementMethod> improvement,
                               const ImprovementBudget& budget,
                               const ImprovementParams& params = {},
                               FleetPolicy fleet_policy = FleetPolicy::CheckAfter);

}  // namespace dvrp
