#include "dvrp/dynamic.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>

#include "dvrp/random.hpp"

namespace dvrp {

std::string_view to_string(TimelineAction action) noexcept {
  switch (action) {
    case TimelineAction::Depart: return "depart";
    case TimelineAction::ArriveCustomer: return "arrive-customer";
    case TimelineAction::Serve: return "serve";
    case TimelineAction::ArriveDepot: return "arrive-depot";
    case TimelineAction::Reload: return "reload";
    case TimelineAction::Reoptimize: return "reoptimize";
  }
  return "unknown";
}

ImprovementResult solve_static(const Instance& instance, ConstructionMethod construction,
                               std::optional<ImprovementMethod> improvement,
                               const ImprovementBudget& budget,
                               const ImprovementParams& params, FleetPolicy fleet_policy) {
  const std::vector<CustomerId> ids = instance.customer_ids();
  ConstructionOptions options;
  options.fleet_policy = fleet_policy;
  Solution initial = construct(instance, construction, ids, options);
  if (!improvement) {
    ImprovementResult result;
    result.solution = std::move(initial);
    result.stats.stop = StopReason::NoMoves;
    return result;
  }
  return improve(instance, initial, *improvement, budget, params);
}

Simulator::Simulator(const Instance& instance, SimulationConfig config)
    : depot_(instance.depot()),
      fleet_size_(instance.fleet_size()),
      capacity_(instance.capacity()),
      config_(std::move(config)) {
  if (!(config_.speed > 0.0)) throw InputError("vehicle speed must be positive");
  for (const Customer& c : instance.customers()) {
    customers_.emplace(c.id, c);
    future_.push_back(c.id);
  }
  std::sort(future_.begin(), future_.end(), [&](CustomerId a, CustomerId b) {
    const double ra = customers_.at(a).release_time;
    const double rb = customers_.at(b).release_time;
    return ra != rb ? ra < rb : a < b;
  });
  vehicles_.resize(static_cast<std::size_t>(fleet_size_));
  plans_.resize(vehicles_.size());
  for (int v = 0; v < fleet_size_; ++v) {
    vehicles_[v].id = v;
    vehicles_[v].position = depot_;
    vehicles_[v].remaining_load = capacity_;
  }
}

const Customer& Simulator::known(CustomerId id) const {
  const auto it = customers_.find(id);
  if (it == customers_.end()) throw UnknownCustomerError(id);
  return it->second;
}

std::vector<CustomerId> Simulator::served() const { return served_; }

std::vector<CustomerId> Simulator::pending() const {
  return {pending_.begin(), pending_.end()};
}

std::vector<CustomerId> Simulator::future() const {
  return {future_.begin() + static_cast<std::ptrdiff_t>(next_future_), future_.end()};
}

Point Simulator::position_at(const VehicleState& v, double t) const {
  if (v.at_rest()) return v.position;
  const Point to = v.committed == VehicleState::Stop::Depot
                       ? depot_
                       : known(*v.committed_customer).location;
  const double span = v.arrival_time - v.departure_time;
  if (!(span > 0.0) || t >= v.arrival_time) return to;
  if (t <= v.departure_time) return v.position;
  const double f = (t - v.departure_time) / span;
  return {v.position.x + f * (to.x - v.position.x), v.position.y + f * (to.y - v.position.y)};
}

Instance Simulator::pending_instance() const {
  std::vector<Customer> customers;
  customers.reserve(pending_.size());
  for (CustomerId id : pending_) customers.push_back(known(id));
  return Instance(depot_, fleet_size_, capacity_, std::move(customers));
}

Solution Simulator::plan() const {
  Solution solution;
  for (const VehicleState& v : vehicles_) {
    const Plan& p = plans_[v.id];
    const bool in_flight = v.committed == VehicleState::Stop::Customer;
    if (in_flight || !p.current.empty() || (v.at_rest() && !v.at_depot)) {
      Trip trip;
      trip.vehicle_id = v.id;
      if (in_flight) trip.visits.push_back(*v.committed_customer);
      trip.visits.insert(trip.visits.end(), p.current.begin(), p.current.end());
      trip.anchor = TripAnchor{position_at(v, clock_), v.remaining_load, in_flight};
      solution.trips.push_back(std::move(trip));
    }
  }
  for (const VehicleState& v : vehicles_) {
    for (const auto& visits : plans_[v.id].upcoming) {
      solution.trips.push_back(Trip{v.id, visits, std::nullopt});
    }
  }
  if (!pending_.empty()) solution = with_cost(pending_instance(), std::move(solution));
  return solution;
}

void Simulator::log(std::optional<VehicleId> vehicle, TimelineAction action,
                    std::optional<CustomerId> customer) {
  timeline_.push_back(TimelineRecord{clock_, vehicle, action, customer});
}

void Simulator::admit(const Customer& customer) {
  pending_.insert(customer.id);
}

void Simulator::admit_customer(const Customer& customer) {
  const std::string who = "customer " + std::to_string(customer.id);
  if (customers_.contains(customer.id)) throw AdmissionError(who + " is already known");
  if (customer.release_time != clock_) {
    throw AdmissionError(who + " released at " + std::to_string(customer.release_time) +
                         ", clock is " + std::to_string(clock_));
  }
  if (customer.demand < 1 || customer.demand > capacity_) {
    throw AdmissionError(who + " has demand " + std::to_string(customer.demand) +
                         " outside [1, " + std::to_string(capacity_) + "]");
  }
  customers_.emplace(customer.id, customer);
  admit(customer);
  reoptimize();
  for (VehicleState& v : vehicles_) {
    if (v.at_rest()) dispatch(v);
  }
}

void Simulator::reoptimize() {
  const std::uint64_t k = reoptimizations_++;
  log(std::nullopt, TimelineAction::Reoptimize);
  for (Plan& p : plans_) {
    p.current.clear();
    p.upcoming.clear();
  }
  if (pending_.empty()) return;

  const Instance sub = pending_instance();
  const std::vector<CustomerId> ids(pending_.begin(), pending_.end());
  ConstructionOptions options;
  options.fleet_policy = FleetPolicy::MultiTrip;
  for (const VehicleState& v : vehicles_) {
    if (v.committed == VehicleState::Stop::Customer) {
      options.seeds.push_back(
          {v.id, position_at(v, clock_), v.remaining_load, v.committed_customer});
    } else if (v.at_rest() && !v.at_depot) {
      options.seeds.push_back({v.id, v.position, v.remaining_load, std::nullopt});
    }
  }

  const auto started = std::chrono::steady_clock::now();
  Solution solution = construct(sub, config_.construction, ids, options);
  if (config_.improvement) {
    ImprovementBudget budget = config_.budget;
    budget.seed = k == 0 ? config_.budget.seed : derive_seed(config_.budget.seed, k);
    solution = improve(sub, solution, *config_.improvement, budget, config_.params).solution;
  }
  solver_seconds_ +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  // Anchored trips continue the vehicle's current trip; depot trips go to
  // whichever vehicle is back at the depot first (ties to the lowest id).
  std::vector<double> available(vehicles_.size(), clock_);
  for (const VehicleState& v : vehicles_) {
    if (v.committed == VehicleState::Stop::Depot) available[v.id] = v.arrival_time;
  }
  for (const Trip& trip : solution.trips) {
    if (!trip.anchor) continue;
    Plan& p = plans_[trip.vehicle_id];
    auto first = trip.visits.begin();
    if (trip.anchor->pinned_first) ++first;
    p.current.assign(first, trip.visits.end());
    available[trip.vehicle_id] = clock_ + trip_cost(sub, trip) / config_.speed;
  }
  for (const Trip& trip : solution.trips) {
    if (trip.anchor || trip.visits.empty()) continue;
    const auto v = static_cast<std::size_t>(
        std::min_element(available.begin(), available.end()) - available.begin());
    plans_[v].upcoming.push_back(trip.visits);
    available[v] += trip_cost(sub, trip) / config_.speed;
  }
}

void Simulator::depart(VehicleState& v, Point to, std::optional<CustomerId> customer) {
  Plan& p = plans_[v.id];
  if (v.at_depot) {
    p.excursion = excursion_costs_.size();
    excursion_costs_.push_back(0.0);
  }
  v.at_depot = false;
  v.committed = customer ? VehicleState::Stop::Customer : VehicleState::Stop::Depot;
  v.committed_customer = customer;
  v.departure_time = clock_;
  v.arrival_time = clock_ + euclidean_distance(v.position, to) / config_.speed;
  log(v.id, TimelineAction::Depart, customer);
}

void Simulator::dispatch(VehicleState& v) {
  Plan& p = plans_[v.id];
  if (p.current.empty() && v.at_depot && !p.upcoming.empty()) {
    p.current.assign(p.upcoming.front().begin(), p.upcoming.front().end());
    p.upcoming.pop_front();
    if (v.remaining_load < capacity_) {
      log(v.id, TimelineAction::Reload);
      v.remaining_load = capacity_;
    }
  }
  if (!p.current.empty()) {
    const CustomerId next = p.current.front();
    p.current.pop_front();
    depart(v, known(next).location, next);
  } else if (!v.at_depot) {
    depart(v, depot_, std::nullopt);
  }
}

void Simulator::arrive(VehicleState& v) {
  Plan& p = plans_[v.id];
  const bool to_customer = v.committed == VehicleState::Stop::Customer;
  const Point to = to_customer ? known(*v.committed_customer).location : depot_;
  excursion_costs_[*p.excursion] += euclidean_distance(v.position, to);
  v.position = to;
  clock_ = std::max(clock_, v.arrival_time);
  if (to_customer) {
    const CustomerId id = *v.committed_customer;
    log(v.id, TimelineAction::ArriveCustomer, id);
    log(v.id, TimelineAction::Serve, id);
    v.remaining_load -= known(id).demand;
    v.served.push_back({id, clock_});
    pending_.erase(id);
    served_.push_back(id);
  } else {
    log(v.id, TimelineAction::ArriveDepot);
    v.at_depot = true;
    p.excursion.reset();
  }
  v.committed = VehicleState::Stop::None;
  v.committed_customer.reset();
}

std::optional<double> Simulator::next_event_time() const {
  std::optional<double> t;
  for (const VehicleState& v : vehicles_) {
    if (!v.at_rest() && (!t || v.arrival_time < *t)) t = v.arrival_time;
  }
  if (next_future_ < future_.size()) {
    const double release = known(future_[next_future_]).release_time;
    if (!t || release < *t) t = release;
  }
  return t;
}

bool Simulator::finished() const { return !next_event_time().has_value(); }

bool Simulator::step() {
  const std::optional<double> t = next_event_time();
  if (!t) return false;
  clock_ = std::max(clock_, *t);
  for (VehicleState& v : vehicles_) {
    if (!v.at_rest() && v.arrival_time <= clock_) arrive(v);
  }
  bool admitted = false;
  while (next_future_ < future_.size() &&
         known(future_[next_future_]).release_time <= clock_) {
    admit(known(future_[next_future_]));
    ++next_future_;
    admitted = true;
  }
  if (admitted) reoptimize();
  for (VehicleState& v : vehicles_) {
    if (v.at_rest()) dispatch(v);
  }
  if (observer_) observer_(*this);
  return true;
}

double Simulator::total_cost() const {
  double total = 0.0;
  for (double c : excursion_costs_) total += c;
  return total;
}

void Simulator::validate() const {
  const auto fail = [](const std::string& what) { throw std::logic_error(what); };
  const std::size_t remaining = future_.size() - next_future_;
  if (served_.size() + pending_.size() + remaining != customers_.size()) {
    fail("served, pending and future customers do not add up");
  }
  std::set<CustomerId> seen(pending_.begin(), pending_.end());
  for (CustomerId id : served_) {
    if (!seen.insert(id).second) fail("customer " + std::to_string(id) + " counted twice");
  }
  for (std::size_t i = next_future_; i < future_.size(); ++i) {
    if (!seen.insert(future_[i]).second) {
      fail("customer " + std::to_string(future_[i]) + " counted twice");
    }
  }
  for (const VehicleState& v : vehicles_) {
    if (v.remaining_load < 0 || v.remaining_load > capacity_) {
      fail("vehicle " + std::to_string(v.id) + " load out of range");
    }
    if (v.committed == VehicleState::Stop::Customer && !pending_.contains(*v.committed_customer)) {
      fail("vehicle " + std::to_string(v.id) + " committed to a customer not pending");
    }
    for (const ServedVisit& s : v.served) {
      if (s.time < known(s.customer).release_time) {
        fail("customer " + std::to_string(s.customer) + " served before release");
      }
    }
  }
  if (!pending_.empty()) {
    const Instance sub = pending_instance();
    const std::vector<CustomerId> ids(pending_.begin(), pending_.end());
    const FeasibilityReport report = check_feasible(sub, plan(), ids);
    if (!report.ok()) fail("plan is infeasible: " + report.summary());
  }
  std::vector<double> last(vehicles_.size(), 0.0);
  for (const TimelineRecord& r : timeline_) {
    if (!r.vehicle) continue;
    if (r.time < last[*r.vehicle]) fail("vehicle timeline goes backwards");
    last[*r.vehicle] = r.time;
  }
}

SimulationResult Simulator::run() {
  while (step()) {
  }
  SimulationResult result;
  result.timeline = timeline_;
  result.total_cost = total_cost();
  result.reoptimizations = reoptimizations_;
  result.solver_seconds = solver_seconds_;
  return result;
}

SimulationResult run_simulation(const Instance& instance, const SimulationConfig& config) {
  Simulator simulator(instance, config);
  return simulator.run();
}

}  // namespace dvrp
