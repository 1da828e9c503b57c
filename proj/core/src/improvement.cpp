#include "dvrp/improvement.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dvrp/random.hpp"
#include "neighborhood.hpp"
#include "search_space.hpp"

namespace dvrp {

using detail::ArcDelta;
using detail::LocalMove;
using detail::MoveCheck;
using detail::Neighborhood;
using detail::Route;
using detail::SearchSpace;

std::string_view to_string(ImprovementMethod method) noexcept {
  switch (method) {
    case ImprovementMethod::GuidedLocalSearch: return "guided-local-search";
    case ImprovementMethod::SimulatedAnnealing: return "simulated-annealing";
    case ImprovementMethod::TabuSearch: return "tabu-search";
  }
  return "unknown";
}

std::optional<ImprovementMethod> parse_improvement_method(std::string_view name) {
  for (ImprovementMethod m : kAllImprovementMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::Relocate: return "relocate";
    case MoveKind::Swap: return "swap";
    case MoveKind::TwoOpt: return "two-opt";
    case MoveKind::CrossRouteRelocate: return "cross-route-relocate";
    case MoveKind::CrossRouteSwap: return "cross-route-swap";
    case MoveKind::CrossRouteTwoOpt: return "cross-route-two-opt";
  }
  return "unknown";
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::LocalOptimum: return "local-optimum";
    case StopReason::Iterations: return "iterations";
    case StopReason::Stall: return "stall";
    case StopReason::TimeLimit: return "time-limit";
    case StopReason::NoMoves: return "no-moves";
  }
  return "unknown";
}

std::optional<AppliedMove> apply_move(const Instance& instance,
                                      const Solution& solution, const Move& move) {
  auto loaded = detail::load_solution(instance, solution);
  const auto in_int = [](std::size_t v) {
    return v > static_cast<std::size_t>(std::numeric_limits<int>::max())
               ? -1
               : static_cast<int>(v);
  };
  LocalMove local{move.kind, in_int(move.source_trip), in_int(move.source_pos),
                  in_int(move.target_trip), in_int(move.target_pos)};
  if (move.kind == MoveKind::Relocate || move.kind == MoveKind::Swap ||
      move.kind == MoveKind::TwoOpt) {
    local.r2 = local.r1;
  }
  Neighborhood hood(loaded.space, std::move(loaded.routes), 0);
  ArcDelta arcs;
  switch (hood.evaluate(local, arcs)) {
    case MoveCheck::Invalid:
      throw InvalidMoveError(std::string(to_string(move.kind)) +
                             " move has out-of-range or pinned indices");
    case MoveCheck::Overload:
      return std::nullopt;
    case MoveCheck::Ok:
      break;
  }
  const double delta = arcs.value([&](int a, int b) { return loaded.space.dist(a, b); });
  hood.apply(local);
  return AppliedMove{detail::to_solution(loaded.space, hood.routes()), delta};
}

namespace {

constexpr double kEps = 1e-9;
constexpr int kPollInterval = 64;

using SteadyClock = std::chrono::steady_clock;

class Search {
 public:
  Search(const Instance& instance, const Solution& input,
         const ImprovementBudget& budget, const ImprovementParams& params)
      : instance_(instance),
        input_(input),
        budget_(budget),
        params_(params),
        started_(SteadyClock::now()),
        loaded_(load_checked(instance, input)),
        hood_(loaded_.space, loaded_.routes, max_trips(instance, input)) {
    if (!budget.time_limit_seconds && !budget.max_iterations) {
      throw InputError("improvement budget needs a time or iteration limit");
    }
    if (budget.time_limit_seconds && !(*budget.time_limit_seconds > 0.0)) {
      throw InputError("improvement time limit must be positive");
    }
    if (budget.time_limit_seconds) {
      deadline_ = started_ + std::chrono::duration_cast<SteadyClock::duration>(
                                 std::chrono::duration<double>(*budget.time_limit_seconds));
    }
    for (const Trip& t : input.trips) {
      targeted_.insert(targeted_.end(), t.visits.begin(), t.visits.end());
    }
    cost_ = detail::routes_cost(space(), hood_.routes());
    initial_cost_ = cost_;
    best_ = hood_.routes();
    best_cost_ = cost_;
  }

  const SearchSpace& space() const noexcept { return loaded_.space; }
  Neighborhood& hood() noexcept { return hood_; }
  const ImprovementParams& params() const noexcept { return params_; }
  const ImprovementBudget& budget() const noexcept { return budget_; }
  double cost() const noexcept { return cost_; }
  double best_cost() const noexcept { return best_cost_; }
  double initial_cost() const noexcept { return initial_cost_; }
  std::uint64_t iterations() const noexcept { return stats_.iterations; }

  double dist(int a, int b) const noexcept { return space().dist(a, b); }

  // Checks the iteration, stall and time limits at an iteration boundary.
  bool exhausted() {
    if (budget_.max_iterations && stats_.iterations >= *budget_.max_iterations) {
      return stop(StopReason::Iterations);
    }
    if (budget_.stall_iterations > 0 && since_best_ >= budget_.stall_iterations) {
      return stop(StopReason::Stall);
    }
    if (deadline_ && SteadyClock::now() >= *deadline_) {
      return stop(StopReason::TimeLimit);
    }
    return false;
  }

  // Amortized deadline check for use inside neighborhood scans.
  bool poll_deadline() {
    if (!deadline_ || ++polls_ % kPollInterval != 0) return false;
    if (SteadyClock::now() < *deadline_) return false;
    return stop(StopReason::TimeLimit);
  }

  bool stop(StopReason reason) {
    stats_.stop = reason;
    return true;
  }

  void count_iteration() {
    ++stats_.iterations;
    ++since_best_;
  }

  void reset_stall() { since_best_ = 0; }

  void accept(const LocalMove& move, double true_delta) {
    hood_.apply(move);
    cost_ += true_delta;
    ++stats_.accepted_moves;
    if (cost_ < best_cost_ - kEps) {
      best_ = hood_.routes();
      best_cost_ = cost_;
      ++stats_.improvements;
      since_best_ = 0;
    }
    if (params_.validate_moves) validate();
  }

  ImprovementResult finish() {
    ImprovementResult result;
    Solution best = detail::to_solution(space(), best_);
    const double input_cost = solution_cost(instance_, input_);
    if (best.cost < input_cost) {
      result.solution = std::move(best);
    } else {
      result.solution = input_;
      result.solution.cost = input_cost;
    }
    stats_.elapsed_seconds =
        std::chrono::duration<double>(SteadyClock::now() - started_).count();
    result.stats = stats_;
    return result;
  }

 private:
  static detail::LoadedSolution load_checked(const Instance& instance,
                                             const Solution& input) {
    std::vector<CustomerId> visited;
    for (const Trip& t : input.trips) {
      visited.insert(visited.end(), t.visits.begin(), t.visits.end());
    }
    const FeasibilityReport report = check_feasible(instance, input, visited);
    if (!report.ok()) {
      throw InfeasibleSolutionError("improvement input is infeasible: " +
                                    report.summary());
    }
    return detail::load_solution(instance, input);
  }

  static int max_trips(const Instance& instance, const Solution& input) {
    const auto active = std::count_if(
        input.trips.begin(), input.trips.end(),
        [](const Trip& t) { return !t.visits.empty() || t.anchor.has_value(); });
    return std::max(instance.fleet_size(), static_cast<int>(active));
  }

  void validate() const {
    const Solution current = detail::to_solution(space(), hood_.routes());
    const FeasibilityReport report = check_feasible(instance_, current, targeted_);
    if (!report.ok()) {
      throw std::logic_error("move produced an infeasible solution: " + report.summary());
    }
    if (std::abs(current.cost - cost_) > 1e-6 * std::max(1.0, current.cost)) {
      throw std::logic_error("tracked cost drifted from recomputed cost");
    }
  }

  const Instance& instance_;
  const Solution& input_;
  ImprovementBudget budget_;
  ImprovementParams params_;
  SteadyClock::time_point started_;
  std::optional<SteadyClock::time_point> deadline_;
  detail::LoadedSolution loaded_;
  Neighborhood hood_;
  std::vector<CustomerId> targeted_;
  double cost_ = 0.0;
  double initial_cost_ = 0.0;
  std::vector<Route> best_;
  double best_cost_ = 0.0;
  std::uint64_t since_best_ = 0;
  std::uint64_t polls_ = 0;
  ImprovementStats stats_;
};

enum class StepResult { Moved, LocalOptimum, Aborted };

// One best-improvement step of the variable neighborhood descent under
// `weight`: the best improving move of the first kind that has one.
template <typename Weight>
StepResult descent_step(Search& search, Weight&& weight) {
  for (MoveKind kind : kAllMoveKinds) {
    double best_value = -kEps;
    LocalMove best{};
    ArcDelta best_arcs;
    bool found = false;
    const bool completed = search.hood().scan(kind, [&](const LocalMove& m, const ArcDelta& arcs) {
      if (search.poll_deadline()) return false;
      const double v = arcs.value(weight);
      if (v < best_value) {
        best_value = v;
        best = m;
        best_arcs = arcs;
        found = true;
      }
      return true;
    });
    if (!completed) return StepResult::Aborted;
    if (found) {
      search.count_iteration();
      search.accept(best, best_arcs.value([&](int a, int b) { return search.dist(a, b); }));
      return StepResult::Moved;
    }
  }
  return StepResult::LocalOptimum;
}

void run_descent(Search& search) {
  const auto distance = [&](int a, int b) { return search.dist(a, b); };
  while (!search.exhausted()) {
    const StepResult step = descent_step(search, distance);
    if (step == StepResult::LocalOptimum) {
      search.stop(StopReason::LocalOptimum);
      return;
    }
    if (step == StepResult::Aborted) return;
  }
}

void run_tabu(Search& search) {
  const SearchSpace& space = search.space();
  Neighborhood& hood = search.hood();
  const int tenure = search.params().tabu_tenure > 0
                         ? search.params().tabu_tenure
                         : std::max(10, (space.customer_count() + 3) / 4);
  const auto node_count = static_cast<std::size_t>(space.node_count());
  // tabu_until[route][node]: iteration before which `node` may not enter `route`.
  std::vector<std::vector<std::uint64_t>> tabu_until;

  const auto is_tabu = [&](const LocalMove& m, std::uint64_t iteration) {
    std::array<detail::MovedCustomer, 2> moved;
    const int count = hood.moved_customers(m, moved);
    for (int i = 0; i < count; ++i) {
      const auto to = static_cast<std::size_t>(moved[i].to);
      if (to < tabu_until.size() && tabu_until[to][moved[i].node] > iteration) return true;
    }
    return false;
  };

  while (!search.exhausted()) {
    const std::uint64_t iteration = search.iterations();
    double best_value = std::numeric_limits<double>::infinity();
    LocalMove best{};
    ArcDelta best_arcs;
    bool found = false;
    bool aborted = false;
    for (MoveKind kind : kAllMoveKinds) {
      const bool completed = hood.scan(kind, [&](const LocalMove& m, const ArcDelta& arcs) {
        if (search.poll_deadline()) return false;
        const double v = arcs.value([&](int a, int b) { return space.dist(a, b); });
        if (v >= best_value) return true;
        if (is_tabu(m, iteration) && !(search.cost() + v < search.best_cost() - kEps)) {
          return true;
        }
        best_value = v;
        best = m;
        best_arcs = arcs;
        found = true;
        return true;
      });
      if (!completed) {
        aborted = true;
        break;
      }
    }
    if (aborted) return;
    if (!found) {
      search.stop(StopReason::NoMoves);
      return;
    }
    std::array<detail::MovedCustomer, 2> moved;
    const int count = hood.moved_customers(best, moved);
    search.count_iteration();
    search.accept(best, best_value);
    if (tabu_until.size() < static_cast<std::size_t>(hood.route_count())) {
      tabu_until.resize(static_cast<std::size_t>(hood.route_count()),
                        std::vector<std::uint64_t>(node_count, 0));
    }
    for (int i = 0; i < count; ++i) {
      tabu_until[static_cast<std::size_t>(moved[i].from)][moved[i].node] =
          iteration + 1 + static_cast<std::uint64_t>(tenure);
    }
  }
}

// Uniform sampling over valid index tuples of one move kind, by rejection.
class MoveSampler {
 public:
  MoveSampler(const Neighborhood& hood, Rng& rng) : hood_(hood), rng_(rng) {}

  std::optional<LocalMove> sample(MoveKind kind) {
    constexpr int kTries = 64;
    const auto& routes = hood_.routes();
    int total = 0;
    int longest = 0;
    for (const Route& r : routes) {
      total += r.size();
      longest = std::max(longest, r.size());
    }
    if (total == 0) return std::nullopt;

    if (kind == MoveKind::CrossRouteTwoOpt) return sample_tail_exchange();
    for (int attempt = 0; attempt < kTries; ++attempt) {
      const auto [r1, p1] = position(static_cast<int>(rng_.below(static_cast<std::uint64_t>(total))));
      if (!routes[r1].movable(p1)) continue;
      switch (kind) {
        case MoveKind::Relocate: {
          const int q = static_cast<int>(rng_.below(static_cast<std::uint64_t>(longest)));
          if (q >= routes[r1].size() || q == p1 || !routes[r1].insertable(q)) continue;
          return LocalMove{kind, r1, p1, r1, q};
        }
        case MoveKind::Swap:
        case MoveKind::TwoOpt: {
          auto [r2, p2] = position(static_cast<int>(rng_.below(static_cast<std::uint64_t>(total))));
          if (r2 != r1 || p2 == p1) continue;
          const int lo = std::min(p1, p2);
          const int hi = std::max(p1, p2);
          if (!routes[r1].movable(lo)) continue;
          return LocalMove{kind, r1, lo, r1, hi};
        }
        case MoveKind::CrossRouteRelocate: {
          int slots = 0;
          for (int r = 0; r < hood_.route_count(); ++r) {
            if (hood_.relocation_target(r)) slots += routes[r].size() + 1;
          }
          int pick = static_cast<int>(rng_.below(static_cast<std::uint64_t>(slots)));
          int r2 = 0;
          for (; r2 < hood_.route_count(); ++r2) {
            if (!hood_.relocation_target(r2)) continue;
            if (pick <= routes[r2].size()) break;
            pick -= routes[r2].size() + 1;
          }
          if (r2 == r1 || !routes[r2].insertable(pick)) continue;
          return LocalMove{kind, r1, p1, r2, pick};
        }
        case MoveKind::CrossRouteTwoOpt:
          break;
        case MoveKind::CrossRouteSwap: {
          auto [r2, p2] = position(static_cast<int>(rng_.below(static_cast<std::uint64_t>(total))));
          if (r2 == r1 || !routes[r2].movable(p2)) continue;
          if (r2 < r1) return LocalMove{kind, r2, p2, r1, p1};
          return LocalMove{kind, r1, p1, r2, p2};
        }
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<LocalMove> sample_tail_exchange() {
    constexpr int kTries = 64;
    const auto& routes = hood_.routes();
    int cuts = 0;
    for (int r = 0; r < hood_.route_count(); ++r) {
      if (hood_.relocation_target(r)) cuts += routes[r].size() + 1;
    }
    const auto cut = [&] {
      int pick = static_cast<int>(rng_.below(static_cast<std::uint64_t>(cuts)));
      int r = 0;
      for (; r < hood_.route_count(); ++r) {
        if (!hood_.relocation_target(r)) continue;
        if (pick <= routes[r].size()) break;
        pick -= routes[r].size() + 1;
      }
      return std::pair{r, pick};
    };
    for (int attempt = 0; attempt < kTries; ++attempt) {
      auto [r1, p1] = cut();
      auto [r2, p2] = cut();
      if (r1 == r2 || !routes[r1].insertable(p1) || !routes[r2].insertable(p2)) continue;
      if (p1 == routes[r1].size() && p2 == routes[r2].size()) continue;
      if (r2 < r1) return LocalMove{MoveKind::CrossRouteTwoOpt, r2, p2, r1, p1};
      return LocalMove{MoveKind::CrossRouteTwoOpt, r1, p1, r2, p2};
    }
    return std::nullopt;
  }

  std::pair<int, int> position(int k) const {
    const auto& routes = hood_.routes();
    for (int r = 0; r < static_cast<int>(routes.size()); ++r) {
      if (k < routes[r].size()) return {r, k};
      k -= routes[r].size();
    }
    return {0, 0};
  }

  const Neighborhood& hood_;
  Rng& rng_;
};

void run_annealing(Search& search) {
  const ImprovementParams& params = search.params();
  Rng rng(search.budget().seed);
  MoveSampler sampler(search.hood(), rng);
  double temperature = params.sa_initial_temperature_factor * search.initial_cost();
  const std::uint64_t interval = std::max<std::uint64_t>(1, params.sa_cooling_interval);
  ArcDelta arcs;

  while (!search.exhausted()) {
    search.count_iteration();
    if (search.iterations() % interval == 0) temperature *= params.sa_cooling_factor;
    const auto kind = kAllMoveKinds[rng.below(std::size(kAllMoveKinds))];
    const auto move = sampler.sample(kind);
    if (!move) continue;
    if (search.hood().evaluate(*move, arcs) != MoveCheck::Ok) continue;
    const double delta = arcs.value([&](int a, int b) { return search.dist(a, b); });
    const bool accept = delta <= 0.0 ||
                        (temperature > 0.0 && rng.uniform01() < std::exp(-delta / temperature));
    if (!accept) continue;
    search.accept(*move, delta);
    // Annealing wanders away from the incumbent on purpose, so progress
    // means any accepted improving move.
    if (delta < -kEps) search.reset_stall();
  }
}

void run_guided(Search& search) {
  const SearchSpace& space = search.space();
  Neighborhood& hood = search.hood();
  int arc_count = 0;
  for (const Route& r : hood.routes()) {
    if (!r.nodes.empty()) arc_count += r.size() + 1;
  }
  if (arc_count == 0) {
    search.stop(StopReason::NoMoves);
    return;
  }
  const double lambda = search.params().gls_lambda_factor * search.initial_cost() / arc_count;
  const auto n = static_cast<std::size_t>(space.node_count());
  std::vector<int> penalty(n * n, 0);
  const auto augmented = [&](int a, int b) {
    return space.dist(a, b) * (1.0 + lambda * penalty[static_cast<std::size_t>(a) * n + b]);
  };

  // Features are the arcs of the current solution that a move could change.
  const auto penalize = [&] {
    std::vector<std::pair<int, int>> arcs;
    for (const Route& r : hood.routes()) {
      if (r.nodes.empty()) {
        if (r.anchored()) arcs.emplace_back(r.start, 0);
        continue;
      }
      if (!r.pinned) arcs.emplace_back(r.start, r.nodes.front());
      for (int i = 0; i + 1 < r.size(); ++i) arcs.emplace_back(r.nodes[i], r.nodes[i + 1]);
      arcs.emplace_back(r.nodes.back(), 0);
    }
    double top = -1.0;
    for (auto [a, b] : arcs) {
      top = std::max(top, space.dist(a, b) / (1.0 + penalty[static_cast<std::size_t>(a) * n + b]));
    }
    for (auto [a, b] : arcs) {
      const auto ab = static_cast<std::size_t>(a) * n + b;
      if (space.dist(a, b) / (1.0 + penalty[ab]) == top) {
        ++penalty[ab];
        if (a != b) ++penalty[static_cast<std::size_t>(b) * n + a];
      }
    }
  };

  while (!search.exhausted()) {
    const StepResult step = descent_step(search, augmented);
    if (step == StepResult::Aborted) return;
    if (step == StepResult::LocalOptimum) {
      search.count_iteration();
      penalize();
    }
  }
}

}  // namespace

ImprovementResult descend(const Instance& instance, const Solution& solution,
                          const ImprovementBudget& budget) {
  Search search(instance, solution, budget, {});
  run_descent(search);
  return search.finish();
}

ImprovementResult improve(const Instance& instance, const Solution& solution,
                          ImprovementMethod method, const ImprovementBudget& budget,
                          const ImprovementParams& params) {
  Search search(instance, solution, budget, params);
  switch (method) {
    case ImprovementMethod::GuidedLocalSearch: run_guided(search); break;
    case ImprovementMethod::SimulatedAnnealing: run_annealing(search); break;
    case ImprovementMethod::TabuSearch: run_tabu(search); break;
  }
  return search.finish();
}

}  // namespace dvrp
