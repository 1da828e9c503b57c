#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "dvrp/model.hpp"

namespace dvrp {

enum class ImprovementMethod { GuidedLocalSearch, SimulatedAnnealing, TabuSearch };

inline constexpr ImprovementMethod kAllImprovementMethods[] = {
    ImprovementMethod::GuidedLocalSearch, ImprovementMethod::SimulatedAnnealing,
    ImprovementMethod::TabuSearch};

// Canonical spellings: guided-local-search, simulated-annealing, tabu-search.
std::string_view to_string(ImprovementMethod method) noexcept;
std::optional<ImprovementMethod> parse_improvement_method(std::string_view name);

// Scan order of the neighborhood; also the tie-break order between kinds.
enum class MoveKind {
  Relocate,
  Swap,
  TwoOpt,
  CrossRouteRelocate,
  CrossRouteSwap,
  CrossRouteTwoOpt
};

inline constexpr MoveKind kAllMoveKinds[] = {
    MoveKind::Relocate,           MoveKind::Swap,           MoveKind::TwoOpt,
    MoveKind::CrossRouteRelocate, MoveKind::CrossRouteSwap, MoveKind::CrossRouteTwoOpt};

std::string_view to_string(MoveKind kind) noexcept;

/// One neighborhood move over trip indices and visit positions.
///
/// - Relocate: the visit at `source_pos` ends up at index `target_pos` of the
///   same trip.
/// - Swap: exchanges positions `source_pos` < `target_pos` of one trip.
/// - TwoOpt: reverses positions `source_pos`..`target_pos` of one trip.
/// - CrossRouteRelocate: moves the visit to index `target_pos` of
///   `target_trip` (0..size, inclusive).
/// - CrossRouteSwap: exchanges visits between two trips.
/// - CrossRouteTwoOpt: cuts both trips, `source_trip` before `source_pos` and
///   `target_trip` before `target_pos` (0..size, inclusive), and exchanges
///   the tails. Either trip may end up empty.
///
/// Intra-trip kinds ignore `target_trip`. The pinned first visit of an
/// anchored trip can neither move nor be displaced from index 0.
struct Move {
  MoveKind kind = MoveKind::Relocate;
  std::size_t source_trip = 0;
  std::size_t source_pos = 0;
  std::size_t target_trip = 0;
  std::size_t target_pos = 0;
};

struct InvalidMoveError : InputError {
  using InputError::InputError;
};

struct AppliedMove {
  Solution solution;
  double delta = 0.0;
};

/// Applies `move` to a copy of `solution`. Returns nullopt when the move
/// would overload a trip; throws InvalidMoveError when indices are out of
/// range or the move touches a pinned visit. Empty depot trips are dropped
/// from the result.
std::optional<AppliedMove> apply_move(const Instance& instance,
                                      const Solution& solution, const Move& move);

/// Run-time budget of one improvement call. Empty optionals mean unlimited;
/// at least one of the time and iteration limits must be set.
///
/// An iteration is one applied move for descent and guided local search
/// (a penalty update also counts), one proposal for simulated annealing and
/// one neighborhood scan for tabu search. The search also stops after
/// `stall_iterations` iterations without progress (0 disables): a new best
/// solution, or for simulated annealing any accepted improving move.
/// Results are reproducible for a fixed seed as long as the time limit does
/// not bind.
struct ImprovementBudget {
  std::optional<double> time_limit_seconds = 1.0;
  std::optional<std::uint64_t> max_iterations = 100000;
  std::uint64_t stall_iterations = 500;
  std::uint64_t seed = 0;
};

struct ImprovementParams {
  double sa_initial_temperature_factor = 0.05;
  double sa_cooling_factor = 0.98;
  std::uint64_t sa_cooling_interval = 100;
  double gls_lambda_factor = 0.1;
  // 0 selects max(10, ceil(n / 4)) for n customers.
  int tabu_tenure = 0;
  // Re-check feasibility and tracked cost after every accepted move.
  bool validate_moves = false;
};

enum class StopReason { LocalOptimum, Iterations, Stall, TimeLimit, NoMoves };

std::string_view to_string(StopReason reason) noexcept;

struct ImprovementStats {
  std::uint64_t iterations = 0;
  std::uint64_t accepted_moves = 0;
  std::uint64_t improvements = 0;
  double elapsed_seconds = 0.0;
  StopReason stop = StopReason::LocalOptimum;
};

struct ImprovementResult {
  Solution solution;
  ImprovementStats stats;
};

/// Best-improvement variable neighborhood descent to a local optimum over
/// all move kinds. Throws InfeasibleSolutionError on infeasible input.
ImprovementResult descend(const Instance& instance, const Solution& solution,
                          const ImprovementBudget& budget);

/// Runs one metaheuristic from `solution` and returns the best solution it
/// visited; never worse than the input. Throws InfeasibleSolutionError on
/// infeasible input and InputError on an unusable budget.
ImprovementResult improve(const Instance& instance, const Solution& solution,
                          ImprovementMethod method, const ImprovementBudget& budget,
                          const ImprovementParams& params = {});

}  // namespace dvrp
