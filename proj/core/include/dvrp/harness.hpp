#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dvrp/construction.hpp"
#include "dvrp/dynamic.hpp"
#include "dvrp/improvement.hpp"
#include "dvrp/model.hpp"
#include "dvrp/stats.hpp"

namespace dvrp {

inline constexpr std::uint64_t kDefaultMasterSeed = 20240601;

struct DatasetSpec {
  std::string name;
  int static_count = 20;
  int dynamic_count = 20;
  std::uint64_t seed = kDefaultMasterSeed;
  double coord_min = 0.0;
  double coord_max = 100.0;
  int demand_min = 1;
  int demand_max = 30;
  int capacity = 100;
  int fleet_size = 10;
  double horizon = 1000.0;
};

/// Static customers get ids 1..s and release time 0; dynamic customers get
/// ids s+1..s+d and release times uniform on (0, horizon]. Coordinates are
/// uniform on the square, demands uniform integers. Deterministic in the seed.
/// Throws InputError for an invalid spec.
Instance generate_instance(const DatasetSpec& spec);

/// The nine static x dynamic datasets over {20, 50, 100}, seeds derived
/// from `master_seed`.
std::vector<DatasetSpec> default_datasets(std::uint64_t master_seed = kDefaultMasterSeed);

struct Combo {
  ConstructionMethod construction = ConstructionMethod::Savings;
  ImprovementMethod improvement = ImprovementMethod::TabuSearch;

  // "<construction>+<improvement>"
  std::string label() const;
};

// All nine combos in label order.
std::vector<Combo> all_combos();

struct PortfolioConfig {
  int reps = 10;
  std::vector<Combo> combos = all_combos();
  ImprovementBudget budget;
  ImprovementParams params;
  double speed = 1.0;
  std::uint64_t seed = kDefaultMasterSeed;
  // Worker threads; 0 uses the hardware concurrency.
  unsigned jobs = 0;
};

struct RepResult {
  std::uint64_t seed = 0;
  std::optional<double> cost;  // empty when the run failed
  std::string error;
  std::size_t reoptimizations = 0;
};

struct ComboResult {
  Combo combo;
  std::vector<RepResult> reps;
  std::optional<SummaryStats> stats;  // over successful reps
};

struct ConstructionOnly {
  ConstructionMethod method = ConstructionMethod::Savings;
  std::optional<double> cost;
  std::string error;
};

struct PortfolioRow {
  std::string dataset;
  int static_count = 0;
  int dynamic_count = 0;
  std::string best_combo;
  SummaryStats stats;  // of the best combo
  double baseline_cost = 0.0;
  double improvement_pct = 0.0;
  std::vector<ComboResult> combos;  // in label order
  std::vector<ConstructionOnly> construction_only;
  std::vector<std::string> excluded;  // combos that failed on every rep
};

/// Runs every combo `reps` times through the simulator, rep r with master
/// seed derive_seed(config.seed, r), and the three constructions alone.
/// The best combo has the lowest average cost, then lowest minimum, then
/// label. The baseline is the best combo's construction without the second
/// stage. Throws InfeasibleError when no combo succeeds.
PortfolioRow run_portfolio(const Instance& instance, const DatasetSpec& dataset,
                           const PortfolioConfig& config);

// Columns: dataset,static,dynamic,avg_cost,min_cost,best_combo,baseline_cost,
// improvement_pct,std_dev,ci95,reps. Two decimals; std_dev and ci95 empty
// for a single rep.
void write_report_csv(std::ostream& out, std::span<const PortfolioRow> rows);
void write_report_json(std::ostream& out, std::span<const PortfolioRow> rows,
                       const PortfolioConfig& config);

}  // namespace dvrp
