#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "dvrp/dynamic.hpp"
#include "dvrp/improvement.hpp"
#include "dvrp/model.hpp"

namespace dvrp {

// Instance documents:
//   {"depot": [x, y], "fleet_size": m, "capacity": q,
//    "customers": [{"id", "x", "y", "demand", "release_time"}]}
// release_time may be omitted (static customer). Malformed documents throw
// InputError; model violations throw what the Instance constructor throws.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Instance& instance);

// Solution documents: {"cost", "trips": [{"vehicle_id", "visits": [ids]}]}.
// Anchored trips also carry "anchor": {"x", "y", "capacity", "pinned_first"}.
Solution solution_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Solution& solution);

nlohmann::json to_json(const TimelineRecord& record);
// One JSON object per line, LF-terminated.
void write_timeline_jsonl(std::ostream& out, std::span<const TimelineRecord> timeline);

// Reads the keys present in `doc` over `params`; unknown keys throw InputError.
void read_improvement_params(const nlohmann::json& doc, ImprovementParams& params);

nlohmann::json read_json_file(const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dvrp
