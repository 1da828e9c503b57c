#include "dvrp/io.hpp"

#include <fstream>
#include <ostream>

namespace dvrp {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) throw InputError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

template <typename Int>
Int integer(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) {
    throw InputError(where + ": \"" + key + "\" must be an integer");
  }
  return v.get<Int>();
}

Point point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InputError(where + ": expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("instance: expected an object");
  const Point depot = point(field(doc, "depot", "instance"), "instance depot");
  const int fleet = integer<int>(doc, "fleet_size", "instance");
  const int capacity = integer<int>(doc, "capacity", "instance");
  const json& list = field(doc, "customers", "instance");
  if (!list.is_array()) throw InputError("instance: \"customers\" must be an array");
  std::vector<Customer> customers;
  customers.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& c = list[i];
    const std::string where = "customer #" + std::to_string(i);
    if (!c.is_object()) throw InputError(where + ": expected an object");
    Customer customer;
    customer.id = integer<CustomerId>(c, "id", where);
    customer.location = {number(c, "x", where), number(c, "y", where)};
    customer.demand = integer<int>(c, "demand", where);
    if (c.contains("release_time")) customer.release_time = number(c, "release_time", where);
    customers.push_back(customer);
  }
  return Instance(depot, fleet, capacity, std::move(customers));
}

json to_json(const Instance& instance) {
  json customers = json::array();
  for (const Customer& c : instance.customers()) {
    customers.push_back({{"id", c.id},
                         {"x", c.location.x},
                         {"y", c.location.y},
                         {"demand", c.demand},
                         {"release_time", c.release_time}});
  }
  return {{"depot", {instance.depot().x, instance.depot().y}},
          {"fleet_size", instance.fleet_size()},
          {"capacity", instance.capacity()},
          {"customers", std::move(customers)}};
}

Solution solution_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("solution: expected an object");
  Solution solution;
  if (doc.contains("cost")) solution.cost = number(doc, "cost", "solution");
  const json& trips = field(doc, "trips", "solution");
  if (!trips.is_array()) throw InputError("solution: \"trips\" must be an array");
  for (std::size_t i = 0; i < trips.size(); ++i) {
    const json& t = trips[i];
    const std::string where = "trip #" + std::to_string(i);
    if (!t.is_object()) throw InputError(where + ": expected an object");
    Trip trip;
    trip.vehicle_id = integer<VehicleId>(t, "vehicle_id", where);
    const json& visits = field(t, "visits", where);
    if (!visits.is_array()) throw InputError(where + ": \"visits\" must be an array");
    for (const json& v : visits) {
      if (!v.is_number_integer()) throw InputError(where + ": visit ids must be integers");
      trip.visits.push_back(v.get<CustomerId>());
    }
    if (t.contains("anchor")) {
      const json& a = t["anchor"];
      trip.anchor = TripAnchor{{number(a, "x", where), number(a, "y", where)},
                               integer<int>(a, "capacity", where),
                               a.value("pinned_first", false)};
    }
    solution.trips.push_back(std::move(trip));
  }
  return solution;
}

json to_json(const Solution& solution) {
  json trips = json::array();
  for (const Trip& t : solution.trips) {
    json trip = {{"vehicle_id", t.vehicle_id}, {"visits", t.visits}};
    if (t.anchor) {
      trip["anchor"] = {{"x", t.anchor->origin.x},
                        {"y", t.anchor->origin.y},
                        {"capacity", t.anchor->capacity},
                        {"pinned_first", t.anchor->pinned_first}};
    }
    trips.push_back(std::move(trip));
  }
  return {{"cost", solution.cost}, {"trips", std::move(trips)}};
}

json to_json(const TimelineRecord& record) {
  json out = {{"t", record.time}};
  out["vehicle"] = record.vehicle ? json(*record.vehicle) : json(nullptr);
  out["action"] = std::string(to_string(record.action));
  if (record.customer) out["customer"] = *record.customer;
  return out;
}

void write_timeline_jsonl(std::ostream& out, std::span<const TimelineRecord> timeline) {
  for (const TimelineRecord& r : timeline) out << to_json(r).dump() << '\n';
}

void read_improvement_params(const json& doc, ImprovementParams& params) {
  if (!doc.is_object()) throw InputError("improvement parameters: expected an object");
  for (const auto& [key, value] : doc.items()) {
    const std::string where = "improvement parameter \"" + key + "\"";
    const auto real = [&] {
      if (!value.is_number()) throw InputError(where + " must be a number");
      return value.get<double>();
    };
    const auto whole = [&] {
      if (!value.is_number_unsigned()) throw InputError(where + " must be a nonnegative integer");
      return value.get<std::uint64_t>();
    };
    if (key == "sa_initial_temperature_factor") {
      params.sa_initial_temperature_factor = real();
    } else if (key == "sa_cooling_factor") {
      params.sa_cooling_factor = real();
    } else if (key == "sa_cooling_interval") {
      params.sa_cooling_interval = whole();
    } else if (key == "gls_lambda_factor") {
      params.gls_lambda_factor = real();
    } else if (key == "tabu_tenure") {
      params.tabu_tenure = static_cast<int>(whole());
    } else if (key == "validate_moves") {
      if (!value.is_boolean()) throw InputError(where + " must be a boolean");
      params.validate_moves = value.get<bool>();
    } else {
      throw InputError("unknown improvement parameter \"" + key + "\"");
    }
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Instance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace dvrp
