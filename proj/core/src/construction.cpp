#include "dvrp/construction.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "search_space.hpp"

namespace dvrp {

using detail::AnchorSpec;
using detail::Route;
using detail::SearchSpace;

std::string_view to_string(ConstructionMethod method) noexcept {
  switch (method) {
    case ConstructionMethod::Savings: return "savings";
    case ConstructionMethod::PathCheapestArc: return "path-cheapest-arc";
    case ConstructionMethod::GlobalCheapestArc: return "global-cheapest-arc";
  }
  return "unknown";
}

std::optional<ConstructionMethod> parse_construction_method(std::string_view name) {
  for (ConstructionMethod m : kAllConstructionMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

struct Arc {
  int a = 0;  // a < b
  int b = 0;
  double key = 0.0;
};

// Path fragments for the merge-based constructors. Anchored fragments keep
// their origin implicit at the head; only their tail can be extended.
class FragmentSet {
 public:
  explicit FragmentSet(const SearchSpace& space)
      : space_(space), owner_(static_cast<std::size_t>(space.node_count()), -1) {
    const auto anchors = space.anchors();
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      Fragment f;
      f.anchor = static_cast<int>(a);
      if (anchors[a].pinned >= 0) {
        f.nodes.push_back(anchors[a].pinned);
        f.load = space.demand(anchors[a].pinned);
        owner_[anchors[a].pinned] = static_cast<int>(fragments_.size());
      }
      owner_[anchors[a].origin] = static_cast<int>(fragments_.size());
      fragments_.push_back(std::move(f));
    }
    for (int node = 1; node <= space.customer_count(); ++node) {
      if (owner_[node] >= 0) continue;
      owner_[node] = static_cast<int>(fragments_.size());
      fragments_.push_back(Fragment{{node}, space.demand(node), -1});
    }
  }

  bool try_merge(int u, int v) {
    int fu = owner_[u];
    int fv = owner_[v];
    if (fu < 0 || fv < 0 || fu == fv) return false;
    if (fragments_[fu].anchor >= 0 && fragments_[fv].anchor >= 0) return false;
    if (fragments_[fv].anchor >= 0) {
      std::swap(u, v);
      std::swap(fu, fv);
    }
    Fragment& head = fragments_[fu];
    Fragment& tail = fragments_[fv];

    int capacity = space_.capacity();
    if (head.anchor >= 0) {
      if (u != anchored_end(head)) return false;
      capacity = space_.anchors()[head.anchor].capacity;
    } else if (u != head.nodes.front() && u != head.nodes.back()) {
      return false;
    }
    if (v != tail.nodes.front() && v != tail.nodes.back()) return false;
    if (head.load + tail.load > capacity) return false;

    if (head.anchor < 0 && head.nodes.back() != u) {
      std::reverse(head.nodes.begin(), head.nodes.end());
    }
    if (tail.nodes.front() != v) {
      std::reverse(tail.nodes.begin(), tail.nodes.end());
    }
    for (int node : tail.nodes) owner_[node] = fu;
    head.nodes.insert(head.nodes.end(), tail.nodes.begin(), tail.nodes.end());
    head.load += tail.load;
    tail.nodes.clear();
    tail.load = 0;
    tail.alive = false;
    return true;
  }

  std::vector<Route> routes() const {
    std::vector<Route> anchored;
    std::vector<Route> free;
    for (const Fragment& f : fragments_) {
      if (!f.alive) continue;
      Route r;
      r.nodes = f.nodes;
      r.load = f.load;
      if (f.anchor >= 0) {
        const auto& a = space_.anchors()[f.anchor];
        r.anchor = f.anchor;
        r.start = a.origin;
        r.pinned = a.pinned >= 0;
        r.capacity = a.capacity;
        r.vehicle = a.vehicle;
        anchored.push_back(std::move(r));
      } else {
        if (r.nodes.front() > r.nodes.back()) {
          std::reverse(r.nodes.begin(), r.nodes.end());
        }
        r.capacity = space_.capacity();
        free.push_back(std::move(r));
      }
    }
    std::sort(anchored.begin(), anchored.end(),
              [](const Route& x, const Route& y) { return x.anchor < y.anchor; });
    std::sort(free.begin(), free.end(), [](const Route& x, const Route& y) {
      return x.nodes.front() < y.nodes.front();
    });
    anchored.insert(anchored.end(), std::make_move_iterator(free.begin()),
                    std::make_move_iterator(free.end()));
    return anchored;
  }

 private:
  struct Fragment {
    std::vector<int> nodes;
    int load = 0;
    int anchor = -1;
    bool alive = true;
  };

  int anchored_end(const Fragment& f) const {
    return f.nodes.empty() ? space_.anchors()[f.anchor].origin : f.nodes.back();
  }

  const SearchSpace& space_;
  std::vector<int> owner_;
  std::vector<Fragment> fragments_;
};

// Arc candidates: customer pairs plus (origin, customer) for anchors whose
// trip starts empty.
template <typename KeyFn>
std::vector<Arc> candidate_arcs(const SearchSpace& space, KeyFn key) {
  std::vector<Arc> arcs;
  const int n = space.customer_count();
  arcs.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) arcs.push_back({i, j, key(i, j)});
  }
  for (const auto& a : space.anchors()) {
    if (a.pinned >= 0) continue;
    for (int j = 1; j <= n; ++j) arcs.push_back({j, a.origin, key(a.origin, j)});
  }
  return arcs;
}

double saving(const SearchSpace& space, int i, int j) {
  return space.dist(0, i) + space.dist(0, j) - space.dist(i, j);
}

std::vector<Arc> sorted_savings(const SearchSpace& space) {
  auto arcs = candidate_arcs(space, [&](int i, int j) { return saving(space, i, j); });
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    if (x.key != y.key) return x.key > y.key;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return arcs;
}

std::vector<Route> build_savings(const SearchSpace& space) {
  FragmentSet fragments(space);
  for (const Arc& arc : sorted_savings(space)) fragments.try_merge(arc.a, arc.b);
  return fragments.routes();
}

// Admissibility of an arc only ever decreases as fragments grow, so one pass
// over the arcs in cost order equals repeatedly taking the cheapest
// admissible arc.
std::vector<Route> build_global_cheapest_arc(const SearchSpace& space) {
  auto arcs = candidate_arcs(space, [&](int i, int j) { return space.dist(i, j); });
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    if (x.key != y.key) return x.key < y.key;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  FragmentSet fragments(space);
  for (const Arc& arc : arcs) fragments.try_merge(arc.a, arc.b);
  return fragments.routes();
}

std::vector<Route> build_path_cheapest_arc(const SearchSpace& space) {
  const int n = space.customer_count();
  std::vector<char> routed(static_cast<std::size_t>(n) + 1, 0);
  int remaining = n;
  for (const auto& a : space.anchors()) {
    if (a.pinned >= 0) {
      routed[a.pinned] = 1;
      --remaining;
    }
  }

  auto extend = [&](Route& route, int end) {
    int room = route.capacity - route.load;
    while (remaining > 0) {
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (routed[j] || space.demand(j) > room) continue;
        const double d = space.dist(end, j);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (best < 0) break;
      routed[best] = 1;
      --remaining;
      route.nodes.push_back(best);
      route.load += space.demand(best);
      room -= space.demand(best);
      end = best;
    }
  };

  std::vector<Route> routes;
  const auto anchors = space.anchors();
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    Route r;
    r.anchor = static_cast<int>(a);
    r.vehicle = anchors[a].vehicle;
    r.start = anchors[a].origin;
    r.capacity = anchors[a].capacity;
    r.pinned = anchors[a].pinned >= 0;
    if (r.pinned) {
      r.nodes.push_back(anchors[a].pinned);
      r.load = space.demand(anchors[a].pinned);
    }
    extend(r, r.pinned ? anchors[a].pinned : r.start);
    routes.push_back(std::move(r));
  }
  while (remaining > 0) {
    Route r;
    r.capacity = space.capacity();
    extend(r, 0);
    routes.push_back(std::move(r));
  }
  return routes;
}

// Cheapest pairwise concatenation of a free trip onto another trip until at
// most `limit` trips remain.
void repair_fleet(const SearchSpace& space, std::vector<Route>& routes, int limit) {
  while (static_cast<int>(routes.size()) > limit) {
    double best_increase = std::numeric_limits<double>::infinity();
    std::size_t best_head = 0;
    std::size_t best_tail = 0;
    bool reverse_head = false;
    bool reverse_tail = false;
    for (std::size_t h = 0; h < routes.size(); ++h) {
      const Route& head = routes[h];
      for (std::size_t t = 0; t < routes.size(); ++t) {
        const Route& tail = routes[t];
        if (t == h || tail.anchored()) continue;
        if (head.load + tail.load > head.capacity) continue;
        for (int rh = 0; rh < (head.anchored() ? 1 : 2); ++rh) {
          const int end = head.nodes.empty()
                              ? head.start
                              : (rh ? head.nodes.front() : head.nodes.back());
          for (int rt = 0; rt < 2; ++rt) {
            const int begin = rt ? tail.nodes.back() : tail.nodes.front();
            const double increase =
                space.dist(end, begin) - space.dist(end, 0) - space.dist(0, begin);
            if (increase < best_increase) {
              best_increase = increase;
              best_head = h;
              best_tail = t;
              reverse_head = rh != 0;
              reverse_tail = rt != 0;
            }
          }
        }
      }
    }
    if (best_increase == std::numeric_limits<double>::infinity()) {
      throw InfeasibleConstructionError(
          "cannot merge trips down to the fleet size of " + std::to_string(limit));
    }
    Route& head = routes[best_head];
    Route tail = routes[best_tail];
    if (reverse_head) std::reverse(head.nodes.begin(), head.nodes.end());
    if (reverse_tail) std::reverse(tail.nodes.begin(), tail.nodes.end());
    head.nodes.insert(head.nodes.end(), tail.nodes.begin(), tail.nodes.end());
    head.load += tail.load;
    routes.erase(routes.begin() + static_cast<std::ptrdiff_t>(best_tail));
  }
}

void assign_vehicles(const SearchSpace& space, std::vector<Route>& routes) {
  std::set<VehicleId> used;
  for (const Route& r : routes) {
    if (r.anchored()) used.insert(r.vehicle);
  }
  std::vector<VehicleId> order;
  for (VehicleId v = 0; v < space.fleet_size(); ++v) {
    if (!used.contains(v)) order.push_back(v);
  }
  for (VehicleId v : used) order.push_back(v);
  std::size_t next = 0;
  for (Route& r : routes) {
    if (r.anchored()) continue;
    r.vehicle = order[next++ % order.size()];
  }
}

}  // namespace

Solution construct(const Instance& instance, ConstructionMethod method,
                   std::span<const CustomerId> targeted,
                   const ConstructionOptions& options) {
  std::vector<AnchorSpec> anchors;
  std::set<VehicleId> seeded;
  for (const VehicleSeed& seed : options.seeds) {
    if (seed.vehicle_id < 0 || seed.vehicle_id >= instance.fleet_size()) {
      throw InputError("seed vehicle " + std::to_string(seed.vehicle_id) +
                       " outside fleet");
    }
    if (!seeded.insert(seed.vehicle_id).second) {
      throw InputError("vehicle " + std::to_string(seed.vehicle_id) +
                       " seeded twice");
    }
    anchors.push_back({seed.vehicle_id, seed.origin, seed.capacity, seed.forced_first});
  }
  const SearchSpace space(instance, targeted, anchors);

  std::vector<Route> routes;
  switch (method) {
    case ConstructionMethod::Savings: routes = build_savings(space); break;
    case ConstructionMethod::PathCheapestArc: routes = build_path_cheapest_arc(space); break;
    case ConstructionMethod::GlobalCheapestArc: routes = build_global_cheapest_arc(space); break;
  }

  const int trips = static_cast<int>(routes.size());
  switch (options.fleet_policy) {
    case FleetPolicy::CheckAfter:
      if (trips > instance.fleet_size()) {
        throw InfeasibleConstructionError(
            std::string(to_string(method)) + " construction needs " +
            std::to_string(trips) + " trips but the fleet has " +
            std::to_string(instance.fleet_size()) + " vehicles");
      }
      break;
    case FleetPolicy::Repair:
      repair_fleet(space, routes, instance.fleet_size());
      break;
    case FleetPolicy::MultiTrip:
      break;
  }
  assign_vehicles(space, routes);
  return detail::to_solution(space, routes);
}

Solution construct(const Instance& instance, ConstructionMethod method) {
  const std::vector<CustomerId> all = instance.customer_ids();
  return construct(instance, method, all);
}

std::vector<Saving> savings_list(const Instance& instance,
                                 std::span<const CustomerId> targeted) {
  const SearchSpace space(instance, targeted, {});
  std::vector<Saving> out;
  for (const Arc& arc : sorted_savings(space)) {
    out.push_back({space.id_of(arc.a), space.id_of(arc.b), arc.key});
  }
  return out;
}

}  // namespace dvrp
