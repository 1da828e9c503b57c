#include "neighborhood.hpp"

#include <algorithm>
#include <set>

namespace dvrp::detail {

Neighborhood::Neighborhood(const SearchSpace& space, std::vector<Route> routes,
                           int max_trips)
    : space_(&space), routes_(std::move(routes)), max_trips_(max_trips) {
  refresh_spare();
}

void Neighborhood::refresh_spare() {
  first_empty_free_ = -1;
  int active = 0;
  for (int r = 0; r < route_count(); ++r) {
    const Route& route = routes_[r];
    if (route.nodes.empty() && !route.anchored()) {
      if (first_empty_free_ < 0) first_empty_free_ = r;
    } else {
      ++active;
    }
  }
  if (first_empty_free_ >= 0 && active >= max_trips_) {
    first_empty_free_ = -1;
    return;
  }
  if (first_empty_free_ >= 0 || active >= max_trips_) return;

  std::set<VehicleId> used;
  for (const Route& route : routes_) {
    if (!route.nodes.empty() || route.anchored()) used.insert(route.vehicle);
  }
  Route spare;
  spare.capacity = space_->capacity();
  for (VehicleId v = 0; v < space_->fleet_size(); ++v) {
    if (!used.contains(v)) {
      spare.vehicle = v;
      break;
    }
  }
  first_empty_free_ = route_count();
  routes_.push_back(std::move(spare));
}

void Neighborhood::relocate_arcs(const Route& r, int p, int q,
                                 ArcDelta& arcs) const noexcept {
  if (p == q) return;
  const int n = r.size();
  const int u = r.nodes[p];
  const int a = prev(r, p);
  const int b = next(r, p);
  arcs.remove(a, u);
  arcs.remove(u, b);
  arcs.add(a, b);
  // Positions in the sequence with u removed.
  auto reduced = [&](int i) { return r.nodes[i < p ? i : i + 1]; };
  const int a2 = q == 0 ? r.start : reduced(q - 1);
  const int b2 = q == n - 1 ? 0 : reduced(q);
  arcs.remove(a2, b2);
  arcs.add(a2, u);
  arcs.add(u, b2);
}

void Neighborhood::swap_arcs(const Route& r, int p, int q,
                             ArcDelta& arcs) const noexcept {
  const int u = r.nodes[p];
  const int v = r.nodes[q];
  const int a = prev(r, p);
  const int b = next(r, q);
  if (q == p + 1) {
    arcs.remove(a, u);
    arcs.remove(u, v);
    arcs.remove(v, b);
    arcs.add(a, v);
    arcs.add(v, u);
    arcs.add(u, b);
    return;
  }
  const int after_u = r.nodes[p + 1];
  const int before_v = r.nodes[q - 1];
  arcs.remove(a, u);
  arcs.remove(u, after_u);
  arcs.remove(before_v, v);
  arcs.remove(v, b);
  arcs.add(a, v);
  arcs.add(v, after_u);
  arcs.add(before_v, u);
  arcs.add(u, b);
}

void Neighborhood::two_opt_arcs(const Route& r, int p, int q,
                                ArcDelta& arcs) const noexcept {
  const int a = prev(r, p);
  const int b = next(r, q);
  arcs.remove(a, r.nodes[p]);
  arcs.remove(r.nodes[q], b);
  arcs.add(a, r.nodes[q]);
  arcs.add(r.nodes[p], b);
}

void Neighborhood::cross_relocate_arcs(const Route& from, int p, const Route& to,
                                       int q, ArcDelta& arcs) const noexcept {
  const int u = from.nodes[p];
  const int a = prev(from, p);
  const int b = next(from, p);
  arcs.remove(a, u);
  arcs.remove(u, b);
  arcs.add(a, b);
  const int a2 = q == 0 ? to.start : to.nodes[q - 1];
  const int b2 = q == to.size() ? 0 : to.nodes[q];
  arcs.remove(a2, b2);
  arcs.add(a2, u);
  arcs.add(u, b2);
}

void Neighborhood::cross_swap_arcs(const Route& ra, int p, const Route& rb, int q,
                                   ArcDelta& arcs) const noexcept {
  const int u = ra.nodes[p];
  const int v = rb.nodes[q];
  const int a = prev(ra, p);
  const int b = next(ra, p);
  const int c = prev(rb, q);
  const int d = next(rb, q);
  arcs.remove(a, u);
  arcs.remove(u, b);
  arcs.remove(c, v);
  arcs.remove(v, d);
  arcs.add(a, v);
  arcs.add(v, b);
  arcs.add(c, u);
  arcs.add(u, d);
}

void Neighborhood::tail_exchange_arcs(const Route& ra, int p, const Route& rb, int q,
                                      ArcDelta& arcs) const noexcept {
  const int a = p == 0 ? ra.start : ra.nodes[p - 1];
  const int b = p == ra.size() ? 0 : ra.nodes[p];
  const int c = q == 0 ? rb.start : rb.nodes[q - 1];
  const int d = q == rb.size() ? 0 : rb.nodes[q];
  arcs.remove(a, b);
  arcs.remove(c, d);
  arcs.add(a, d);
  arcs.add(c, b);
}

MoveCheck Neighborhood::evaluate_tail_exchange(const LocalMove& m, ArcDelta& arcs) const {
  const int count = route_count();
  if (m.r1 < 0 || m.r1 >= count || m.r2 < 0 || m.r2 >= count || m.r1 == m.r2) {
    return MoveCheck::Invalid;
  }
  const Route& a = routes_[m.r1];
  const Route& b = routes_[m.r2];
  if (m.p1 < 0 || m.p1 > a.size() || !a.insertable(m.p1) || m.p2 < 0 || m.p2 > b.size() ||
      !b.insertable(m.p2)) {
    return MoveCheck::Invalid;
  }
  const auto head_load = [&](const Route& r, int cut) {
    int load = 0;
    for (int i = 0; i < cut; ++i) load += space_->demand(r.nodes[i]);
    return load;
  };
  const int head_a = head_load(a, m.p1);
  const int head_b = head_load(b, m.p2);
  if (head_a + b.load - head_b > a.capacity || head_b + a.load - head_a > b.capacity) {
    return MoveCheck::Overload;
  }
  tail_exchange_arcs(a, m.p1, b, m.p2, arcs);
  return MoveCheck::Ok;
}

MoveCheck Neighborhood::evaluate(const LocalMove& m, ArcDelta& arcs) const {
  arcs.clear();
  if (m.kind == MoveKind::CrossRouteTwoOpt) return evaluate_tail_exchange(m, arcs);
  const int count = route_count();
  if (m.r1 < 0 || m.r1 >= count) return MoveCheck::Invalid;
  const Route& from = routes_[m.r1];
  const int n1 = from.size();
  if (m.p1 < 0 || m.p1 >= n1 || !from.movable(m.p1)) return MoveCheck::Invalid;

  switch (m.kind) {
    case MoveKind::Relocate:
      if (m.p2 < 0 || m.p2 >= n1 || !from.insertable(m.p2)) return MoveCheck::Invalid;
      relocate_arcs(from, m.p1, m.p2, arcs);
      return MoveCheck::Ok;
    case MoveKind::Swap:
    case MoveKind::TwoOpt:
      if (m.p2 <= m.p1 || m.p2 >= n1) return MoveCheck::Invalid;
      if (m.kind == MoveKind::Swap) {
        swap_arcs(from, m.p1, m.p2, arcs);
      } else {
        two_opt_arcs(from, m.p1, m.p2, arcs);
      }
      return MoveCheck::Ok;
    case MoveKind::CrossRouteRelocate: {
      if (m.r2 < 0 || m.r2 >= count || m.r2 == m.r1) return MoveCheck::Invalid;
      const Route& to = routes_[m.r2];
      if (m.p2 < 0 || m.p2 > to.size() || !to.insertable(m.p2)) return MoveCheck::Invalid;
      if (to.load + space_->demand(from.nodes[m.p1]) > to.capacity) {
        return MoveCheck::Overload;
      }
      cross_relocate_arcs(from, m.p1, to, m.p2, arcs);
      return MoveCheck::Ok;
    }
    case MoveKind::CrossRouteSwap: {
      if (m.r2 < 0 || m.r2 >= count || m.r2 == m.r1) return MoveCheck::Invalid;
      const Route& to = routes_[m.r2];
      if (m.p2 < 0 || m.p2 >= to.size() || !to.movable(m.p2)) return MoveCheck::Invalid;
      const int du = space_->demand(from.nodes[m.p1]);
      const int dv = space_->demand(to.nodes[m.p2]);
      if (from.load - du + dv > from.capacity || to.load - dv + du > to.capacity) {
        return MoveCheck::Overload;
      }
      cross_swap_arcs(from, m.p1, to, m.p2, arcs);
      return MoveCheck::Ok;
    }
    case MoveKind::CrossRouteTwoOpt:
      break;  // handled above
  }
  return MoveCheck::Invalid;
}

int Neighborhood::moved_customers(const LocalMove& m,
                                  std::array<MovedCustomer, 2>& out) const {
  const Route& a = routes_[m.r1];
  switch (m.kind) {
    case MoveKind::Relocate:
      out[0] = {a.nodes[m.p1], m.r1, m.r1};
      return 1;
    case MoveKind::Swap:
    case MoveKind::TwoOpt:
      out[0] = {a.nodes[m.p1], m.r1, m.r1};
      out[1] = {a.nodes[m.p2], m.r1, m.r1};
      return 2;
    case MoveKind::CrossRouteRelocate:
      out[0] = {a.nodes[m.p1], m.r1, m.r2};
      return 1;
    case MoveKind::CrossRouteSwap:
      out[0] = {a.nodes[m.p1], m.r1, m.r2};
      out[1] = {routes_[m.r2].nodes[m.p2], m.r2, m.r1};
      return 2;
    case MoveKind::CrossRouteTwoOpt: {
      // The first customer of each exchanged tail stands for the tail.
      const Route& b = routes_[m.r2];
      int count = 0;
      if (m.p1 < a.size()) out[count++] = {a.nodes[m.p1], m.r1, m.r2};
      if (m.p2 < b.size()) out[count++] = {b.nodes[m.p2], m.r2, m.r1};
      return count;
    }
  }
  return 0;
}

void Neighborhood::apply(const LocalMove& m) {
  Route& a = routes_[m.r1];
  switch (m.kind) {
    case MoveKind::Relocate: {
      const int u = a.nodes[m.p1];
      a.nodes.erase(a.nodes.begin() + m.p1);
      a.nodes.insert(a.nodes.begin() + m.p2, u);
      return;
    }
    case MoveKind::Swap:
      std::swap(a.nodes[m.p1], a.nodes[m.p2]);
      return;
    case MoveKind::TwoOpt:
      std::reverse(a.nodes.begin() + m.p1, a.nodes.begin() + m.p2 + 1);
      return;
    case MoveKind::CrossRouteRelocate: {
      Route& b = routes_[m.r2];
      const int u = a.nodes[m.p1];
      const int du = space_->demand(u);
      a.nodes.erase(a.nodes.begin() + m.p1);
      a.load -= du;
      b.nodes.insert(b.nodes.begin() + m.p2, u);
      b.load += du;
      refresh_spare();
      return;
    }
    case MoveKind::CrossRouteSwap: {
      Route& b = routes_[m.r2];
      const int du = space_->demand(a.nodes[m.p1]);
      const int dv = space_->demand(b.nodes[m.p2]);
      std::swap(a.nodes[m.p1], b.nodes[m.p2]);
      a.load += dv - du;
      b.load += du - dv;
      return;
    }
    case MoveKind::CrossRouteTwoOpt: {
      Route& b = routes_[m.r2];
      std::vector<int> tail_a(a.nodes.begin() + m.p1, a.nodes.end());
      std::vector<int> tail_b(b.nodes.begin() + m.p2, b.nodes.end());
      int load_a = 0;
      int load_b = 0;
      for (int u : tail_a) load_a += space_->demand(u);
      for (int u : tail_b) load_b += space_->demand(u);
      a.nodes.resize(static_cast<std::size_t>(m.p1));
      a.nodes.insert(a.nodes.end(), tail_b.begin(), tail_b.end());
      b.nodes.resize(static_cast<std::size_t>(m.p2));
      b.nodes.insert(b.nodes.end(), tail_a.begin(), tail_a.end());
      a.load += load_b - load_a;
      b.load += load_a - load_b;
      refresh_spare();
      return;
    }
  }
}

}  // namespace dvrp::detail
