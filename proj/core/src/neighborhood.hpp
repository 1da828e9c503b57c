#pragma once

#include <array>
#include <vector>

#include "dvrp/improvement.hpp"
#include "search_space.hpp"

namespace dvrp::detail {

struct LocalMove {
  MoveKind kind = MoveKind::Relocate;
  int r1 = 0;
  int p1 = 0;
  int r2 = 0;
  int p2 = 0;
};

// Arcs a move removes and adds. Intermediate arcs may appear on both sides;
// they cancel in the sum.
struct ArcDelta {
  std::array<std::array<int, 2>, 4> removed{};
  std::array<std::array<int, 2>, 4> added{};
  int removed_count = 0;
  int added_count = 0;

  void clear() noexcept { removed_count = added_count = 0; }
  void remove(int a, int b) noexcept { removed[removed_count++] = {a, b}; }
  void add(int a, int b) noexcept { added[added_count++] = {a, b}; }

  template <typename Weight>
  double value(Weight&& weight) const {
    double sum = 0.0;
    for (int i = 0; i < added_count; ++i) sum += weight(added[i][0], added[i][1]);
    for (int i = 0; i < removed_count; ++i) sum -= weight(removed[i][0], removed[i][1]);
    return sum;
  }
};

enum class MoveCheck { Ok, Invalid, Overload };

struct MovedCustomer {
  int node = 0;
  int from = 0;  // route index before the move
  int to = 0;    // route index after the move
};

/// Routes plus the move kinds over them.
///
/// Route indices are stable for the lifetime of the object: emptied routes
/// stay in place. While fewer than `max_trips` routes are in use, one empty
/// depot route is kept at the end as a target for cross-route relocation.
class Neighborhood {
 public:
  Neighborhood(const SearchSpace& space, std::vector<Route> routes, int max_trips);

  const SearchSpace& space() const noexcept { return *space_; }
  const std::vector<Route>& routes() const noexcept { return routes_; }
  int route_count() const noexcept { return static_cast<int>(routes_.size()); }

  /// Validates indices and capacity and fills `arcs`.
  MoveCheck evaluate(const LocalMove& move, ArcDelta& arcs) const;
  void apply(const LocalMove& move);
  int moved_customers(const LocalMove& move, std::array<MovedCustomer, 2>& out) const;

  /// Calls `visit(move, arcs)` for every valid, capacity-feasible move of
  /// `kind` in lexicographic (r1, p1, r2, p2) order. Identity moves are
  /// skipped. Returns false if the visitor stopped the scan.
  template <typename Visitor>
  bool scan(MoveKind kind, Visitor&& visit) const;

  // Index of the empty depot route offered as a relocation target, or -1.
  int first_empty_free() const noexcept { return first_empty_free_; }

  int prev(const Route& r, int pos) const noexcept {
    return pos == 0 ? r.start : r.nodes[pos - 1];
  }
  int next(const Route& r, int pos) const noexcept {
    return pos + 1 == r.size() ? 0 : r.nodes[pos + 1];
  }

  void relocate_arcs(const Route& r, int p, int q, ArcDelta& arcs) const noexcept;
  void swap_arcs(const Route& r, int p, int q, ArcDelta& arcs) const noexcept;
  void two_opt_arcs(const Route& r, int p, int q, ArcDelta& arcs) const noexcept;
  void cross_relocate_arcs(const Route& from, int p, const Route& to, int q,
                           ArcDelta& arcs) const noexcept;
  void cross_swap_arcs(const Route& a, int p, const Route& b, int q,
                       ArcDelta& arcs) const noexcept;
  void tail_exchange_arcs(const Route& a, int p, const Route& b, int q,
                          ArcDelta& arcs) const noexcept;

  bool relocation_target(int r) const noexcept {
    const Route& route = routes_[r];
    return !route.nodes.empty() || route.anchored() || r == first_empty_free_;
  }

 private:
  MoveCheck evaluate_tail_exchange(const LocalMove& move, ArcDelta& arcs) const;
  void refresh_spare();

  const SearchSpace* space_;
  std::vector<Route> routes_;
  int max_trips_;
  int first_empty_free_ = -1;
};

template <typename Visitor>
bool Neighborhood::scan(MoveKind kind, Visitor&& visit) const {
  ArcDelta arcs;
  const int count = route_count();
  switch (kind) {
    case MoveKind::Relocate:
      for (int r = 0; r < count; ++r) {
        const Route& route = routes_[r];
        const int n = route.size();
        for (int p = route.pinned ? 1 : 0; p < n; ++p) {
          for (int q = route.pinned ? 1 : 0; q < n; ++q) {
            if (q == p) continue;
            arcs.clear();
            relocate_arcs(route, p, q, arcs);
            if (!visit(LocalMove{kind, r, p, r, q}, arcs)) return false;
          }
        }
      }
      return true;
    case MoveKind::Swap:
    case MoveKind::TwoOpt:
      for (int r = 0; r < count; ++r) {
        const Route& route = routes_[r];
        const int n = route.size();
        for (int p = route.pinned ? 1 : 0; p < n; ++p) {
          for (int q = p + 1; q < n; ++q) {
            arcs.clear();
            if (kind == MoveKind::Swap) {
              swap_arcs(route, p, q, arcs);
            } else {
              two_opt_arcs(route, p, q, arcs);
            }
            if (!visit(LocalMove{kind, r, p, r, q}, arcs)) return false;
          }
        }
      }
      return true;
    case MoveKind::CrossRouteRelocate:
      for (int r1 = 0; r1 < count; ++r1) {
        const Route& from = routes_[r1];
        const int n1 = from.size();
        for (int p = from.pinned ? 1 : 0; p < n1; ++p) {
          const int node = from.nodes[p];
          const int demand = space_->demand(node);
          for (int r2 = 0; r2 < count; ++r2) {
            if (r2 == r1 || !relocation_target(r2)) continue;
            const Route& to = routes_[r2];
            if (to.load + demand > to.capacity) continue;
            if (to.nodes.empty() && !to.anchored() && n1 == 1 && !from.anchored()) {
              continue;
            }
            const int n2 = to.size();
            for (int q = to.pinned ? 1 : 0; q <= n2; ++q) {
              arcs.clear();
              cross_relocate_arcs(from, p, to, q, arcs);
              if (!visit(LocalMove{kind, r1, p, r2, q}, arcs)) return false;
            }
          }
        }
      }
      return true;
    case MoveKind::CrossRouteSwap:
      for (int r1 = 0; r1 < count; ++r1) {
        const Route& a = routes_[r1];
        for (int p = a.pinned ? 1 : 0; p < a.size(); ++p) {
          const int du = space_->demand(a.nodes[p]);
          for (int r2 = r1 + 1; r2 < count; ++r2) {
            const Route& b = routes_[r2];
            for (int q = b.pinned ? 1 : 0; q < b.size(); ++q) {
              const int dv = space_->demand(b.nodes[q]);
              if (a.load - du + dv > a.capacity || b.load - dv + du > b.capacity) {
                continue;
              }
              arcs.clear();
              cross_swap_arcs(a, p, b, q, arcs);
              if (!visit(LocalMove{kind, r1, p, r2, q}, arcs)) return false;
            }
          }
        }
      }
      return true;
    case MoveKind::CrossRouteTwoOpt:
      for (int r1 = 0; r1 < count; ++r1) {
        if (!relocation_target(r1)) continue;
        const Route& a = routes_[r1];
        for (int r2 = r1 + 1; r2 < count; ++r2) {
          if (!relocation_target(r2)) continue;
          const Route& b = routes_[r2];
          // Exchanging whole contents of two depot routes changes nothing.
          const bool same_start = !a.anchored() && !b.anchored();
          int head_a = a.pinned ? space_->demand(a.nodes[0]) : 0;
          for (int p = a.pinned ? 1 : 0; p <= a.size(); ++p) {
            int head_b = b.pinned ? space_->demand(b.nodes[0]) : 0;
            for (int q = b.pinned ? 1 : 0; q <= b.size(); ++q) {
              const bool identity =
                  (p == a.size() && q == b.size()) || (same_start && p == 0 && q == 0);
              if (!identity && head_a + b.load - head_b <= a.capacity &&
                  head_b + a.load - head_a <= b.capacity) {
                arcs.clear();
                tail_exchange_arcs(a, p, b, q, arcs);
                if (!visit(LocalMove{kind, r1, p, r2, q}, arcs)) return false;
              }
              if (q < b.size()) head_b += space_->demand(b.nodes[q]);
            }
            if (p < a.size()) head_a += space_->demand(a.nodes[p]);
          }
        }
      }
      return true;
  }
  return true;
}

}  // namespace dvrp::detail
