#include <gtest/gtest.h>

#include <cmath>

#include "dvrp/construction.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace dvrp {
namespace {

Instance two_heavy() {
  return Instance({0, 0}, 2, 10, {{1, {0, 10}, 6, 0}, {2, {10, 0}, 6, 0}});
}

Instance square() {
  return Instance({0, 0}, 1, 10, {{1, {0, 5}, 3, 0}, {2, {5, 5}, 3, 0}, {3, {5, 0}, 3, 0}});
}

std::vector<std::vector<CustomerId>> visits_of(const Solution& s) {
  std::vector<std::vector<CustomerId>> out;
  for (const Trip& t : s.trips) out.push_back(t.visits);
  return out;
}

TEST(Construction, SavingsOnSquare) {
  const Solution s = construct(square(), ConstructionMethod::Savings);
  ASSERT_EQ(s.trips.size(), 1u);
  EXPECT_EQ(s.trips[0].visits.size(), 3u);
  EXPECT_NEAR(s.cost, 20.0, 1e-9);
}

TEST(Construction, SavingsRejectsOverloadedMerge) {
  const Solution s = construct(two_heavy(), ConstructionMethod::Savings);
  EXPECT_EQ(s.trips.size(), 2u);
  EXPECT_NEAR(s.cost, 40.0, 1e-9);
}

TEST(Construction, PathCheapestArcBreaksDepotTieByLowestId) {
  const Solution s = construct(square(), ConstructionMethod::PathCheapestArc);
  EXPECT_EQ(visits_of(s), (std::vector<std::vector<CustomerId>>{{1, 2, 3}}));
  EXPECT_NEAR(s.cost, 20.0, 1e-9);
}

TEST(Construction, GlobalCheapestArcOnSquare) {
  const Solution s = construct(square(), ConstructionMethod::GlobalCheapestArc);
  ASSERT_EQ(s.trips.size(), 1u);
  EXPECT_NEAR(s.cost, 20.0, 1e-9);
}

TEST(Construction, SingleCustomer) {
  const Instance one({1, 1}, 1, 10, {{4, {4, 5}, 2, 0}});
  for (ConstructionMethod m : kAllConstructionMethods) {
    const Solution s = construct(one, m);
    EXPECT_EQ(visits_of(s), (std::vector<std::vector<CustomerId>>{{4}})) << to_string(m);
    EXPECT_NEAR(s.cost, 10.0, 1e-9);
  }
}

TEST(Construction, MethodNames) {
  for (ConstructionMethod m : kAllConstructionMethods) {
    EXPECT_EQ(parse_construction_method(to_string(m)), m);
  }
  EXPECT_EQ(to_string(ConstructionMethod::PathCheapestArc), "path-cheapest-arc");
  EXPECT_FALSE(parse_construction_method("sweep"));
}

TEST(SavingsList, SquareValues) {
  const auto ids = square().customer_ids();
  const auto list = savings_list(square(), ids);
  ASSERT_EQ(list.size(), 3u);
  // (1,2) and (2,3) tie at sqrt(50); the tie goes to the smaller ids.
  EXPECT_EQ(list[0].first, 1);
  EXPECT_EQ(list[0].second, 2);
  EXPECT_NEAR(list[0].value, std::sqrt(50.0), 1e-9);
  EXPECT_EQ(list[1].first, 2);
  EXPECT_EQ(list[1].second, 3);
  EXPECT_NEAR(list[1].value, std::sqrt(50.0), 1e-9);
  EXPECT_EQ(list[2].first, 1);
  EXPECT_EQ(list[2].second, 3);
  EXPECT_NEAR(list[2].value, 10.0 - std::sqrt(50.0), 1e-9);
}

TEST(SavingsList, CoincidentWithDepot) {
  const Instance at_depot({2, 2}, 1, 10, {{1, {2, 2}, 1, 0}, {2, {2, 2}, 1, 0}});
  const auto ids = at_depot.customer_ids();
  const auto list = savings_list(at_depot, ids);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0].value, 0.0);
}

TEST(Construction, CheckAfterFailsWhenFleetTooSmall) {
  const Instance tight({0, 0}, 1, 10, {{1, {0, 10}, 6, 0}, {2, {10, 0}, 6, 0}});
  EXPECT_THROW(construct(tight, ConstructionMethod::Savings), InfeasibleConstructionError);
  const auto ids = tight.customer_ids();
  const Solution multi =
      construct(tight, ConstructionMethod::Savings, ids, {FleetPolicy::MultiTrip, {}});
  EXPECT_EQ(multi.trips.size(), 2u);
}

TEST(Construction, RepairMergesDownToFleet) {
  Rng rng(31);
  int repaired = 0;
  for (int i = 0; i < 100; ++i) {
    testing::RandomInstanceOptions o;
    o.max_customers = 12;
    o.min_capacity = 90;
    o.max_demand = 10;
    o.fleet_size = 2;
    const Instance instance = testing::random_instance(rng, o);
    const auto ids = instance.customer_ids();
    for (ConstructionMethod m : kAllConstructionMethods) {
      try {
        const Solution s = construct(instance, m, ids, {FleetPolicy::Repair, {}});
        EXPECT_LE(s.trips.size(), 2u);
        EXPECT_TRUE(check_feasible(instance, s).ok());
        ++repaired;
      } catch (const InfeasibleConstructionError&) {
      }
    }
  }
  EXPECT_GT(repaired, 0);
}

TEST(Construction, SeedsComeFirstWithForcedVisit) {
  const Instance sq = square();
  const auto ids = sq.customer_ids();
  ConstructionOptions options{FleetPolicy::MultiTrip, {{0, {5, 10}, 4, 2}}};
  for (ConstructionMethod m : kAllConstructionMethods) {
    const Solution s = construct(sq, m, ids, options);
    ASSERT_FALSE(s.trips.empty());
    ASSERT_TRUE(s.trips[0].anchor);
    EXPECT_EQ(s.trips[0].anchor->origin, (Point{5, 10}));
    EXPECT_TRUE(s.trips[0].anchor->pinned_first);
    ASSERT_FALSE(s.trips[0].visits.empty());
    EXPECT_EQ(s.trips[0].visits.front(), 2);
    EXPECT_TRUE(check_feasible(sq, s).ok()) << check_feasible(sq, s).summary();
  }
}

TEST(Construction, RejectsBadSeeds) {
  const Instance sq = square();
  const auto ids = sq.customer_ids();
  EXPECT_THROW(construct(sq, ConstructionMethod::Savings, ids,
                         {FleetPolicy::MultiTrip, {{3, {0, 0}, 5, std::nullopt}}}),
               InputError);
  EXPECT_THROW(construct(sq, ConstructionMethod::Savings, ids,
                         {FleetPolicy::MultiTrip, {{0, {0, 0}, 2, 1}}}),
               InputError);
}

TEST(Construction, FeasibleAndDeterministicOnRandomInstances) {
  Rng rng(37);
  for (int i = 0; i < 300; ++i) {
    testing::RandomInstanceOptions o;
    o.max_customers = 40;
    const Instance instance = testing::random_instance(rng, o);
    for (ConstructionMethod m : kAllConstructionMethods) {
      const Solution a = construct(instance, m);
      const Solution b = construct(instance, m);
      ASSERT_TRUE(check_feasible(instance, a).ok()) << to_string(m);
      EXPECT_EQ(a.trips, b.trips);
      EXPECT_NEAR(a.cost, solution_cost(instance, a), 1e-9);
    }
  }
}

TEST(Construction, BetweenOptimumAndOneTripPerCustomer) {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const Instance instance = testing::random_instance(rng);
    const auto optimum = testing::brute_force_optimum(instance, instance.fleet_size());
    ASSERT_TRUE(optimum);
    double trivial = 0.0;
    for (const Customer& c : instance.customers()) {
      trivial += 2.0 * euclidean_distance(instance.depot(), c.location);
    }
    for (ConstructionMethod m : kAllConstructionMethods) {
      const Solution s = construct(instance, m);
      EXPECT_GE(s.cost, optimum->cost - 1e-9);
      if (m == ConstructionMethod::Savings) EXPECT_LE(s.cost, trivial + 1e-9);
    }
  }
}

TEST(Construction, SavingsMergesNeverIncreaseCost) {
  // With every saving positive, each merge lowers the cost, so the result
  // is no worse than one out-and-back trip per customer.
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    const Instance instance = testing::random_instance(rng);
    const auto ids = instance.customer_ids();
    const auto list = savings_list(instance, ids);
    if (list.empty() || list.back().value <= 0.0) continue;
    double trivial = 0.0;
    for (const Customer& c : instance.customers()) {
      trivial += 2.0 * euclidean_distance(instance.depot(), c.location);
    }
    const Solution s = construct(instance, ConstructionMethod::Savings);
    const double merged = static_cast<double>(instance.size() - s.trips.size());
    if (merged > 0) {
      EXPECT_LT(s.cost, trivial);
    }
  }
}

}  // namespace
}  // namespace dvrp
