#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dvrp/model.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace dvrp {
namespace {

// depot (0,0); c1@(0,10) d=6, c2@(10,0) d=6, q=10
Instance two_heavy() {
  return Instance({0, 0}, 2, 10, {{1, {0, 10}, 6, 0}, {2, {10, 0}, 6, 0}});
}

// depot (0,0); c1@(0,5), c2@(5,5), c3@(5,0), demand 3 each, q=10
Instance square() {
  return Instance({0, 0}, 1, 10, {{1, {0, 5}, 3, 0}, {2, {5, 5}, 3, 0}, {3, {5, 0}, 3, 0}});
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(euclidean_distance({0, 0}, {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(euclidean_distance({7, 2}, {7, 2}), 0.0);
  EXPECT_DOUBLE_EQ(euclidean_distance({1, 1}, {4, 5}), 5.0);
}

TEST(Distance, SymmetricAndTriangle) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Point a{rng.uniform(-50, 50), rng.uniform(-50, 50)};
    const Point b{rng.uniform(-50, 50), rng.uniform(-50, 50)};
    const Point c{rng.uniform(-50, 50), rng.uniform(-50, 50)};
    EXPECT_EQ(euclidean_distance(a, b), euclidean_distance(b, a));
    EXPECT_LE(euclidean_distance(a, c),
              euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-12);
  }
}

TEST(DistanceMatrix, DenseAndComputedAgree) {
  Rng rng(5);
  std::vector<Point> points;
  for (int i = 0; i < 40; ++i) points.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
  const DistanceMatrix dense(points);
  const DistanceMatrix lazy(points, 10);
  ASSERT_TRUE(dense.dense());
  ASSERT_FALSE(lazy.dense());
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = 0; b < points.size(); ++b) {
      EXPECT_EQ(dense(a, b), lazy(a, b));
    }
  }
}

TEST(TripCost, Examples) {
  const Instance one({0, 0}, 1, 10, {{1, {3, 4}, 1, 0}});
  EXPECT_DOUBLE_EQ(trip_cost(one, {0, {1}, {}}), 10.0);
  EXPECT_DOUBLE_EQ(trip_cost(one, {0, {}, {}}), 0.0);
  EXPECT_DOUBLE_EQ(trip_cost(square(), {0, {1, 2, 3}, {}}), 20.0);
}

TEST(TripCost, UnknownCustomerNamesId) {
  try {
    trip_cost(square(), {0, {1, 42}, {}});
    FAIL() << "expected UnknownCustomerError";
  } catch (const UnknownCustomerError& e) {
    EXPECT_EQ(e.customer, 42);
    EXPECT_NE(std::string(e.what()).find("42"), std::string::npos);
  }
}

TEST(TripCost, AnchoredTripStartsAtOrigin) {
  const Instance one({0, 0}, 1, 10, {{1, {3, 4}, 1, 0}});
  const Trip t{0, {1}, TripAnchor{{3, 0}, 5, true}};
  EXPECT_DOUBLE_EQ(trip_cost(one, t), 4.0 + 5.0);
  const Trip empty{0, {}, TripAnchor{{0, 7}, 5, false}};
  EXPECT_DOUBLE_EQ(trip_cost(one, empty), 7.0);
}

TEST(SolutionCost, Examples) {
  EXPECT_DOUBLE_EQ(solution_cost(two_heavy(), {{{0, {1}, {}}, {1, {2}, {}}}, 0}), 40.0);
  EXPECT_DOUBLE_EQ(solution_cost(two_heavy(), {}), 0.0);
  const Instance sq = square();
  const Solution twice{{{0, {1, 2, 3}, {}}, {0, {3, 2, 1}, {}}}, 0};
  EXPECT_DOUBLE_EQ(solution_cost(sq, twice), 40.0);
}

TEST(SolutionCost, InvariantUnderTripOrderAndReversal) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Instance instance = testing::random_instance(rng);
    Solution s = testing::random_solution(rng, instance);
    const double cost = solution_cost(instance, s);
    std::reverse(s.trips.begin(), s.trips.end());
    EXPECT_NEAR(solution_cost(instance, s), cost, 1e-9);
    auto& visits = s.trips[rng.below(s.trips.size())].visits;
    std::reverse(visits.begin(), visits.end());
    EXPECT_NEAR(solution_cost(instance, s), cost, 1e-9);
  }
}

TEST(CheckFeasible, Examples) {
  const Instance i2 = two_heavy();
  EXPECT_TRUE(check_feasible(i2, {{{0, {1}, {}}, {1, {2}, {}}}, 0}).ok());

  const FeasibilityReport overload = check_feasible(i2, {{{0, {1, 2}, {}}}, 0});
  ASSERT_EQ(overload.violations.size(), 1u);
  EXPECT_EQ(overload.violations[0].kind, ViolationKind::CapacityExceeded);
  EXPECT_EQ(overload.violations[0].trip, 0u);

  const FeasibilityReport missing = check_feasible(i2, {{{0, {1}, {}}}, 0});
  ASSERT_EQ(missing.violations.size(), 1u);
  EXPECT_EQ(missing.violations[0].kind, ViolationKind::MissingCustomer);
  EXPECT_EQ(missing.violations[0].customer, 2);
}

TEST(CheckFeasible, ListsEveryViolation) {
  const Instance sq = square();
  const Solution s{{{0, {1, 1, 9}, {}}, {0, {}, {}}, {1, {}, TripAnchor{{0, 0}, 3, true}}}, 0};
  const std::vector<CustomerId> targeted{1, 2};
  const FeasibilityReport r = check_feasible(sq, s, targeted);
  EXPECT_EQ(r.count(ViolationKind::DuplicateCustomer), 1u);
  EXPECT_EQ(r.count(ViolationKind::UnknownCustomer), 1u);
  EXPECT_EQ(r.count(ViolationKind::MissingCustomer), 1u);
  EXPECT_GE(r.count(ViolationKind::FleetOveruse), 1u);
  EXPECT_EQ(r.count(ViolationKind::EmptyPinnedTrip), 1u);
  EXPECT_FALSE(r.summary().empty());
}

TEST(CheckFeasible, UntargetedCustomerIsReported) {
  const std::vector<CustomerId> targeted{1};
  const FeasibilityReport r = check_feasible(square(), {{{0, {1, 2}, {}}}, 0}, targeted);
  EXPECT_EQ(r.count(ViolationKind::UntargetedCustomer), 1u);
}

TEST(CheckFeasible, OkMeansEachCustomerExactlyOnce) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const Instance instance = testing::random_instance(rng);
    const Solution s = testing::random_solution(rng, instance);
    ASSERT_TRUE(check_feasible(instance, s).ok());
    std::vector<CustomerId> seen;
    for (const Trip& t : s.trips) seen.insert(seen.end(), t.visits.begin(), t.visits.end());
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, instance.customer_ids());
  }
}

TEST(CheckFeasible, FeasibleCostsNeverBeatTheOptimum) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const Instance instance = testing::random_instance(rng);
    const auto optimum = testing::brute_force_optimum(instance, instance.fleet_size());
    ASSERT_TRUE(optimum);
    const Solution s = testing::random_solution(rng, instance);
    EXPECT_GE(s.cost, optimum->cost - 1e-9);
  }
}

TEST(Instance, Validation) {
  EXPECT_THROW(Instance({0, 0}, 0, 10, {}), InputError);
  EXPECT_THROW(Instance({0, 0}, 1, 0, {}), InputError);
  EXPECT_THROW(Instance({0, 0}, 1, 10, {{1, {0, 0}, 1, 0}, {1, {1, 1}, 1, 0}}), InputError);
  EXPECT_THROW(Instance({0, 0}, 1, 10, {{1, {0, 0}, 0, 0}}), InputError);
  EXPECT_THROW(Instance({0, 0}, 1, 10, {{1, {0, 0}, 1, -1}}), InputError);
  try {
    Instance({0, 0}, 1, 10, {{7, {0, 0}, 11, 0}});
    FAIL() << "expected DemandExceedsCapacityError";
  } catch (const DemandExceedsCapacityError& e) {
    EXPECT_EQ(e.customer, 7);
  }
}

TEST(Instance, Lookup) {
  const Instance sq = square();
  EXPECT_TRUE(sq.contains(2));
  EXPECT_FALSE(sq.contains(4));
  EXPECT_EQ(sq.customer(3).location, (Point{5, 0}));
  EXPECT_THROW(sq.customer(4), UnknownCustomerError);
  EXPECT_EQ(sq.customer_ids(), (std::vector<CustomerId>{1, 2, 3}));
  EXPECT_TRUE(sq.all_static());
}

}  // namespace
}  // namespace dvrp
