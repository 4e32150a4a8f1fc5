#include "doctest.h"
#include "voxproof/errors.hpp"
#include "voxproof/heap.hpp"

using namespace voxproof;

namespace {
const GridBox kBox{{0, 0, 0}, {3, 0, 0}};
}

TEST_CASE("filled heap covers the whole box") {
  const SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  CHECK(h.size() == 4);
  CHECK(h.in_domain({0, 0, 0}));
  CHECK(h.in_domain({3, 0, 0}));
  CHECK_FALSE(h.in_domain({4, 0, 0}));
  CHECK(h.at({2, 0, 0}) == Occupancy::empty());
  CHECK(h.domain() == VoxelSet::box(kBox));
}

TEST_CASE("partial heap reads and writes") {
  SpatialHeap h = SpatialHeap::over(kBox, {{1, 0, 0}, {2, 0, 0}}, Occupancy::stock());
  CHECK(h.size() == 2);
  CHECK_FALSE(h.find({0, 0, 0}).has_value());
  CHECK(h.find({1, 0, 0})->material == Material::Stock);
  h.store({1, 0, 0}, Occupancy::tool(3));
  CHECK(h.at({1, 0, 0}) == Occupancy::tool(3));
  CHECK_THROWS_AS(h.store({0, 0, 0}, Occupancy::empty()), DomainError);
  CHECK_THROWS_AS(h.at({0, 0, 0}), DomainError);
  CHECK_THROWS_AS(SpatialHeap::over(kBox, {{9, 0, 0}}, Occupancy::empty()), DomainError);
}

TEST_CASE("material and value queries") {
  SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  h.store({1, 0, 0}, Occupancy::tool(1));
  h.store({2, 0, 0}, Occupancy::tool(2));
  CHECK(h.cells_with(Material::Tool) == VoxelSet{{1, 0, 0}, {2, 0, 0}});
  CHECK(h.cells_where(Occupancy::tool(2)) == VoxelSet{{2, 0, 0}});
  CHECK(h.cells_with(Material::Stock).empty());
}

TEST_CASE("restriction, adoption, surrender") {
  SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  h.store({0, 0, 0}, Occupancy::stock());
  const SpatialHeap left = h.restricted_to({{0, 0, 0}, {1, 0, 0}});
  SpatialHeap right = h.restricted_to({{2, 0, 0}, {3, 0, 0}});
  CHECK(left.size() == 2);
  CHECK(left.at({0, 0, 0}) == Occupancy::stock());
  CHECK(disjoint(left, right));

  right.adopt(left);
  CHECK(right.size() == 4);
  CHECK(right.at({0, 0, 0}) == Occupancy::stock());
  CHECK_THROWS_AS(right.adopt(left), DomainError);  // already owned

  right.surrender({{0, 0, 0}, {1, 0, 0}});
  CHECK(right.size() == 2);
  CHECK_FALSE(right.in_domain({0, 0, 0}));
}

TEST_CASE("heap equality respects domain and values") {
  SpatialHeap a = SpatialHeap::filled(kBox, Occupancy::empty());
  SpatialHeap b = SpatialHeap::filled(kBox, Occupancy::empty());
  CHECK(a == b);
  b.store({1, 0, 0}, Occupancy::stock());
  CHECK_FALSE(a == b);
  CHECK(mutate(a, {1, 0, 0}, Occupancy::stock()) == b);
  CHECK(a.restricted_to({{0, 0, 0}}) == b.restricted_to({{0, 0, 0}}));
}

TEST_CASE("assertion checking: exact partitions") {
  SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  h.store({0, 0, 0}, Occupancy::tool(0));
  h.store({2, 0, 0}, Occupancy::stock());

  const Assertion good = Assertion::star(
      {Assertion::region({{0, 0, 0}}, Occupancy::tool(0)),
       Assertion::region({{2, 0, 0}}, Occupancy::stock()),
       Assertion::region({{1, 0, 0}, {3, 0, 0}}, Occupancy::empty())});
  CHECK(satisfies(h, good));

  // Leaving a cell unclaimed breaks a wildcard-free assertion.
  const Assertion partial = Assertion::star({Assertion::region({{0, 0, 0}}, Occupancy::tool(0)),
                                             Assertion::region({{2, 0, 0}}, Occupancy::stock()),
                                             Assertion::region({{1, 0, 0}}, Occupancy::empty())});
  const CheckResult r = check(h, partial);
  CHECK_FALSE(r.ok);
  CHECK(r.contested == VoxelSet{{3, 0, 0}});

  CHECK(satisfies(h, Assertion::star({Assertion::region({{0, 0, 0}}, Occupancy::tool(0)),
                                      Assertion::truth()})));
}

TEST_CASE("assertion checking: value mismatches name the offending cells") {
  SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  h.store({2, 0, 0}, Occupancy::environment());
  const CheckResult r =
      check(h, Assertion::star({Assertion::region({{1, 0, 0}, {2, 0, 0}}, Occupancy::empty()),
                                Assertion::truth()}));
  CHECK_FALSE(r.ok);
  CHECK(r.contested == VoxelSet{{2, 0, 0}});
}

TEST_CASE("star conjuncts must claim disjoint cells") {
  const SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  const CheckResult r = check(
      h, Assertion::star({Assertion::region({{0, 0, 0}, {1, 0, 0}}, Occupancy::empty()),
                          Assertion::region({{1, 0, 0}, {2, 0, 0}}, Occupancy::empty()),
                          Assertion::truth()}));
  CHECK_FALSE(r.ok);
  CHECK(r.contested == VoxelSet{{1, 0, 0}});
}

TEST_CASE("points-to is a one cell region") {
  SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  h.store({1, 0, 0}, Occupancy::tool(4));
  CHECK(satisfies(h, Assertion::star({Assertion::points_to({1, 0, 0}, Occupancy::tool(4)),
                                      Assertion::truth()})));
  CHECK_FALSE(satisfies(h, Assertion::star({Assertion::points_to({1, 0, 0}, Occupancy::tool(5)),
                                            Assertion::truth()})));
}

TEST_CASE("emp holds only on an empty domain") {
  const SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  CHECK(satisfies(h.restricted_to({}), Assertion::emp()));
  CHECK_FALSE(satisfies(h, Assertion::emp()));
}

TEST_CASE("pure atoms are facts about sets, not heap claims") {
  const SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  CHECK(satisfies(h, Assertion::pure_subset({{1, 0, 0}}, {{1, 0, 0}, {2, 0, 0}})));
  CHECK(satisfies(h, Assertion::pure_equal({{1, 0, 0}}, {{1, 0, 0}})));

  const CheckResult sub = check(h, Assertion::pure_subset({{1, 0, 0}, {9, 9, 9}}, {{1, 0, 0}}));
  CHECK_FALSE(sub.ok);
  CHECK(sub.contested == VoxelSet{{9, 9, 9}});

  const CheckResult eq = check(h, Assertion::pure_equal({{1, 0, 0}}, {{2, 0, 0}}));
  CHECK_FALSE(eq.ok);
  CHECK(eq.contested == VoxelSet{{1, 0, 0}, {2, 0, 0}});

  // Pure facts combine with spatial claims without demanding full coverage.
  SpatialHeap g = SpatialHeap::filled(kBox, Occupancy::empty());
  g.store({0, 0, 0}, Occupancy::tool(0));
  CHECK(satisfies(g, Assertion::star({Assertion::region({{0, 0, 0}}, Occupancy::tool(0)),
                                      Assertion::pure_equal({}, {})})));
}

TEST_CASE("tool claims are owner sensitive, other materials are not") {
  SpatialHeap h = SpatialHeap::filled(kBox, Occupancy::empty());
  h.store({0, 0, 0}, Occupancy::tool(1));
  CHECK_FALSE(satisfies(h, Assertion::star({Assertion::region({{0, 0, 0}}, Occupancy::tool(2)),
                                            Assertion::truth()})));
  CHECK(satisfies(h, Assertion::star({Assertion::region({{0, 0, 0}}, Occupancy::tool(1)),
                                      Assertion::truth()})));
  CHECK(Occupancy{Material::Stock, 1} == Occupancy{Material::Stock, 2});
}
