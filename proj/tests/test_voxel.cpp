#include "doctest.h"
#include "voxproof/voxel.hpp"

using namespace voxproof;

TEST_CASE("voxel ordering and arithmetic") {
  CHECK(Voxel{1, 2, 3} == Voxel{1, 2, 3});
  CHECK(Voxel{0, 0, 1} < Voxel{0, 1, 0});
  CHECK(Voxel{0, 1, 0} < Voxel{1, 0, 0});
  CHECK(Voxel{1, 2, 3} + Voxel{-1, 0, 2} == Voxel{0, 2, 5});
  CHECK(Voxel{1, 2, 3} - Voxel{1, 2, 3} == Voxel{0, 0, 0});
  CHECK(to_string(Voxel{-1, 2, 0}) == "(-1,2,0)");
}

TEST_CASE("grid box membership and volume") {
  const GridBox b{{0, 0, 0}, {2, 1, 0}};
  CHECK(b.valid());
  CHECK(b.volume() == 6);
  CHECK(b.contains({0, 0, 0}));
  CHECK(b.contains({2, 1, 0}));
  CHECK_FALSE(b.contains({3, 0, 0}));
  CHECK_FALSE(b.contains({0, 0, -1}));
  CHECK_FALSE(GridBox{{1, 0, 0}, {0, 0, 0}}.valid());
}

TEST_CASE("voxel set stores a sorted deduplicated universe") {
  VoxelSet s({{2, 0, 0}, {0, 0, 0}, {2, 0, 0}, {1, 0, 0}});
  CHECK(s.size() == 3);
  CHECK(s.cells().front() == Voxel{0, 0, 0});
  CHECK(s.cells().back() == Voxel{2, 0, 0});
  CHECK(to_string(s) == "{(0,0,0),(1,0,0),(2,0,0)}");
  CHECK(to_string(VoxelSet{}) == "{}");
}

TEST_CASE("voxel set algebra") {
  const VoxelSet a{{0, 0, 0}, {1, 0, 0}};
  const VoxelSet b{{1, 0, 0}, {2, 0, 0}};
  CHECK((a | b) == VoxelSet{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  CHECK((a & b) == VoxelSet{{1, 0, 0}});
  CHECK((a - b) == VoxelSet{{0, 0, 0}});
  CHECK(a.intersects(b));
  CHECK_FALSE(a.intersects(VoxelSet{{5, 5, 5}}));
  CHECK(VoxelSet{{1, 0, 0}}.is_subset_of(a));
  CHECK_FALSE(a.is_subset_of(b));
  CHECK(VoxelSet{}.is_subset_of(a));
  CHECK(a.contains({1, 0, 0}));
  CHECK_FALSE(a.contains({2, 0, 0}));
}

TEST_CASE("voxel set from a box") {
  const VoxelSet s = VoxelSet::box({{0, 0, 0}, {1, 1, 1}});
  CHECK(s.size() == 8);
  CHECK(s.contains({1, 1, 1}));
  CHECK_FALSE(s.contains({2, 0, 0}));
}

TEST_CASE("path trace keeps visit order") {
  const PathTrace t({{2, 0, 0}, {1, 0, 0}, {0, 0, 0}});
  CHECK(t.front() == Voxel{2, 0, 0});
  CHECK(t.back() == Voxel{0, 0, 0});
  CHECK(t.size() == 3);
  CHECK(t.to_set() == VoxelSet{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
}
