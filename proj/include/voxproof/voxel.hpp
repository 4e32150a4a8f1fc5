#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace voxproof {

// One cell of the integer machine grid.
struct Voxel {
  int x = 0;
  int y = 0;
  int z = 0;

  friend auto operator<=>(const Voxel&, const Voxel&) = default;
  friend Voxel operator+(Voxel a, Voxel b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Voxel operator-(Voxel a, Voxel b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
};

std::string to_string(const Voxel& v);  // "(x,y,z)"
std::ostream& operator<<(std::ostream& os, const Voxel& v);

// Inclusive axis-aligned box of voxels. Used for the workspace bounds and for
// box-shaped scene features.
struct GridBox {
  Voxel lo;
  Voxel hi;

  bool contains(const Voxel& v) const {
    return lo.x <= v.x && v.x <= hi.x && lo.y <= v.y && v.y <= hi.y && lo.z <= v.z &&
           v.z <= hi.z;
  }
  bool valid() const { return lo.x <= hi.x && lo.y <= hi.y && lo.z <= hi.z; }
  std::int64_t volume() const;

  friend bool operator==(const GridBox&, const GridBox&) = default;
};

// Finite set of voxels, stored sorted and deduplicated so that set algebra,
// equality and iteration order are all deterministic.
class VoxelSet {
 public:
  VoxelSet() = default;
  explicit VoxelSet(std::vector<Voxel> cells);
  VoxelSet(std::initializer_list<Voxel> cells);
  static VoxelSet single(const Voxel& v) { return VoxelSet{{v}}; }
  static VoxelSet box(const GridBox& b);

  bool contains(const Voxel& v) const;
  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  const std::vector<Voxel>& cells() const { return cells_; }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  bool is_subset_of(const VoxelSet& other) const;
  bool intersects(const VoxelSet& other) const;

  VoxelSet& operator|=(const VoxelSet& other);
  VoxelSet& operator&=(const VoxelSet& other);
  VoxelSet& operator-=(const VoxelSet& other);
  friend VoxelSet operator|(VoxelSet a, const VoxelSet& b) { return a |= b; }
  friend VoxelSet operator&(VoxelSet a, const VoxelSet& b) { return a &= b; }
  friend VoxelSet operator-(VoxelSet a, const VoxelSet& b) { return a -= b; }
  friend bool operator==(const VoxelSet&, const VoxelSet&) = default;

  void insert(const Voxel& v);

 private:
  std::vector<Voxel> cells_;  // sorted, unique
};

std::string to_string(const VoxelSet& s);  // "{(x,y,z),(x,y,z)}"

// Ordered voxel trace of a rasterized segment. Keeps visit order (first cell
// is the start, last the end) and exposes the underlying set.
class PathTrace {
 public:
  PathTrace() = default;
  explicit PathTrace(std::vector<Voxel> ordered) : ordered_(std::move(ordered)) {}

  const std::vector<Voxel>& ordered() const { return ordered_; }
  VoxelSet to_set() const { return VoxelSet(ordered_); }
  bool empty() const { return ordered_.empty(); }
  std::size_t size() const { return ordered_.size(); }
  const Voxel& front() const { return ordered_.front(); }
  const Voxel& back() const { return ordered_.back(); }

 private:
  std::vector<Voxel> ordered_;
};

}  // namespace voxproof
