#include "voxproof/voxel.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace voxproof {

std::string to_string(const Voxel& v) {
  std::ostringstream os;
  os << '(' << v.x << ',' << v.y << ',' << v.z << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Voxel& v) { return os << to_string(v); }

std::int64_t GridBox::volume() const {
  if (!valid()) return 0;
  return static_cast<std::int64_t>(hi.x - lo.x + 1) * (hi.y - lo.y + 1) * (hi.z - lo.z + 1);
}

VoxelSet::VoxelSet(std::vector<Voxel> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

VoxelSet::VoxelSet(std::initializer_list<Voxel> cells) : VoxelSet(std::vector<Voxel>(cells)) {}

VoxelSet VoxelSet::box(const GridBox& b) {
  std::vector<Voxel> cells;
  if (b.valid()) {
    cells.reserve(static_cast<std::size_t>(b.volume()));
    for (int x = b.lo.x; x <= b.hi.x; ++x)
      for (int y = b.lo.y; y <= b.hi.y; ++y)
        for (int z = b.lo.z; z <= b.hi.z; ++z) cells.push_back({x, y, z});
  }
  return VoxelSet(std::move(cells));
}

bool VoxelSet::contains(const Voxel& v) const {
  return std::binary_search(cells_.begin(), cells_.end(), v);
}

bool VoxelSet::is_subset_of(const VoxelSet& other) const {
  return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(), cells_.end());
}

bool VoxelSet::intersects(const VoxelSet& other) const {
  auto a = cells_.begin();
  auto b = other.cells_.begin();
  while (a != cells_.end() && b != other.cells_.end()) {
    if (*a < *b)
      ++a;
    else if (*b < *a)
      ++b;
    else
      return true;
  }
  return false;
}

VoxelSet& VoxelSet::operator|=(const VoxelSet& other) {
  std::vector<Voxel> merged;
  merged.reserve(cells_.size() + other.cells_.size());
  std::set_union(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                 std::back_inserter(merged));
  cells_ = std::move(merged);
  return *this;
}

VoxelSet& VoxelSet::operator&=(const VoxelSet& other) {
  std::vector<Voxel> out;
  std::set_intersection(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                        std::back_inserter(out));
  cells_ = std::move(out);
  return *this;
}

VoxelSet& VoxelSet::operator-=(const VoxelSet& other) {
  std::vector<Voxel> out;
  std::set_difference(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                      std::back_inserter(out));
  cells_ = std::move(out);
  return *this;
}

void VoxelSet::insert(const Voxel& v) {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), v);
  if (it == cells_.end() || *it != v) cells_.insert(it, v);
}

std::string to_string(const VoxelSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const Voxel& v : s) {
    if (!first) os << ',';
    first = false;
    os << to_string(v);
  }
  os << '}';
  return os.str();
}

}  // namespace voxproof
