#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voxproof/assertion.hpp"
#include "voxproof/occupancy.hpp"
#include "voxproof/voxel.hpp"

namespace voxproof {

// Finite partial map from grid cells to occupancy values. Backed by a dense
// array over a fixed bounding box plus a presence bit per cell, so restricted
// sub-heaps (thread-local views, framed remainders) share the addressing
// scheme of the full workspace.
class SpatialHeap {
 public:
  SpatialHeap() = default;  // empty domain, empty box

  // Heap with domain = every cell of the box, all set to fill.
  static SpatialHeap filled(const GridBox& box, const Occupancy& fill);
  // Heap with the given domain inside the box; domain cells set to fill.
  static SpatialHeap over(const GridBox& box, const VoxelSet& domain, const Occupancy& fill);

  const GridBox& box() const { return box_; }
  bool in_domain(const Voxel& v) const;
  std::size_t size() const { return population_; }

  std::optional<Occupancy> find(const Voxel& v) const;
  const Occupancy& at(const Voxel& v) const;         // DomainError if absent
  void store(const Voxel& v, const Occupancy& occ);  // DomainError if absent

  VoxelSet domain() const;
  VoxelSet cells_with(Material m) const;
  VoxelSet cells_where(const Occupancy& occ) const;

  // Sub-heap over domain ∩ cells (same box).
  SpatialHeap restricted_to(const VoxelSet& cells) const;
  // Splice another heap's cells into this one. The other heap must live in
  // the same box and its domain must be disjoint from ours.
  void adopt(const SpatialHeap& other);
  // Drop cells from the domain (values forgotten).
  void surrender(const VoxelSet& cells);

  // Same box, same domain, same values.
  friend bool operator==(const SpatialHeap& a, const SpatialHeap& b);

 private:
  std::size_t index_of(const Voxel& v) const;

  GridBox box_{{0, 0, 0}, {-1, -1, -1}};  // invalid box = empty heap
  std::vector<Occupancy> cells_;
  std::vector<std::uint8_t> present_;
  std::size_t population_ = 0;
};

// Two heaps occupy disjoint domains.
bool disjoint(const SpatialHeap& a, const SpatialHeap& b);

// Copy of h with one cell rewritten. The in-place store covers the executor's
// hot path; this form keeps algebraic tests readable.
SpatialHeap mutate(SpatialHeap h, const Voxel& c, const Occupancy& value);

// Outcome of checking one assertion against one heap. When ok is false,
// `contested` holds the offending cells: claims that clash with the heap or
// with each other, or (for pure atoms) the witnesses of the failed set
// relation. `detail` is a short human explanation.
struct CheckResult {
  bool ok = true;
  VoxelSet contested;
  std::string detail;
};

// Decision procedure for assertion satisfaction. Star-connected spatial atoms
// must claim pairwise disjoint cells, every claimed cell must be present with
// the claimed value, and pure atoms must evaluate true. Unless the assertion
// carries a `true` conjunct or a pure atom (facts about sets, footprint-free),
// the spatial claims must cover the heap's whole domain.
CheckResult check(const SpatialHeap& h, const Assertion& a);
bool satisfies(const SpatialHeap& h, const Assertion& a);

}  // namespace voxproof
