#include "voxproof/heap.hpp"

#include <sstream>

#include "voxproof/errors.hpp"

namespace voxproof {

SpatialHeap SpatialHeap::filled(const GridBox& box, const Occupancy& fill) {
  if (!box.valid()) throw DomainError("heap box is empty");
  SpatialHeap h;
  h.box_ = box;
  const auto n = static_cast<std::size_t>(box.volume());
  h.cells_.assign(n, fill);
  h.present_.assign(n, 1);
  h.population_ = n;
  return h;
}

SpatialHeap SpatialHeap::over(const GridBox& box, const VoxelSet& domain, const Occupancy& fill) {
  if (!box.valid()) throw DomainError("heap box is empty");
  SpatialHeap h;
  h.box_ = box;
  const auto n = static_cast<std::size_t>(box.volume());
  h.cells_.assign(n, Occupancy::empty());
  h.present_.assign(n, 0);
  for (const Voxel& v : domain) {
    if (!box.contains(v))
      throw DomainError("domain cell " + to_string(v) + " outside heap box");
    const std::size_t i = h.index_of(v);
    h.cells_[i] = fill;
    h.present_[i] = 1;
  }
  h.population_ = domain.size();
  return h;
}

std::size_t SpatialHeap::index_of(const Voxel& v) const {
  const std::size_t dx = static_cast<std::size_t>(box_.hi.x - box_.lo.x + 1);
  const std::size_t dy = static_cast<std::size_t>(box_.hi.y - box_.lo.y + 1);
  return (static_cast<std::size_t>(v.z - box_.lo.z) * dy + static_cast<std::size_t>(v.y - box_.lo.y)) *
             dx +
         static_cast<std::size_t>(v.x - box_.lo.x);
}

bool SpatialHeap::in_domain(const Voxel& v) const {
  return box_.contains(v) && present_[index_of(v)];
}

std::optional<Occupancy> SpatialHeap::find(const Voxel& v) const {
  if (!in_domain(v)) return std::nullopt;
  return cells_[index_of(v)];
}

const Occupancy& SpatialHeap::at(const Voxel& v) const {
  if (!in_domain(v)) throw DomainError("heap read outside domain at " + to_string(v));
  return cells_[index_of(v)];
}

void SpatialHeap::store(const Voxel& v, const Occupancy& occ) {
  if (!in_domain(v)) throw DomainError("heap write outside domain at " + to_string(v));
  cells_[index_of(v)] = occ;
}

VoxelSet SpatialHeap::domain() const {
  std::vector<Voxel> out;
  out.reserve(population_);
  if (box_.valid()) {
    // Walk in x-fastest order but collect; VoxelSet re-sorts canonically.
    for (int z = box_.lo.z; z <= box_.hi.z; ++z)
      for (int y = box_.lo.y; y <= box_.hi.y; ++y)
        for (int x = box_.lo.x; x <= box_.hi.x; ++x)
          if (present_[index_of({x, y, z})]) out.push_back({x, y, z});
  }
  return VoxelSet(std::move(out));
}

VoxelSet SpatialHeap::cells_with(Material m) const {
  std::vector<Voxel> out;
  if (box_.valid()) {
    for (int z = box_.lo.z; z <= box_.hi.z; ++z)
      for (int y = box_.lo.y; y <= box_.hi.y; ++y)
        for (int x = box_.lo.x; x <= box_.hi.x; ++x) {
          const std::size_t i = index_of({x, y, z});
          if (present_[i] && cells_[i].material == m) out.push_back({x, y, z});
        }
  }
  return VoxelSet(std::move(out));
}

VoxelSet SpatialHeap::cells_where(const Occupancy& occ) const {
  std::vector<Voxel> out;
  if (box_.valid()) {
    for (int z = box_.lo.z; z <= box_.hi.z; ++z)
      for (int y = box_.lo.y; y <= box_.hi.y; ++y)
        for (int x = box_.lo.x; x <= box_.hi.x; ++x) {
          const std::size_t i = index_of({x, y, z});
          if (present_[i] && cells_[i] == occ) out.push_back({x, y, z});
        }
  }
  return VoxelSet(std::move(out));
}

SpatialHeap SpatialHeap::restricted_to(const VoxelSet& cells) const {
  SpatialHeap h;
  h.box_ = box_;
  h.cells_.assign(cells_.size(), Occupancy::empty());
  h.present_.assign(present_.size(), 0);
  for (const Voxel& v : cells) {
    if (in_domain(v)) {
      const std::size_t i = index_of(v);
      h.cells_[i] = cells_[i];
      h.present_[i] = 1;
      ++h.population_;
    }
  }
  return h;
}

void SpatialHeap::adopt(const SpatialHeap& other) {
  if (other.population_ == 0) return;
  if (!(box_ == other.box_)) throw DomainError("cannot adopt cells from a differently framed heap");
  for (std::size_t i = 0; i < present_.size(); ++i) {
    if (!other.present_[i]) continue;
    if (present_[i]) throw DomainError("adopting a cell already owned");
    present_[i] = 1;
    cells_[i] = other.cells_[i];
    ++population_;
  }
}

void SpatialHeap::surrender(const VoxelSet& cells) {
  for (const Voxel& v : cells) {
    if (!box_.contains(v)) continue;
    const std::size_t i = index_of(v);
    if (present_[i]) {
      present_[i] = 0;
      --population_;
    }
  }
}

bool operator==(const SpatialHeap& a, const SpatialHeap& b) {
  if (a.population_ != b.population_) return false;
  if (!(a.box_ == b.box_)) return a.population_ == 0 && b.population_ == 0;
  for (std::size_t i = 0; i < a.present_.size(); ++i) {
    if (a.present_[i] != b.present_[i]) return false;
    if (a.present_[i] && !(a.cells_[i] == b.cells_[i])) return false;
  }
  return true;
}

bool disjoint(const SpatialHeap& a, const SpatialHeap& b) {
  // Domains are small at desk scale; the set form keeps this box-agnostic.
  return !(a.domain().intersects(b.domain()));
}

SpatialHeap mutate(SpatialHeap h, const Voxel& c, const Occupancy& value) {
  h.store(c, value);
  return h;
}

namespace {

// Walks the assertion tree gathering spatial claims and pure constraints.
struct ClaimCollector {
  const SpatialHeap& h;
  VoxelSet claimed;
  bool wildcard = false;
  CheckResult failure;  // first failure wins
  bool failed = false;

  void fail(VoxelSet contested, std::string detail) {
    if (failed) return;
    failed = true;
    failure.ok = false;
    failure.contested = std::move(contested);
    failure.detail = std::move(detail);
  }

  void claim(const VoxelSet& cells, const Occupancy& value) {
    if (failed) return;
    if (claimed.intersects(cells)) {
      fail(claimed & cells, "star conjuncts claim overlapping cells");
      return;
    }
    VoxelSet bad;
    for (const Voxel& v : cells) {
      const auto occ = h.find(v);
      if (!occ || !(*occ == value)) bad.insert(v);
    }
    if (!bad.empty()) {
      std::ostringstream os;
      os << "cells asserted " << to_string(value) << " hold something else:";
      for (const Voxel& v : bad) {
        const auto occ = h.find(v);
        os << ' ' << to_string(v) << "=" << (occ ? to_string(*occ) : std::string("<absent>"));
      }
      fail(std::move(bad), os.str());
      return;
    }
    claimed |= cells;
  }

  void visit(const Assertion& a) {
    if (failed) return;
    switch (a.kind()) {
      case Assertion::Kind::Emp:
        return;  // claims nothing; the exact-coverage check enforces emptiness
      case Assertion::Kind::True:
        wildcard = true;
        return;
      case Assertion::Kind::PointsTo:
      case Assertion::Kind::Region:
        claim(a.cells(), a.value());
        return;
      case Assertion::Kind::Pure: {
        // A set fact, not a heap claim: it constrains no cells and so places
        // no coverage obligation either.
        wildcard = true;
        const bool holds = a.pure_op() == Assertion::PureOp::Subset
                               ? a.lhs().is_subset_of(a.rhs())
                               : a.lhs() == a.rhs();
        if (!holds) {
          VoxelSet witness = a.pure_op() == Assertion::PureOp::Subset
                                 ? a.lhs() - a.rhs()
                                 : (a.lhs() - a.rhs()) | (a.rhs() - a.lhs());
          fail(std::move(witness), "pure constraint " + to_string(a) + " does not hold");
        }
        return;
      }
      case Assertion::Kind::Star:
        for (const Assertion& p : a.parts()) visit(p);
        return;
    }
  }
};

}  // namespace

CheckResult check(const SpatialHeap& h, const Assertion& a) {
  ClaimCollector col{h, {}, false, {}, false};
  col.visit(a);
  if (col.failed) return col.failure;
  if (!col.wildcard) {
    // Exact coverage: nothing in the heap may go unclaimed.
    if (col.claimed.size() != h.size()) {
      VoxelSet leftover = h.domain() - col.claimed;
      return {false, leftover, "heap cells left unclaimed by the assertion"};
    }
  }
  return {};
}

bool satisfies(const SpatialHeap& h, const Assertion& a) { return check(h, a).ok; }

}  // namespace voxproof
