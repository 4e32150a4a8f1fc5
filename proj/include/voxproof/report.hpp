#pragma once

#include <string>
#include <utility>
#include <vector>

#include "voxproof/heap.hpp"
#include "voxproof/prover.hpp"

namespace voxproof {

// Human-readable verdict summary, one field per line.
std::string text_report(const VerificationReport& rep);

// Machine-readable verdict with the same content. Stable key order, so equal
// reports serialize to identical bytes.
std::string json_report(const VerificationReport& rep);

// One line per heap cell, "x y z value", sorted by (x,y,z).
std::string voxel_dump(const SpatialHeap& h);
std::vector<std::pair<Voxel, Occupancy>> parse_voxel_dump(const std::string& text);

}  // namespace voxproof
