#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voxproof/assertion.hpp"
#include "voxproof/heap.hpp"
#include "voxproof/scene.hpp"
#include "voxproof/voxel.hpp"

namespace voxproof {

// One instruction of the compiled spatial program. Every voxel set is a
// concrete literal; nothing here refers back to machine coordinates, angles,
// or any other continuous quantity.
struct SLCommand {
  enum class Kind {
    Assert,    // gateway: heap must satisfy `assertion`
    G00,       // rapid move: start/finish/path
    G01,       // cutting move: start/finish/path
    G00Dual,   // rapid with simultaneous stock rotation (adds stock_* sets)
    G01Dual,   // cut with simultaneous stock rotation
    Mutate,    // [cell] := value (cells is a singleton)
    Foreach,   // for every cell in cells: [cell] := value
    With,      // critical region: acquire resource, run body, restore invariant
    Parallel,  // parallel composition of named thread bodies
  };

  Kind kind = Kind::Assert;
  int line = 0;
  std::optional<int> label;

  Assertion assertion = Assertion::emp();  // Assert

  VoxelSet start, finish, path;                   // tool volumes (motions)
  VoxelSet stock_start, stock_finish, stock_path; // stock volumes (dual motions)
  std::uint8_t owner = 0;                         // tool id stamped on claimed cells

  VoxelSet cells;     // Mutate / Foreach
  Occupancy value;    // Mutate / Foreach

  std::string resource;          // With
  std::vector<SLCommand> body;   // With

  std::vector<std::pair<std::string, std::vector<SLCommand>>> threads;  // Parallel
};

// {pre} body {post}, plus the context a verifier needs to run it standalone:
// the workspace box, the resources any With block refers to, and the thread
// declarations of a concurrent program.
struct SLTriple {
  GridBox workspace{{0, 0, 0}, {-1, -1, -1}};
  Assertion pre = Assertion::emp();
  std::vector<SLCommand> body;
  Assertion post = Assertion::emp();
  std::vector<ResourceSpec> resources;
  std::vector<ThreadSpec> threads;
};

// Canonical text form: deterministic field order, voxel sets sorted, two
// spaces of indent per nesting level. parse_triple inverts it exactly.
std::string serialize(const SLTriple& t);
SLTriple parse_triple(const std::string& text);

// Builds the heap a partition assertion describes: every region/points-to
// atom writes its cells. The atoms must cover the workspace box exactly
// (`true`/pure atoms are not allowed here). Throws SceneError otherwise.
SpatialHeap heap_from_assertion(const GridBox& workspace, const Assertion& partition);

}  // namespace voxproof
