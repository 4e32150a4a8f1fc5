#pragma once

#include <cstdint>
#include <vector>

#include "voxproof/gcode.hpp"
#include "voxproof/geometry.hpp"
#include "voxproof/scene.hpp"
#include "voxproof/sl_program.hpp"

namespace voxproof {

// The compiler's running copy of everything continuous or mutable: machine
// position, rotary angles, pending assignments, and its own projection of
// where stock currently sits. All of it is exhausted into the emitted
// instruction stream; none of it survives into the prover.
struct MotionContext {
  Vec3 position;                    // machine units
  double primary_deg = 0;
  double secondary_deg = 0;
  VoxelSet stock;                   // grid cells, compiler's bookkeeping copy
  VoxelSet domain;                  // cells this code may claim (W, or a thread's view)
  std::uint8_t owner = 0;           // tool id stamped on emitted commands
  std::vector<std::pair<char, double>> pending;  // assignments awaiting a motion
};

// Compile one motion list against a scene, threading the context through.
// Emits the gateway assertions, motion commands, and stock-clearing loops;
// updates ctx position/angles/stock. Throws OutOfWorkspaceError when a swept
// volume leaves the workspace and ConfigError for rotary words the scene
// cannot honor.
std::vector<SLCommand> compile_sequence(const Scene& scene,
                                        const std::vector<RawCommand>& commands,
                                        MotionContext& ctx, PathMode mode);

// Full pipeline for one program: build the initial partition assertion, the
// command stream (single body or parallel composition), and the final-state
// assertion.
SLTriple compile_program(const Scene& scene, const RawProgram& program,
                         PathMode mode = PathMode::Bresenham);

// Bookkeeping snapshot after one raw command, for the differential harness:
// the compiler's view of position and stock at that point.
struct CompileSnapshot {
  std::size_t raw_index = 0;
  int line = 0;
  Voxel pos;
  VoxelSet stock;
};

struct CompiledProgram {
  SLTriple triple;
  std::vector<CompileSnapshot> snapshots;  // single-thread programs only
};

CompiledProgram compile_program_traced(const Scene& scene, const RawProgram& program,
                                       PathMode mode = PathMode::Bresenham);

// The heap Σ₀ describes: env, stock, and each tool at its home footprint.
SpatialHeap initial_heap(const Scene& scene);

}  // namespace voxproof
