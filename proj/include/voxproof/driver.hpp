#pragma once

#include <optional>
#include <string>

#include "voxproof/compiler.hpp"
#include "voxproof/gcode.hpp"
#include "voxproof/prover.hpp"
#include "voxproof/scene.hpp"

namespace voxproof {

// One verification run, end to end: scene + program in, verdict out.
struct RunConfig {
  std::string scene_path;
  std::string program_path;
  std::optional<int> mu;
  std::optional<int> epsilon;
  PathMode path_mode = PathMode::Bresenham;
  bool continue_after_fault = false;
};

struct RunResult {
  Scene scene;
  RawProgram program;
  CompiledProgram compiled;
  VerificationReport report;
};

std::string slurp(const std::string& path);  // whole file; Error on failure

// Load, parse, compile, verify. Concurrent programs go through the parallel
// rule, sequential ones through plain execution.
RunResult run(const RunConfig& config);

// The verification half of run(), reusable once a triple is in hand.
VerificationReport verify_triple(const SLTriple& t, SpatialHeap h,
                                 bool continue_after_fault = false);

}  // namespace voxproof
