#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "voxproof/heap.hpp"
#include "voxproof/sl_program.hpp"

namespace voxproof {

enum class Verdict { Safe, Fault };

enum class FaultClass {
  PreconditionUnsat,
  EnvCollision,
  StockCollision,
  MultiToolRace,
  AssertUnsat,
  PostconditionUnsat,
  InvariantViolation,
  OwnershipViolation,
};

std::string to_string(Verdict v);
std::string to_string(FaultClass c);

// Everything needed to point at the offending command and cells.
struct FaultDetail {
  std::size_t command_index = 0;  // position in the flattened execution order
  int line = 0;                   // source line of the faulting command
  std::optional<int> label;       // N-number, when the source carried one
  FaultClass cls = FaultClass::AssertUnsat;
  VoxelSet contested;             // cells that witness the conflict
  std::string what;               // human explanation
  std::string thread;             // empty when raised outside a thread body
};

struct ExecuteOptions {
  // Keep scanning after the first fault; extra faults land in diagnostics.
  // The verdict and primary fault always come from the first failure.
  bool continue_after_fault = false;
  // Called after each executed command with the heap as it then stands.
  std::function<void(const SLCommand&, const SpatialHeap&)> observer;
};

struct VerificationReport {
  Verdict verdict = Verdict::Safe;
  std::optional<FaultDetail> fault;     // first failure
  std::vector<FaultDetail> diagnostics; // every failure seen (>=1 entry on Fault)
  SpatialHeap heap;                     // heap at abort, or final heap when safe
  std::size_t steps = 0;                // commands executed
};

// Outcome of one motion's heap-level collision scan.
struct MotionFault {
  FaultClass cls = FaultClass::AssertUnsat;
  VoxelSet contested;
  std::string what;
};

// Small-step motion semantics. Each scans the swept cells against the live
// heap and either reports the conflict (heap untouched) or commits the move:
// swept cells fall Empty, the stock lands on its final cells, the tool lands
// on its final footprint.
std::optional<MotionFault> exec_g00(SpatialHeap& h, const SLCommand& c);
std::optional<MotionFault> exec_g01(SpatialHeap& h, const SLCommand& c);
std::optional<MotionFault> exec_g00_dual(SpatialHeap& h, const SLCommand& c);
std::optional<MotionFault> exec_g01_dual(SpatialHeap& h, const SLCommand& c);

// Names the failure a set of contested cells amounts to, by what the heap
// holds there: environment beats stock beats a foreign tool; anything else is
// a plain unsatisfied assertion.
FaultClass classify_contest(const SpatialHeap& h, const VoxelSet& contested,
                            std::uint8_t owner);

// Runs one command list against a heap. `resources` backs With blocks; pre
// and post conditions are the caller's business. Parallel commands are
// rejected here (see verify_parallel).
VerificationReport execute_commands(const std::vector<SLCommand>& commands, SpatialHeap h,
                                    const std::vector<ResourceSpec>& resources,
                                    const ExecuteOptions& opts = {});

// Full sequential verification: check pre against the heap, run the body,
// check post. The two-argument form builds the initial heap from the
// precondition itself.
VerificationReport execute(const SLTriple& t, SpatialHeap h, const ExecuteOptions& opts = {});
VerificationReport execute(const SLTriple& t, const ExecuteOptions& opts = {});

}  // namespace voxproof
